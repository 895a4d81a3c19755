/** Time tab: one line per selected topic, monthly accumulated proportion. */

import { topicColor } from "../palette.js";
import type { TimeSeriesView } from "../types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const WIDTH = 760;
const HEIGHT = 300;
const MARGIN = 34;

export function renderTimeSeries(
  container: HTMLElement,
  view: TimeSeriesView,
  topicSizes: Map<number, number>,
): void {
  container.textContent = "";
  const allPoints = view.series.flatMap((s) => s.points);
  if (allPoints.length === 0) {
    const empty = document.createElement("p");
    empty.className = "empty-note";
    empty.textContent = "No dated documents in this corpus.";
    container.appendChild(empty);
    return;
  }

  const months = view.series[0]!.points.map(([month]) => month);
  const maxValue = Math.max(...allPoints.map(([, v]) => v), 1e-9);
  const stepX = months.length > 1 ? (WIDTH - 2 * MARGIN) / (months.length - 1) : 0;

  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${WIDTH} ${HEIGHT}`);
  svg.setAttribute("class", "time-chart");

  for (const series of view.series) {
    const coords = series.points.map(([, value], i) => {
      const x = MARGIN + i * stepX;
      const y = HEIGHT - MARGIN - (value / maxValue) * (HEIGHT - 2 * MARGIN);
      return `${x.toFixed(1)},${y.toFixed(1)}`;
    });
    const line = document.createElementNS(SVG_NS, "polyline");
    line.setAttribute("points", coords.join(" "));
    line.setAttribute("fill", "none");
    line.setAttribute("stroke", topicColor(series.topic_id, topicSizes.get(series.topic_id)));
    line.setAttribute("stroke-width", "2");
    line.setAttribute("data-topic", String(series.topic_id));
    svg.appendChild(line);
  }

  const axis = document.createElementNS(SVG_NS, "text");
  axis.setAttribute("x", String(MARGIN));
  axis.setAttribute("y", String(HEIGHT - 8));
  axis.setAttribute("class", "axis-label");
  axis.textContent = `${months[0]} … ${months[months.length - 1]}`;
  svg.appendChild(axis);

  container.appendChild(svg);
}
