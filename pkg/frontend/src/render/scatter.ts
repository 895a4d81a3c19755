/** Model tab: 2-D document map as an SVG scatter, colored by dominant
 * topic, document title on hover. */

import { topicColor } from "../palette.js";
import type { MapView, TopicSummary } from "../types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const WIDTH = 760;
const HEIGHT = 520;
const MARGIN = 20;

function scale(values: number[], span: number): (v: number) => number {
  const min = Math.min(...values);
  const max = Math.max(...values);
  const range = max - min || 1;
  return (v) => MARGIN + ((v - min) / range) * (span - 2 * MARGIN);
}

export interface ScatterOptions {
  onHover?: (title: string) => void;
}

export function renderScatter(
  container: HTMLElement,
  view: MapView,
  topics: TopicSummary[],
  options: ScatterOptions = {},
): void {
  container.textContent = "";
  const sizes = new Map(topics.map((t) => [t.topic_id, t.size]));

  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${WIDTH} ${HEIGHT}`);
  svg.setAttribute("class", "doc-map");

  const xs = view.points.map((p) => p.x);
  const ys = view.points.map((p) => p.y);
  const sx = scale(xs, WIDTH);
  const sy = scale(ys, HEIGHT);

  for (const point of view.points) {
    const circle = document.createElementNS(SVG_NS, "circle");
    circle.setAttribute("cx", sx(point.x).toFixed(2));
    circle.setAttribute("cy", sy(point.y).toFixed(2));
    circle.setAttribute("r", "4");
    circle.setAttribute("fill", topicColor(point.topic, sizes.get(point.topic)));
    circle.setAttribute("data-doc-id", point.doc_id);
    circle.setAttribute("data-topic", String(point.topic));
    const title = document.createElementNS(SVG_NS, "title");
    title.textContent = point.title;
    circle.appendChild(title);
    if (options.onHover) {
      circle.addEventListener("mouseenter", () => options.onHover!(point.title));
    }
    svg.appendChild(circle);
  }
  container.appendChild(svg);

  const legend = document.createElement("div");
  legend.className = "legend";
  for (const topic of topics) {
    const entry = document.createElement("span");
    entry.className = "legend-entry";
    const swatch = document.createElement("span");
    swatch.className = "swatch";
    swatch.style.backgroundColor = topicColor(topic.topic_id, topic.size);
    entry.appendChild(swatch);
    entry.appendChild(
      document.createTextNode(` ${topic.label ?? `Topic ${topic.topic_id}`} (${topic.size})`),
    );
    legend.appendChild(entry);
  }
  container.appendChild(legend);
}
