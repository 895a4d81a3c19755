/** Document tab: full text with topic-colored highlight spans and a legend
 * of every topic holding at least 10 percent of the document. */

import { topicColor } from "../palette.js";
import type { DocumentView } from "../types.js";

export function renderDocument(
  container: HTMLElement,
  view: DocumentView,
  topicSizes: Map<number, number>,
): void {
  container.textContent = "";

  const heading = document.createElement("h3");
  heading.textContent = view.title;
  container.appendChild(heading);

  const meta = document.createElement("p");
  meta.className = "doc-meta";
  const parts = [view.doc_id];
  if (view.date) parts.push(view.date);
  if (view.tags.length) parts.push(view.tags.join(", "));
  meta.textContent = parts.join(" · ");
  container.appendChild(meta);

  const legend = document.createElement("div");
  legend.className = "legend";
  for (const entry of view.topics) {
    const item = document.createElement("span");
    item.className = "legend-entry";
    const swatch = document.createElement("span");
    swatch.className = "swatch";
    swatch.style.backgroundColor = topicColor(entry.topic_id, topicSizes.get(entry.topic_id));
    item.appendChild(swatch);
    item.appendChild(
      document.createTextNode(
        ` Topic ${entry.topic_id} (${(entry.proportion * 100).toFixed(1)}%)`,
      ),
    );
    legend.appendChild(item);
  }
  container.appendChild(legend);

  const body = document.createElement("p");
  body.className = "doc-text";
  const topicAt = new Map<number, number>();
  for (const h of view.highlights) {
    for (let position = h.start; position < h.end; position++) {
      topicAt.set(position, h.topic);
    }
  }
  view.tokens.forEach((token, index) => {
    if (index > 0) body.appendChild(document.createTextNode(" "));
    const topic = topicAt.get(token.position);
    if (topic === undefined) {
      body.appendChild(document.createTextNode(token.surface));
    } else {
      const mark = document.createElement("mark");
      mark.style.backgroundColor = topicColor(topic, topicSizes.get(topic));
      mark.dataset.topic = String(topic);
      mark.textContent = token.surface;
      body.appendChild(mark);
    }
  });
  container.appendChild(body);

  if (view.highlights.length === 0) {
    const note = document.createElement("p");
    note.className = "empty-note";
    note.textContent = "No topic terms of this document survived thinning.";
    container.appendChild(note);
  }
}
