/** Topic tab: stratified word cloud. Terms wrap left-to-right inside
 * colored horizontal strata; font size carries the significance rank. */

import { stratumColor } from "../palette.js";
import type { TopicView } from "../types.js";

export function renderWordCloud(container: HTMLElement, topic: TopicView): void {
  container.textContent = "";
  if (topic.terms.length === 0) {
    const empty = document.createElement("p");
    empty.className = "empty-note";
    empty.textContent = "This topic has no displayable terms.";
    container.appendChild(empty);
    return;
  }

  const byStratum = new Map<number, typeof topic.terms>();
  for (const term of topic.terms) {
    const bucket = byStratum.get(term.stratum) ?? [];
    bucket.push(term);
    byStratum.set(term.stratum, bucket);
  }

  const strata = [...byStratum.keys()].sort((a, b) => a - b);
  for (const stratumIndex of strata) {
    const row = document.createElement("div");
    row.className = "stratum";
    row.style.backgroundColor = stratumColor(stratumIndex);
    row.dataset.stratum = String(stratumIndex);
    const terms = byStratum.get(stratumIndex)!;
    terms.sort((a, b) => b.rating - a.rating || a.term.localeCompare(b.term));
    for (const term of terms) {
      const span = document.createElement("span");
      span.className = "cloud-term";
      span.style.fontSize = `${term.size}px`;
      span.title = `rating ${term.rating.toFixed(3)}, rank ${term.rank}`;
      span.textContent = term.term;
      row.appendChild(span);
    }
    container.appendChild(row);
  }
}

export interface DocListHandlers {
  onOpenDocument: (docId: string) => void;
}

export function renderTopicDocuments(
  container: HTMLElement,
  topic: TopicView,
  handlers: DocListHandlers,
): void {
  container.textContent = "";
  if (topic.documents.length === 0) {
    const empty = document.createElement("p");
    empty.className = "empty-note";
    empty.textContent = "No document gives this topic more than 15 percent.";
    container.appendChild(empty);
    return;
  }
  const list = document.createElement("ol");
  list.className = "topic-doc-list";
  for (const doc of topic.documents) {
    const item = document.createElement("li");
    const link = document.createElement("a");
    link.href = "#";
    link.dataset.docId = doc.doc_id;
    link.textContent = `${doc.title} — ${(doc.proportion * 100).toFixed(1)}%`;
    link.addEventListener("click", (event) => {
      event.preventDefault();
      handlers.onOpenDocument(doc.doc_id);
    });
    item.appendChild(link);
    list.appendChild(item);
  }
  container.appendChild(list);
}
