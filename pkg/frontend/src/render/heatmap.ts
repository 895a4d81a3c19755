/** Theme tab: tag-by-topic heatmap of mean proportions. */

import type { ThemesView } from "../types.js";

export function renderHeatmap(container: HTMLElement, view: ThemesView): void {
  container.textContent = "";
  if (view.tags.length === 0) {
    const empty = document.createElement("p");
    empty.className = "empty-note";
    empty.textContent = "This corpus carries no thematic tags.";
    container.appendChild(empty);
    return;
  }

  const maxCell = Math.max(...view.matrix.flat(), 1e-9);
  const table = document.createElement("table");
  table.className = "heatmap";

  const head = document.createElement("tr");
  head.appendChild(document.createElement("th"));
  for (let t = 0; t < view.topic_count; t++) {
    const th = document.createElement("th");
    th.textContent = `T${t}`;
    head.appendChild(th);
  }
  table.appendChild(head);

  view.tags.forEach((tag, row) => {
    const tr = document.createElement("tr");
    const label = document.createElement("th");
    label.textContent = `${tag} (${view.doc_counts[row]})`;
    tr.appendChild(label);
    const cells = view.matrix[row]!;
    for (let t = 0; t < view.topic_count; t++) {
      const td = document.createElement("td");
      const value = cells[t] ?? 0;
      td.style.backgroundColor = `rgba(31, 119, 180, ${(value / maxCell).toFixed(3)})`;
      td.title = `${tag} × topic ${t}: ${(value * 100).toFixed(1)}%`;
      td.dataset.value = value.toFixed(4);
      tr.appendChild(td);
    }
    table.appendChild(tr);
  });
  container.appendChild(table);
}
