import { describe, expect, it } from "vitest";

import { renderDocument } from "../src/render/docview.js";
import type { DocumentView } from "../src/types.js";

function documentFixture(): DocumentView {
  // proportions 0.5 / 0.3 / 0.2: three topics qualify at the 10% threshold
  return {
    model_id: "m",
    doc_id: "doc1",
    title: "Noise and the city",
    date: "2020-03-15",
    tags: ["Environment"],
    raw_text: null,
    tokens: [
      { surface: "Noise", position: 0 },
      { surface: "levels", position: 1 },
      { surface: "affect", position: 2 },
      { surface: "health", position: 3 },
      { surface: "in", position: 4 },
      { surface: "urban", position: 5 },
      { surface: "areas", position: 6 },
    ],
    highlights: [
      { start: 0, end: 1, topic: 0 },
      { start: 3, end: 4, topic: 1 },
      { start: 5, end: 7, topic: 2 },
    ],
    topics: [
      { topic_id: 0, proportion: 0.5 },
      { topic_id: 1, proportion: 0.3 },
      { topic_id: 2, proportion: 0.2 },
    ],
    proportions: [0.5, 0.3, 0.2],
  };
}

describe("renderDocument", () => {
  it("a document with three qualifying topics shows three highlight colors", () => {
    const container = document.createElement("div");
    renderDocument(container, documentFixture(), new Map([[0, 50], [1, 40], [2, 30]]));
    const marks = container.querySelectorAll<HTMLElement>("mark");
    expect(marks.length).toBe(4); // urban + areas share one span
    const colors = new Set([...marks].map((m) => m.style.backgroundColor));
    expect(colors.size).toBe(3);
    const legendEntries = container.querySelectorAll(".legend-entry");
    expect(legendEntries.length).toBe(3);
  });

  it("legend colors match highlight colors per topic", () => {
    const container = document.createElement("div");
    renderDocument(container, documentFixture(), new Map([[0, 50], [1, 40], [2, 30]]));
    const mark = container.querySelector<HTMLElement>('mark[data-topic="1"]')!;
    const swatches = container.querySelectorAll<HTMLElement>(".legend .swatch");
    const legendColors = [...swatches].map((s) => s.style.backgroundColor);
    expect(legendColors).toContain(mark.style.backgroundColor);
  });

  it("renders every token and keeps unhighlighted ones plain", () => {
    const container = document.createElement("div");
    renderDocument(container, documentFixture(), new Map());
    const text = container.querySelector(".doc-text")!.textContent!;
    expect(text).toBe("Noise levels affect health in urban areas");
  });

  it("notes when nothing was retained", () => {
    const container = document.createElement("div");
    const view = { ...documentFixture(), highlights: [], topics: [], proportions: [0, 0, 0] };
    renderDocument(container, view, new Map());
    expect(container.textContent).toContain("survived thinning");
  });
});
