/** Shared API payload fixtures shaped like the real service responses. */

import { readFileSync } from "node:fs";

import type {
  DocumentView,
  MapView,
  ModelInfo,
  ThemesView,
  TimeSeriesView,
  TopicSummary,
  TopicView,
} from "../src/types.js";

export function mountAppDom(): void {
  // vitest runs with the frontend directory as cwd
  const html = readFileSync("index.html", "utf-8");
  const body = html
    .replace(/^[\s\S]*?<body>/, "")
    .replace(/<\/body>[\s\S]*$/, "")
    .replace(/<script[\s\S]*?<\/script>/g, "");
  document.body.innerHTML = body;
}

export function modelInfo(modelId: string, gamma: number, topics: number): ModelInfo {
  return {
    model_id: modelId,
    corpus_id: "synth",
    gamma,
    seed: 42,
    created_at: "2026-01-01T00:00:00+00:00",
    quality: 0.5,
    community_count: topics,
    converged: true,
  };
}

export function mapView(modelId: string, pointCount: number, topics: number): MapView {
  const points = [];
  for (let i = 0; i < pointCount; i++) {
    points.push({
      doc_id: `doc${i}`,
      x: Math.cos(i),
      y: Math.sin(i),
      topic: i % topics,
      title: `Document ${i}`,
    });
  }
  return { model_id: modelId, community_count: topics, points, kl_divergence: 1.0 };
}

export function topicSummaries(modelId: string, topics: number): { model_id: string; topics: TopicSummary[] } {
  const list: TopicSummary[] = [];
  for (let t = 0; t < topics; t++) {
    list.push({
      topic_id: t,
      size: 40 - t,
      label: null,
      top_terms: [`alpha${t}`, `beta${t}`],
    });
  }
  return { model_id: modelId, topics: list };
}

export function topicView(modelId: string, topicId: number): TopicView {
  const terms = [];
  for (let i = 0; i < 20; i++) {
    terms.push({
      term: `term${topicId}_${i}`,
      rating: 2 - i * 0.05,
      rank: i + 1,
      stratum: i % 4,
      size: 44 - i,
    });
  }
  return {
    model_id: modelId,
    topic_id: topicId,
    size: 40,
    label: null,
    strata_count: 4,
    terms,
    documents: [{ doc_id: "doc0", title: "Document 0", proportion: 0.3 }],
  };
}

export function documentView(modelId: string, docId: string): DocumentView {
  return {
    model_id: modelId,
    doc_id: docId,
    title: `Document ${docId}`,
    date: "2020-01-01",
    tags: [],
    raw_text: null,
    tokens: [
      { surface: "one", position: 0 },
      { surface: "two", position: 1 },
    ],
    highlights: [{ start: 0, end: 1, topic: 0 }],
    topics: [{ topic_id: 0, proportion: 1.0 }],
    proportions: [1.0, 0.0],
  };
}

export function timeSeriesView(modelId: string, topicIds: number[]): TimeSeriesView {
  return {
    model_id: modelId,
    series: topicIds.map((t) => ({
      topic_id: t,
      points: [
        ["2020-01", 0.4 + t],
        ["2020-02", 0.6 + t],
      ],
    })),
  };
}

export function themesView(modelId: string, tags: string[]): ThemesView {
  return {
    model_id: modelId,
    tags,
    topic_count: 2,
    matrix: tags.map(() => [0.7, 0.3]),
    doc_counts: tags.map(() => 5),
  };
}

export function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}
