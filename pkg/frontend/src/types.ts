/** Payload shapes of the topic service HTTP API. */

export interface CorpusInfo {
  corpus_id: string;
  doc_count: number;
  vertices: number;
  edges: number;
}

export interface JobInfo {
  job_id: string;
  kind: string;
  state: "queued" | "running" | "done" | "failed";
  stage: string;
  error: string | null;
  corpus_id?: string;
  model_id?: string;
}

export interface ModelInfo {
  model_id: string;
  corpus_id: string;
  gamma: number;
  seed: number;
  created_at: string;
  quality: number;
  community_count: number;
  converged: boolean;
}

export interface MapPoint {
  doc_id: string;
  x: number;
  y: number;
  topic: number;
  title: string;
}

export interface MapView {
  model_id: string;
  community_count: number;
  points: MapPoint[];
  kl_divergence: number;
}

export interface TopicSummary {
  topic_id: number;
  size: number;
  label: string | null;
  top_terms: string[];
}

export interface CloudTerm {
  term: string;
  rating: number;
  rank: number;
  stratum: number;
  size: number;
}

export interface TopicDocument {
  doc_id: string;
  title: string;
  proportion: number;
}

export interface TopicView {
  model_id: string;
  topic_id: number;
  size: number;
  label: string | null;
  strata_count: number;
  terms: CloudTerm[];
  documents: TopicDocument[];
}

export interface DocToken {
  surface: string;
  position: number;
}

export interface DocHighlight {
  start: number;
  end: number;
  topic: number;
}

export interface DocumentView {
  model_id: string;
  doc_id: string;
  title: string;
  date: string | null;
  tags: string[];
  raw_text: string | null;
  tokens: DocToken[];
  highlights: DocHighlight[];
  topics: { topic_id: number; proportion: number }[];
  proportions: number[];
}

export interface TimeSeriesView {
  model_id: string;
  series: { topic_id: number; points: [string, number][] }[];
}

export interface ThemesView {
  model_id: string;
  tags: string[];
  topic_count: number;
  matrix: number[][];
  doc_counts: number[];
}
