/** Thin typed client for the topic service; every view renders exclusively
 * from these payloads. */

import type {
  CorpusInfo,
  DocumentView,
  JobInfo,
  MapView,
  ModelInfo,
  ThemesView,
  TimeSeriesView,
  TopicSummary,
  TopicView,
} from "./types.js";

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

async function getJson<T>(url: string): Promise<T> {
  const response = await fetch(url);
  if (!response.ok) {
    throw new ApiError(response.status, await describeError(response));
  }
  return (await response.json()) as T;
}

async function describeError(response: Response): Promise<string> {
  try {
    const body = await response.json();
    if (body && typeof body.detail === "string") return body.detail;
  } catch {
    /* not json */
  }
  return `request failed with status ${response.status}`;
}

export class ApiClient {
  constructor(private base: string = "") {}

  url(path: string): string {
    return this.base + path;
  }

  listCorpora(): Promise<{ corpora: CorpusInfo[] }> {
    return getJson(this.url("/corpora"));
  }

  listModels(): Promise<{ models: ModelInfo[] }> {
    return getJson(this.url("/models"));
  }

  async addCorpus(form: FormData): Promise<{ job_id: string; corpus_id: string }> {
    const response = await fetch(this.url("/corpora"), { method: "POST", body: form });
    if (!response.ok) throw new ApiError(response.status, await describeError(response));
    return response.json();
  }

  async buildModel(
    corpusId: string,
    gamma: number,
    seed = 42,
  ): Promise<{ job_id: string; model_id: string; cached: boolean }> {
    const response = await fetch(this.url(`/corpora/${corpusId}/models`), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ gamma, seed }),
    });
    if (!response.ok) throw new ApiError(response.status, await describeError(response));
    return response.json();
  }

  getJob(jobId: string): Promise<JobInfo> {
    return getJson(this.url(`/jobs/${jobId}`));
  }

  /** Poll a job until it finishes; rejects when the job fails. */
  async waitForJob(jobId: string, intervalMs = 500, timeoutMs = 300_000): Promise<JobInfo> {
    const deadline = Date.now() + timeoutMs;
    for (;;) {
      const job = await this.getJob(jobId);
      if (job.state === "done") return job;
      if (job.state === "failed") {
        throw new ApiError(500, job.error ?? "job failed");
      }
      if (Date.now() > deadline) throw new ApiError(504, "job timed out");
      await new Promise((resolve) => setTimeout(resolve, intervalMs));
    }
  }

  getMap(modelId: string): Promise<MapView> {
    return getJson(this.url(`/models/${modelId}/map`));
  }

  getTopics(modelId: string): Promise<{ model_id: string; topics: TopicSummary[] }> {
    return getJson(this.url(`/models/${modelId}/topics`));
  }

  getTopic(modelId: string, topicId: number): Promise<TopicView> {
    return getJson(this.url(`/models/${modelId}/topics/${topicId}`));
  }

  getDocument(modelId: string, docId: string): Promise<DocumentView> {
    return getJson(this.url(`/models/${modelId}/documents/${encodeURIComponent(docId)}`));
  }

  getTimeSeries(modelId: string, topicIds: number[]): Promise<TimeSeriesView> {
    const query = topicIds.length ? `?topics=${topicIds.join(",")}` : "";
    return getJson(this.url(`/models/${modelId}/timeseries${query}`));
  }

  getThemes(modelId: string): Promise<ThemesView> {
    return getJson(this.url(`/models/${modelId}/themes`));
  }

  exportUrl(modelId: string, kind: "topic_terms" | "doc_topics"): string {
    return this.url(`/models/${modelId}/export/${kind}`);
  }
}
