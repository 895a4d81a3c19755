/** Single-page explorer: Model, Topic, Document, Time, Theme, Download and
 * Add-corpus tabs over the topic service API. All state changes follow a
 * completed API response; failures show a banner and keep the prior view. */

import { ApiClient } from "./api.js";
import { OUTLIER_MAX_SIZE } from "./palette.js";
import { initialState, switchCorpus, switchModel, ViewState } from "./state.js";
import { renderDocument } from "./render/docview.js";
import { renderHeatmap } from "./render/heatmap.js";
import { renderScatter } from "./render/scatter.js";
import { renderTimeSeries } from "./render/timeseries.js";
import { renderTopicDocuments, renderWordCloud } from "./render/wordcloud.js";
import type { ModelInfo, TopicSummary } from "./types.js";

const TABS = ["model", "topic", "document", "time", "theme", "download", "add"] as const;
type TabName = (typeof TABS)[number];

export class App {
  state: ViewState = initialState();
  topics: TopicSummary[] = [];
  models: ModelInfo[] = [];

  constructor(
    private api: ApiClient,
    private root: Document = document,
  ) {}

  element<T extends HTMLElement>(id: string): T {
    const node = this.root.getElementById(id);
    if (!node) throw new Error(`missing element #${id}`);
    return node as T;
  }

  showError(message: string): void {
    const banner = this.element<HTMLDivElement>("error-banner");
    banner.textContent = message;
    banner.hidden = false;
  }

  clearError(): void {
    this.element<HTMLDivElement>("error-banner").hidden = true;
  }

  activateTab(name: TabName): void {
    for (const tab of TABS) {
      this.element(`tab-${tab}`).hidden = tab !== name;
      this.element(`tab-button-${tab}`).classList.toggle("active", tab === name);
    }
  }

  topicSizes(): Map<number, number> {
    return new Map(this.topics.map((t) => [t.topic_id, t.size]));
  }

  async start(): Promise<void> {
    for (const tab of TABS) {
      this.element(`tab-button-${tab}`).addEventListener("click", () => this.activateTab(tab));
    }
    this.element("rebuild-button").addEventListener("click", () => void this.rebuild());
    this.element("corpus-select").addEventListener("change", () => void this.onCorpusChange());
    this.element("model-select").addEventListener("change", () => void this.onModelChange());
    this.element("topic-select").addEventListener("change", () => void this.onTopicChange());
    this.element("document-open").addEventListener("click", () => {
      const docId = this.element<HTMLInputElement>("document-id").value.trim();
      if (docId) void this.openDocument(docId);
    });
    this.element("time-render").addEventListener("click", () => void this.renderTime());
    this.element("upload-form").addEventListener("submit", (event) => {
      event.preventDefault();
      void this.uploadCorpus();
    });

    await this.refreshCorpora();
    this.activateTab("model");
  }

  async refreshCorpora(): Promise<void> {
    try {
      const { corpora } = await this.api.listCorpora();
      const select = this.element<HTMLSelectElement>("corpus-select");
      select.textContent = "";
      for (const corpus of corpora) {
        const option = this.root.createElement("option");
        option.value = corpus.corpus_id;
        option.textContent = `${corpus.corpus_id} (${corpus.doc_count} docs)`;
        select.appendChild(option);
      }
      if (corpora.length > 0) {
        select.value = this.state.corpusId ?? corpora[0]!.corpus_id;
        await this.onCorpusChange();
      }
    } catch (error) {
      this.showError(String(error));
    }
  }

  async onCorpusChange(): Promise<void> {
    const corpusId = this.element<HTMLSelectElement>("corpus-select").value;
    this.state = switchCorpus(this.state, corpusId);
    try {
      const { models } = await this.api.listModels();
      this.models = models.filter((m) => m.corpus_id === corpusId);
      const select = this.element<HTMLSelectElement>("model-select");
      select.textContent = "";
      for (const model of this.models) {
        const option = this.root.createElement("option");
        option.value = model.model_id;
        option.textContent = `γ=${model.gamma} seed=${model.seed} (${model.community_count} topics)`;
        select.appendChild(option);
      }
      if (this.models.length > 0) {
        select.value = this.models[this.models.length - 1]!.model_id;
        await this.onModelChange();
      }
    } catch (error) {
      this.showError(String(error));
    }
  }

  async onModelChange(): Promise<void> {
    const modelId = this.element<HTMLSelectElement>("model-select").value;
    if (!modelId) return;
    await this.loadModel(modelId);
  }

  /** Fetch everything a model switch needs, then commit the state change. */
  async loadModel(modelId: string): Promise<void> {
    try {
      this.clearError();
      const [map, topicsBody] = await Promise.all([
        this.api.getMap(modelId),
        this.api.getTopics(modelId),
      ]);
      this.topics = topicsBody.topics;
      this.state = switchModel(this.state, modelId);

      renderScatter(this.element("map-container"), map, this.topics, {
        onHover: (title) => {
          this.element("hover-title").textContent = title;
        },
      });
      this.populateTopicSelect();
      this.populateTimeSelect();
      await this.renderThemes();
      this.updateDownloadLinks();
    } catch (error) {
      this.showError(String(error));
    }
  }

  /** Big topics first, outliers (<= 3 terms) gray and last in the list. */
  populateTopicSelect(): void {
    const select = this.element<HTMLSelectElement>("topic-select");
    select.textContent = "";
    const ordered = [...this.topics].sort((a, b) => {
      const aOutlier = a.size <= OUTLIER_MAX_SIZE ? 1 : 0;
      const bOutlier = b.size <= OUTLIER_MAX_SIZE ? 1 : 0;
      return aOutlier - bOutlier || a.topic_id - b.topic_id;
    });
    for (const topic of ordered) {
      const option = this.root.createElement("option");
      option.value = String(topic.topic_id);
      const label = topic.label ?? `Topic ${topic.topic_id}`;
      option.textContent = `${label}: ${topic.top_terms.join(", ")} (${topic.size})`;
      if (topic.size <= OUTLIER_MAX_SIZE) option.classList.add("outlier");
      select.appendChild(option);
    }
    if (ordered.length > 0) {
      select.value = String(ordered[0]!.topic_id);
      void this.onTopicChange();
    }
  }

  populateTimeSelect(): void {
    const select = this.element<HTMLSelectElement>("time-select");
    select.textContent = "";
    for (const topic of this.topics) {
      const option = this.root.createElement("option");
      option.value = String(topic.topic_id);
      option.textContent = topic.label ?? `Topic ${topic.topic_id}`;
      select.appendChild(option);
    }
  }

  async onTopicChange(): Promise<void> {
    const modelId = this.state.modelId;
    if (!modelId) return;
    const topicId = Number(this.element<HTMLSelectElement>("topic-select").value);
    try {
      const topic = await this.api.getTopic(modelId, topicId);
      this.state = { ...this.state, topicId };
      renderWordCloud(this.element("cloud-container"), topic);
      renderTopicDocuments(this.element("topic-doc-container"), topic, {
        onOpenDocument: (docId) => {
          void this.openDocument(docId);
          this.activateTab("document");
        },
      });
    } catch (error) {
      this.showError(String(error));
    }
  }

  async openDocument(docId: string): Promise<void> {
    const modelId = this.state.modelId;
    if (!modelId) return;
    const container = this.element("document-container");
    try {
      const view = await this.api.getDocument(modelId, docId);
      this.state = { ...this.state, docId };
      this.clearError();
      renderDocument(container, view, this.topicSizes());
    } catch (error) {
      container.textContent = "";
      const note = this.root.createElement("p");
      note.className = "empty-note";
      note.textContent = `Document ${docId} not found.`;
      container.appendChild(note);
    }
  }

  async renderTime(): Promise<void> {
    const modelId = this.state.modelId;
    if (!modelId) return;
    const select = this.element<HTMLSelectElement>("time-select");
    const chosen = [...select.selectedOptions].map((o) => Number(o.value));
    try {
      const series = await this.api.getTimeSeries(modelId, chosen);
      this.state = { ...this.state, timeTopics: chosen };
      renderTimeSeries(this.element("time-container"), series, this.topicSizes());
    } catch (error) {
      this.showError(String(error));
    }
  }

  async renderThemes(): Promise<void> {
    const modelId = this.state.modelId;
    if (!modelId) return;
    const themes = await this.api.getThemes(modelId);
    const button = this.element("tab-button-theme");
    button.hidden = themes.tags.length === 0;
    renderHeatmap(this.element("theme-container"), themes);
  }

  updateDownloadLinks(): void {
    const modelId = this.state.modelId;
    if (!modelId) return;
    this.element<HTMLAnchorElement>("download-terms").href = this.api.exportUrl(
      modelId,
      "topic_terms",
    );
    this.element<HTMLAnchorElement>("download-docs").href = this.api.exportUrl(
      modelId,
      "doc_topics",
    );
  }

  /** Model tab rebuild: POST, poll the job, then switch to the new model. */
  async rebuild(): Promise<void> {
    const corpusId = this.state.corpusId;
    if (!corpusId) return;
    const gamma = Number(this.element<HTMLInputElement>("gamma-input").value);
    const status = this.element("rebuild-status");
    if (!Number.isFinite(gamma) || gamma <= 0) {
      this.showError("gamma must be a positive number");
      return;
    }
    try {
      this.clearError();
      status.textContent = "building…";
      const request = await this.api.buildModel(corpusId, gamma);
      await this.api.waitForJob(request.job_id, 300);
      status.textContent = request.cached ? "served from cache" : "done";
      await this.refreshModelList(request.model_id);
      await this.loadModel(request.model_id);
    } catch (error) {
      status.textContent = "";
      this.showError(String(error));
    }
  }

  async refreshModelList(selectId: string): Promise<void> {
    const { models } = await this.api.listModels();
    this.models = models.filter((m) => m.corpus_id === this.state.corpusId);
    const select = this.element<HTMLSelectElement>("model-select");
    select.textContent = "";
    for (const model of this.models) {
      const option = this.root.createElement("option");
      option.value = model.model_id;
      option.textContent = `γ=${model.gamma} seed=${model.seed} (${model.community_count} topics)`;
      select.appendChild(option);
    }
    select.value = selectId;
  }

  async uploadCorpus(): Promise<void> {
    const form = this.element<HTMLFormElement>("upload-form");
    const status = this.element("upload-status");
    const data = new FormData(form);
    try {
      this.clearError();
      status.textContent = "uploading…";
      const request = await this.api.addCorpus(data);
      status.textContent = `ingesting ${request.corpus_id}…`;
      await this.api.waitForJob(request.job_id, 500);
      status.textContent = `corpus ${request.corpus_id} ready`;
      await this.refreshCorpora();
    } catch (error) {
      status.textContent = "";
      this.showError(String(error));
    }
  }
}

export function bootstrap(): void {
  const app = new App(new ApiClient(""));
  void app.start();
}

if (typeof window !== "undefined" && document.getElementById("app-root")) {
  bootstrap();
}
