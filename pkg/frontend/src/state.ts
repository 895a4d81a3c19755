/** UI selections; mutated only after the corresponding API call succeeded. */

export interface ViewState {
  corpusId: string | null;
  modelId: string | null;
  topicId: number | null;
  docId: string | null;
  timeTopics: number[];
}

export function initialState(): ViewState {
  return { corpusId: null, modelId: null, topicId: null, docId: null, timeTopics: [] };
}

/** Model switches invalidate every model-scoped selection. */
export function switchModel(state: ViewState, modelId: string): ViewState {
  return { ...state, modelId, topicId: null, docId: null, timeTopics: [] };
}

export function switchCorpus(state: ViewState, corpusId: string): ViewState {
  return { corpusId, modelId: null, topicId: null, docId: null, timeTopics: [] };
}
