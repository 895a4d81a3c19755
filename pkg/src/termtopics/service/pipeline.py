"""End-to-end orchestration: ingest a corpus, build and describe models.

Everything here is deterministic for fixed inputs and seeds so that
repeated runs, cache hits and service restarts serve identical results.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from ..analytics import DocumentMap, tsne_layout
from ..community import ModularityParams, Partition, leiden_partition
from ..corpus import Corpus, validate_corpus
from ..errors import CorpusValidationError, DegenerateDocumentError
from ..graph import TermNetwork, build_network
from ..preprocess import TermDocument, preprocess_document
from ..rank import DocumentTermRanking, RankingParams, compute_idf, rank_document
from ..topicstats import (
    DEFAULT_CLOUD_TERMS,
    DEFAULT_STRATA,
    EmbeddingTable,
    Stratum,
    cloud_font_sizes,
    doc_topic_proportions,
    rate_terms,
    stratify_topic,
)

log = logging.getLogger(__name__)


@dataclass
class PreparedCorpus:
    """A corpus with all per-document preprocessing done and cached."""

    corpus: Corpus
    params: RankingParams
    stopwords: frozenset[str]
    term_docs: dict[str, TermDocument]
    rankings: dict[str, DocumentTermRanking]
    network: TermNetwork

    @property
    def corpus_id(self) -> str:
        return self.corpus.corpus_id


def ingest_corpus(
    corpus: Corpus,
    params: RankingParams,
    stopwords: frozenset[str],
    rankings: dict[str, DocumentTermRanking] | None = None,
    progress=None,
) -> PreparedCorpus:
    """Filter, rank, thin and build the term network for a corpus.

    Documents whose ranking chain carries no mass (every term in every
    document) are kept with an empty ranking and logged, not fatal.
    """

    def stage(name: str) -> None:
        if progress:
            progress(name)

    stage("validate")
    report = validate_corpus(corpus)
    if not report.ok:
        raise CorpusValidationError("; ".join(report.fatal))

    stage("preprocess")
    term_docs = {
        doc.doc_id: preprocess_document(doc, stopwords) for doc in corpus.documents
    }

    if rankings is None:
        stage("rank")
        idf = compute_idf(list(term_docs.values()))
        rankings = {}
        for doc_id, td in term_docs.items():
            try:
                rankings[doc_id] = rank_document(td, idf, params)
            except DegenerateDocumentError:
                log.warning("document %r has no ranking mass; retained nothing", doc_id)
                rankings[doc_id] = DocumentTermRanking(doc_id=doc_id)

    stage("network")
    ordered = [rankings[doc.doc_id] for doc in corpus.documents]
    network = build_network(ordered)
    return PreparedCorpus(
        corpus=corpus,
        params=params,
        stopwords=stopwords,
        term_docs=term_docs,
        rankings=rankings,
        network=network,
    )


@dataclass(frozen=True)
class TopicView:
    topic_id: int
    size: int
    label: str | None
    terms: tuple[str, ...]  # top-rated displayed terms, best first
    strata: tuple[Stratum, ...]


@dataclass
class ModelRecord:
    model_id: str
    corpus_id: str
    gamma: float
    seed: int
    created_at: str
    partition: Partition
    ratings: dict[str, tuple[int, int, float]]  # term -> (d, s, rating)
    topics: list[TopicView] = field(default_factory=list)
    proportions: dict[str, list[float]] = field(default_factory=dict)
    layout: DocumentMap | None = None

    @property
    def community_count(self) -> int:
        return self.partition.community_count


def model_id_for(corpus_id: str, gamma: float, seed: int) -> str:
    return f"{corpus_id}--g{gamma:g}-s{seed}"


def build_model(
    prepared: PreparedCorpus,
    gamma: float,
    seed: int = 42,
    embeddings: EmbeddingTable | None = None,
    created_at: str = "",
    cloud_terms: int = DEFAULT_CLOUD_TERMS,
    n_strata: int = DEFAULT_STRATA,
    tsne_perplexity: float = 30.0,
    tsne_iterations: int = 1000,
    max_passes: int = 20,
    progress=None,
) -> ModelRecord:
    """Partition the network and derive every artifact the views need."""

    def stage(name: str) -> None:
        if progress:
            progress(name)

    stage("partition")
    partition = leiden_partition(
        prepared.network, ModularityParams(gamma=gamma, seed=seed, max_passes=max_passes)
    )
    if not partition.converged:
        log.warning("leiden hit the pass cap; returning best partition so far")

    stage("ratings")
    ratings = rate_terms(prepared.rankings)
    rating_of = {t: r.rating for t, r in ratings.items()}

    stage("strata")
    topics = []
    for topic_id, members in enumerate(partition.communities):
        by_rating = sorted(members, key=lambda t: (-rating_of[t], t))
        displayed = by_rating[:cloud_terms]
        strata = stratify_topic(displayed, rating_of, embeddings, n_strata=n_strata)
        topics.append(
            TopicView(
                topic_id=topic_id,
                size=len(members),
                label=None,
                terms=tuple(displayed),
                strata=tuple(strata),
            )
        )

    stage("proportions")
    topic_count = partition.community_count
    proportions = {
        doc.doc_id: doc_topic_proportions(prepared.rankings[doc.doc_id], partition, topic_count)
        for doc in prepared.corpus.documents
    }

    stage("layout")
    titles = {doc.doc_id: doc.title for doc in prepared.corpus.documents}
    layout = tsne_layout(
        proportions,
        titles,
        perplexity=tsne_perplexity,
        iterations=tsne_iterations,
        seed=seed,
    )

    return ModelRecord(
        model_id=model_id_for(prepared.corpus_id, gamma, seed),
        corpus_id=prepared.corpus_id,
        gamma=gamma,
        seed=seed,
        created_at=created_at,
        partition=partition,
        ratings={t: (r.doc_count, r.band_sum, r.rating) for t, r in ratings.items()},
        topics=topics,
        proportions=proportions,
        layout=layout,
    )


def topic_cloud_payload(topic: TopicView, ratings: dict[str, tuple[int, int, float]]) -> list[dict]:
    """Term rows for the stratified word cloud: rating, rank, stratum, size."""
    stratum_of = {}
    for s_index, stratum in enumerate(topic.strata):
        for term in stratum.terms:
            stratum_of[term] = s_index
    sizes = cloud_font_sizes(len(topic.terms))
    return [
        {
            "term": term,
            "rating": ratings[term][2],
            "rank": rank + 1,
            "stratum": stratum_of[term],
            "size": sizes[rank],
        }
        for rank, term in enumerate(topic.terms)
    ]
