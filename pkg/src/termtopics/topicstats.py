"""Topic presentation statistics.

Corpus-level term ratings (a Bayesian average of per-document rank-band
scores), semantic stratification of topic terms via agglomerative
clustering of word embeddings, and per-document topic proportions with the
document-list and highlight thresholds.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.cluster.hierarchy import fcluster, linkage

from .community import Partition
from .errors import UnknownIdError, UnknownTermError
from .preprocess import TermDocument
from .rank import DocumentTermRanking

log = logging.getLogger(__name__)

RATING_PRIOR = 0.3
TOPIC_DOC_MIN_PROPORTION = 0.15  # strict: list documents with proportion > 15%
HIGHLIGHT_MIN_PROPORTION = 0.10  # inclusive: highlight topics with >= 10%
TOPIC_DOC_LIMIT = 30
DEFAULT_CLOUD_TERMS = 100
DEFAULT_STRATA = 8


@dataclass(frozen=True)
class TermRating:
    term: str
    doc_count: int  # d(a): thinned documents retaining the term
    band_sum: int  # s(a): summed band scores over those documents
    rating: float  # x(a) = (0.3*C + s) / (C + d)


def band_score(ranking: DocumentTermRanking, term: str) -> int:
    """Band score of a term inside one document: 3/2/1 when its rank is in
    the top 5/10/15 percent (ceiling boundaries), else 0."""
    entry = ranking.entry(term)  # raises UnknownTermError when absent
    n = ranking.unique_term_count
    r = entry.order
    if r <= math.ceil(0.05 * n):
        return 3
    if r <= math.ceil(0.10 * n):
        return 2
    if r <= math.ceil(0.15 * n):
        return 1
    return 0


def bayesian_average(c: float, doc_count: int, band_sum: float) -> float:
    """x(a) = (0.3*C + s(a)) / (C + d(a)); equals the 0.3 prior at d=0."""
    return (RATING_PRIOR * c + band_sum) / (c + doc_count)


def rating_constant(rankings: dict[str, DocumentTermRanking]) -> float:
    """Pseudo-count C: summed retained-term counts per document over the
    retained vocabulary size of the whole corpus."""
    vocabulary: set[str] = set()
    total = 0
    for ranking in rankings.values():
        retained = ranking.retained_terms()
        total += len(retained)
        vocabulary.update(retained)
    if not vocabulary:
        raise ValueError("no retained terms in any document")
    return total / len(vocabulary)


def rate_terms(rankings: dict[str, DocumentTermRanking]) -> dict[str, TermRating]:
    """Bayesian-average rating for every term of the thinned corpus."""
    c = rating_constant(rankings)
    doc_count: dict[str, int] = {}
    band_sum: dict[str, int] = {}
    for ranking in rankings.values():
        for entry in ranking.entries:
            if not entry.retained:
                continue
            doc_count[entry.term] = doc_count.get(entry.term, 0) + 1
            band_sum[entry.term] = band_sum.get(entry.term, 0) + band_score(ranking, entry.term)
    return {
        term: TermRating(
            term=term,
            doc_count=doc_count[term],
            band_sum=band_sum[term],
            rating=bayesian_average(c, doc_count[term], band_sum[term]),
        )
        for term in doc_count
    }


def bayesian_rating(rankings: dict[str, DocumentTermRanking], term: str) -> TermRating:
    """Rating of a single term; unknown terms raise UnknownTermError."""
    ratings = rate_terms(rankings)
    if term not in ratings:
        raise UnknownTermError(term)
    return ratings[term]


class EmbeddingTable:
    """Fixed-dimension word vectors loaded from a whitespace-separated file."""

    def __init__(self, vectors: dict[str, np.ndarray], dim: int):
        self.vectors = vectors
        self.dim = dim

    @classmethod
    def load(cls, path) -> "EmbeddingTable":
        """Parse `term v1 ... vD` lines; a leading `count dim` header line is
        auto-detected and skipped."""
        vectors: dict[str, np.ndarray] = {}
        dim: int | None = None
        with open(path, "r", encoding="utf-8") as fh:
            for line_no, line in enumerate(fh, start=1):
                parts = line.rstrip("\n").split(" ")
                parts = [p for p in parts if p]
                if not parts:
                    continue
                if line_no == 1 and len(parts) == 2:
                    try:
                        int(parts[0]), int(parts[1])
                        continue  # header line
                    except ValueError:
                        pass
                vec = np.array([float(x) for x in parts[1:]], dtype=float)
                if dim is None:
                    dim = len(vec)
                elif len(vec) != dim:
                    raise ValueError(
                        f"line {line_no}: vector of dimension {len(vec)}, expected {dim}"
                    )
                vectors[parts[0]] = vec
        if dim is None:
            raise ValueError(f"embedding file {path} is empty")
        return cls(vectors, dim)

    def lookup(self, term: str) -> np.ndarray | None:
        """Exact vector if present; multiword terms fall back to the mean of
        their member-word vectors."""
        if term in self.vectors:
            return self.vectors[term]
        if " " in term:
            member_vecs = [self.vectors[w] for w in term.split(" ") if w in self.vectors]
            if member_vecs:
                return np.mean(member_vecs, axis=0)
        return None


@dataclass(frozen=True)
class Stratum:
    terms: tuple[str, ...]  # ordered by descending rating
    embedded: bool


def stratify_topic(
    terms: list[str],
    ratings: dict[str, float],
    emb: EmbeddingTable | None,
    n_strata: int = DEFAULT_STRATA,
) -> list[Stratum]:
    """Group topic terms into semantic layers by Ward-linkage agglomerative
    clustering of their embeddings (Euclidean distance).

    Terms without an embedding go to one trailing "unembedded" stratum;
    strata are ordered by the rating of their best member.
    """
    if not terms:
        raise ValueError("cannot stratify an empty term list")
    if n_strata < 1:
        raise ValueError("n_strata must be >= 1")
    embedded = []
    missing = []
    for t in terms:
        vec = emb.lookup(t) if emb is not None else None
        (embedded if vec is not None else missing).append((t, vec))

    strata: list[list[str]] = []
    if not embedded:
        if emb is not None:
            log.warning("no embeddings for any of %d topic terms; single stratum", len(terms))
        strata = []
    elif len(embedded) == 1:
        strata = [[embedded[0][0]]]
    else:
        matrix = np.vstack([vec for _, vec in embedded])
        k = min(n_strata, len(embedded))
        labels = fcluster(linkage(matrix, method="ward"), t=k, criterion="maxclust")
        groups: dict[int, list[str]] = {}
        for (term, _), label in zip(embedded, labels):
            groups.setdefault(int(label), []).append(term)
        strata = list(groups.values())

    for group in strata:
        group.sort(key=lambda t: (-ratings[t], t))
    result = [Stratum(terms=tuple(g), embedded=True) for g in strata]
    if missing:
        unembedded = sorted((t for t, _ in missing), key=lambda t: (-ratings[t], t))
        result.append(Stratum(terms=tuple(unembedded), embedded=False))
    result.sort(key=lambda s: -max(ratings[t] for t in s.terms))
    return result


def cloud_font_sizes(term_count: int, min_px: int = 12, max_px: int = 44) -> list[int]:
    """Font size per rank position (best first), linearly interpolated."""
    if term_count <= 1:
        return [max_px] * term_count
    step = (max_px - min_px) / (term_count - 1)
    return [round(max_px - i * step) for i in range(term_count)]


def doc_topic_proportions(ranking: DocumentTermRanking, partition: Partition, topic_count: int) -> list[float]:
    """Fraction of the document's retained unique terms in each topic;
    all-zero for documents with nothing retained."""
    retained = ranking.retained_terms()
    vector = [0.0] * topic_count
    if not retained:
        return vector
    for term in retained:
        vector[partition.membership[term]] += 1.0
    n = len(retained)
    return [v / n for v in vector]


def topic_documents(
    topic_id: int, proportions: dict[str, list[float]]
) -> list[tuple[str, float]]:
    """Documents where the topic exceeds 15 percent, best first, capped at 30."""
    topic_count = max((len(v) for v in proportions.values()), default=0)
    if topic_id < 0 or topic_id >= topic_count:
        raise UnknownIdError(f"unknown topic {topic_id}")
    qualifying = []
    for doc_id, vector in proportions.items():
        p = vector[topic_id]
        if p > TOPIC_DOC_MIN_PROPORTION:
            qualifying.append((doc_id, p))
    qualifying.sort(key=lambda item: (-item[1], item[0]))
    return qualifying[:TOPIC_DOC_LIMIT]


@dataclass(frozen=True)
class Highlight:
    start: int  # first token position of the occurrence
    end: int  # one past the last token position
    topic_id: int


def document_highlights(
    term_doc: TermDocument,
    ranking: DocumentTermRanking,
    partition: Partition,
    proportions: list[float],
) -> list[Highlight]:
    """Occurrences of retained terms whose topic holds at least 10 percent
    of the document, as token-position spans."""
    qualifying = {
        t for t, p in enumerate(proportions) if p >= HIGHLIGHT_MIN_PROPORTION
    }
    retained = set(ranking.retained_terms())
    spans = []
    for occ in term_doc.terms:
        text = occ.term.text
        if text not in retained:
            continue
        topic = partition.membership[text]
        if topic in qualifying:
            spans.append(Highlight(start=occ.position, end=occ.end, topic_id=topic))
    spans.sort(key=lambda h: h.start)
    return spans
