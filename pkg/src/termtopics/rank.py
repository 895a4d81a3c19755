"""Per-document term ranking via a PageRank-style Markov chain.

Each document's unique terms are ranked by the stationary distribution of a
chain that follows windowed co-occurrence edges (idf-weighted) with
probability alpha and otherwise teleports to terms weighted by inverse
document frequency and an earliest-position decay. Documents are then
thinned to their top-ranked terms.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import ConvergenceError, DegenerateDocumentError, UnknownTermError
from .preprocess import TermDocument

MAX_POWER_ITERATIONS = 10_000


@dataclass(frozen=True)
class RankingParams:
    alpha: float = 0.9
    beta: float = -0.9
    window: int = 11
    thin_percent: float = 33.3

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must be in [0, 1], got {self.alpha}")
        if self.window < 1 or self.window % 2 == 0:
            raise ValueError(f"window must be an odd positive integer, got {self.window}")
        if not 0.0 < self.thin_percent <= 100.0:
            raise ValueError(f"thin_percent must be in (0, 100], got {self.thin_percent}")


class IdfTable:
    """Inverse document frequencies: idf = ln(N / df)."""

    def __init__(self, doc_count: int, df: dict[str, int]):
        if doc_count < 1:
            raise ValueError("doc_count must be positive")
        self.doc_count = doc_count
        self.df = df

    def idf(self, term: str) -> float:
        try:
            return math.log(self.doc_count / self.df[term])
        except KeyError:
            raise UnknownTermError(term) from None

    def __contains__(self, term: str) -> bool:
        return term in self.df


def compute_idf(term_docs: list[TermDocument]) -> IdfTable:
    """Document frequencies over the unique-term sets of all documents."""
    if not term_docs:
        raise ValueError("at least one document required")
    df: dict[str, int] = {}
    for doc in term_docs:
        for term in set(doc.term_texts()):
            df[term] = df.get(term, 0) + 1
    return IdfTable(doc_count=len(term_docs), df=df)


class CooccurrenceCounts:
    """Symmetric windowed co-occurrence counts within one document."""

    def __init__(self):
        self._counts: dict[tuple[str, str], int] = {}

    def _key(self, a: str, b: str) -> tuple[str, str]:
        return (a, b) if a <= b else (b, a)

    def add(self, a: str, b: str) -> None:
        key = self._key(a, b)
        self._counts[key] = self._counts.get(key, 0) + 1

    def get(self, a: str, b: str) -> int:
        return self._counts.get(self._key(a, b), 0)

    def __len__(self) -> int:
        return len(self._counts)


def window_cooccurrence(doc: TermDocument, window: int) -> CooccurrenceCounts:
    """Count term pairs whose sequence positions are at most (window-1)/2 apart.

    Positions are indexes into the filtered term sequence, not raw token
    offsets; pairs of equal terms at distinct positions count toward the
    term's self co-occurrence.
    """
    if window < 1 or window % 2 == 0:
        raise ValueError(f"window must be an odd positive integer, got {window}")
    half = (window - 1) // 2
    texts = doc.term_texts()
    counts = CooccurrenceCounts()
    for p, term_p in enumerate(texts):
        for q in range(p + 1, min(p + half + 1, len(texts))):
            counts.add(term_p, texts[q])
    return counts


@dataclass(frozen=True)
class TermRank:
    term: str
    pos: int  # earliest index in the filtered term sequence
    score: float  # stationary probability
    order: int  # 1-based rank, best first
    retained: bool


@dataclass(frozen=True)
class DocumentTermRanking:
    doc_id: str
    entries: tuple[TermRank, ...] = field(default_factory=tuple)

    @property
    def unique_term_count(self) -> int:
        return len(self.entries)

    def retained_terms(self) -> list[str]:
        return [e.term for e in self.entries if e.retained]

    def entry(self, term: str) -> TermRank:
        for e in self.entries:
            if e.term == term:
                return e
        raise UnknownTermError(term)


def unique_terms_with_positions(doc: TermDocument) -> dict[str, int]:
    """Unique terms in first-appearance order mapped to their earliest
    sequence index."""
    positions: dict[str, int] = {}
    for i, text in enumerate(doc.term_texts()):
        if text not in positions:
            positions[text] = i
    return positions


def build_transition_matrix(
    terms: list[str],
    cooc: CooccurrenceCounts,
    idf: IdfTable,
    positions: dict[str, int],
    params: RankingParams,
) -> np.ndarray:
    """Column-stochastic transition matrix G over the document's unique terms.

    Column j mixes an idf-weighted co-occurrence step (probability alpha)
    with a teleport step weighted by (1+pos)^beta * idf; columns with zero
    co-occurrence mass teleport with probability 1.
    """
    n = len(terms)
    if n < 1:
        raise ValueError("document has no terms")
    idf_vec = np.array([idf.idf(t) for t in terms], dtype=float)
    pos_vec = np.array([positions[t] for t in terms], dtype=float)

    teleport = (1.0 + pos_vec) ** params.beta * idf_vec
    teleport_mass = teleport.sum()
    if teleport_mass <= 0.0:
        raise DegenerateDocumentError(
            "no ranking mass: all idf weights are zero and no co-occurrence edges carry weight"
        )
    teleport /= teleport_mass

    f = np.zeros((n, n), dtype=float)
    for i, ti in enumerate(terms):
        for j in range(i, n):
            c = cooc.get(ti, terms[j])
            if c:
                f[i, j] = c
                f[j, i] = c

    weighted = idf_vec[:, None] * f  # entry (i, j): idf_i * f_ij
    col_mass = weighted.sum(axis=0)
    G = np.empty((n, n), dtype=float)
    for j in range(n):
        if col_mass[j] > 0.0:
            G[:, j] = params.alpha * weighted[:, j] / col_mass[j] + (1.0 - params.alpha) * teleport
        else:
            # dangling column: the walk teleports with probability 1
            G[:, j] = teleport
    return G


def stationary_distribution(G: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """Stationary vector of a column-stochastic matrix by power iteration.

    Starts from the uniform vector and stops when the L1 residual of one
    step drops to tol; raises ConvergenceError after 10,000 iterations.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    n = G.shape[0]
    x = np.full(n, 1.0 / n)
    residual = math.inf
    for _ in range(MAX_POWER_ITERATIONS):
        y = G @ x
        y /= y.sum()  # guard against numeric drift
        residual = float(np.abs(y - x).sum())
        x = y
        if residual <= tol:
            return x
    raise ConvergenceError(
        f"power iteration did not reach tol={tol} within {MAX_POWER_ITERATIONS} iterations",
        residual=residual,
    )


def retained_count(n: int, thin_percent: float) -> int:
    """Thinning keeps max(1, floor(P/100 * n)) terms."""
    return max(1, math.floor(thin_percent * n / 100.0))


def rank_and_thin(
    doc_id: str,
    positions: dict[str, int],
    scores: dict[str, float],
    params: RankingParams,
) -> DocumentTermRanking:
    """Order terms by score (ties: earlier position, then lexicographic) and
    mark the top-P% as retained."""
    ordered = sorted(positions, key=lambda t: (-scores[t], positions[t], t))
    keep = retained_count(len(ordered), params.thin_percent)
    entries = tuple(
        TermRank(term=t, pos=positions[t], score=scores[t], order=i + 1, retained=i < keep)
        for i, t in enumerate(ordered)
    )
    return DocumentTermRanking(doc_id=doc_id, entries=entries)


def rank_document(doc: TermDocument, idf: IdfTable, params: RankingParams) -> DocumentTermRanking:
    """Full ranking for one document: co-occurrence, chain, thinning."""
    positions = unique_terms_with_positions(doc)
    if not positions:
        return DocumentTermRanking(doc_id=doc.doc_id)
    terms = list(positions)
    cooc = window_cooccurrence(doc, params.window)
    G = build_transition_matrix(terms, cooc, idf, positions, params)
    x = stationary_distribution(G)
    scores = {t: float(x[i]) for i, t in enumerate(terms)}
    return rank_and_thin(doc.doc_id, positions, scores, params)


def rank_corpus(
    term_docs: list[TermDocument],
    params: RankingParams,
    idf: IdfTable | None = None,
    workers: int = 1,
) -> dict[str, DocumentTermRanking]:
    """Rank every document; results are keyed by doc_id so the merge is
    order-independent when ranking in parallel."""
    if idf is None:
        idf = compute_idf(term_docs)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rankings = list(pool.map(lambda d: rank_document(d, idf, params), term_docs))
    else:
        rankings = [rank_document(doc, idf, params) for doc in term_docs]
    return {r.doc_id: r for r in rankings}
