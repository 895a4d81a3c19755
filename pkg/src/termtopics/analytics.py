"""Analytics views: t-SNE document map, monthly time series, theme crosstab.

The t-SNE here is the exact O(N^2) algorithm (no tree approximation):
Gaussian input affinities with per-point bandwidths found by binary search
against the target perplexity, Student-t low-dimensional kernel, gradient
descent with early exaggeration and a momentum switch. Deterministic for a
fixed seed.
"""

from __future__ import annotations

import datetime
import logging
from dataclasses import dataclass, field

import numpy as np

from .errors import UnknownIdError

log = logging.getLogger(__name__)

EXAGGERATION = 12.0
EXAGGERATION_ITERS = 250
MOMENTUM_EARLY = 0.5
MOMENTUM_LATE = 0.8
LEARNING_RATE = 200.0
MIN_GAIN = 0.01
_EPS = 1e-12


@dataclass(frozen=True)
class MapPoint:
    doc_id: str
    x: float
    y: float
    dominant_topic: int
    title: str


@dataclass(frozen=True)
class DocumentMap:
    points: tuple[MapPoint, ...]
    kl_divergence: float
    kl_after_exaggeration: float


def _binary_search_affinities(sq_dists: np.ndarray, perplexity: float, steps: int = 50) -> np.ndarray:
    """Row-conditional Gaussian affinities whose entropy matches
    log(perplexity), one precision per point."""
    n = sq_dists.shape[0]
    target = np.log(perplexity)
    P = np.zeros((n, n))
    for i in range(n):
        beta, beta_min, beta_max = 1.0, -np.inf, np.inf
        row = sq_dists[i]
        p = np.zeros(n)
        for _ in range(steps):
            np.exp(-row * beta, out=p)
            p[i] = 0.0
            total = p.sum()
            if total <= 0.0:
                total = _EPS
            entropy = np.log(total) + beta * float(row @ p) / total
            diff = entropy - target
            if abs(diff) < 1e-5:
                break
            if diff > 0:
                beta_min = beta
                beta = beta * 2.0 if beta_max == np.inf else (beta + beta_max) / 2.0
            else:
                beta_max = beta
                beta = beta / 2.0 if beta_min == -np.inf else (beta + beta_min) / 2.0
        P[i] = p / max(p.sum(), _EPS)
        P[i, i] = 0.0
    return P


def _low_dim_kernel(Y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Student-t numerator W and normalized Q for an embedding Y."""
    sq = (Y * Y).sum(axis=1)
    dist = -2.0 * (Y @ Y.T)
    dist += sq[:, None]
    dist += sq[None, :]
    W = 1.0 / (1.0 + dist)
    np.fill_diagonal(W, 0.0)
    Q = np.maximum(W / max(W.sum(), _EPS), _EPS)
    return W, Q


def _kl(P: np.ndarray, Q: np.ndarray) -> float:
    mask = P > 0
    return float((P[mask] * np.log(P[mask] / Q[mask])).sum())


def tsne_embed(
    X: np.ndarray,
    perplexity: float = 30.0,
    iterations: int = 1000,
    seed: int = 42,
) -> tuple[np.ndarray, float, float]:
    """Exact t-SNE of the rows of X to 2-D.

    Returns (coordinates, final KL divergence, KL right after the early
    exaggeration phase). Perplexity is clamped below (N-1)/3.
    """
    n = X.shape[0]
    if n == 0:
        raise ValueError("cannot embed zero points")
    if n == 1:
        return np.zeros((1, 2)), 0.0, 0.0

    perplexity = min(perplexity, max((n - 1) / 3.0, 0.01))
    sq = (X * X).sum(axis=1)
    sq_dists = -2.0 * (X @ X.T) + sq[:, None] + sq[None, :]
    np.fill_diagonal(sq_dists, 0.0)
    np.maximum(sq_dists, 0.0, out=sq_dists)

    cond = _binary_search_affinities(sq_dists, perplexity)
    P = cond + cond.T
    P = np.maximum(P / max(P.sum(), _EPS), _EPS)

    rng = np.random.RandomState(seed)
    Y = (rng.standard_normal((n, 2)) * 1e-4).astype(np.float32)
    update = np.zeros_like(Y)
    gains = np.ones_like(Y)

    # the gradient loop runs in float32 with preallocated buffers; the KL
    # checkpoints are evaluated in float64 from a fresh kernel
    P32 = P.astype(np.float32)
    kernel = np.empty((n, n), dtype=np.float32)
    scratch = np.empty((n, n), dtype=np.float32)
    kl_after_exaggeration = np.inf
    for it in range(iterations):
        np.dot(Y, Y.T, out=kernel)
        kernel *= -2.0
        sq_y = (Y * Y).sum(axis=1)
        kernel += sq_y[:, None]
        kernel += sq_y[None, :]
        np.maximum(kernel, 0.0, out=kernel)  # cancellation can go negative
        kernel += 1.0
        np.reciprocal(kernel, out=kernel)  # Student-t numerator W
        np.fill_diagonal(kernel, 0.0)
        total = max(float(kernel.sum()), _EPS)

        # (P_run - Q) * W  ==  P_run * W - W^2 / total
        np.multiply(P32, kernel, out=scratch)
        if it < EXAGGERATION_ITERS:
            scratch *= EXAGGERATION
        np.multiply(kernel, kernel, out=kernel)
        kernel /= total
        scratch -= kernel
        grad = 4.0 * (scratch.sum(axis=1)[:, None] * Y - scratch @ Y)

        momentum = MOMENTUM_EARLY if it < EXAGGERATION_ITERS else MOMENTUM_LATE
        flip = np.sign(grad) != np.sign(update)
        gains[flip] += 0.2
        gains[~flip] *= 0.8
        np.maximum(gains, MIN_GAIN, out=gains)
        update = momentum * update - LEARNING_RATE * gains * grad
        Y += update
        Y -= Y.mean(axis=0)

        if it == EXAGGERATION_ITERS - 1:
            _, Q = _low_dim_kernel(Y.astype(np.float64))
            kl_after_exaggeration = _kl(P, Q)

    Y64 = Y.astype(np.float64)
    _, Q = _low_dim_kernel(Y64)
    final_kl = _kl(P, Q)
    if iterations < EXAGGERATION_ITERS:
        kl_after_exaggeration = final_kl
    return Y64, final_kl, kl_after_exaggeration


def tsne_layout(
    proportions: dict[str, list[float]],
    titles: dict[str, str],
    perplexity: float = 30.0,
    iterations: int = 1000,
    seed: int = 42,
) -> DocumentMap:
    """Map documents to 2-D from their topic-proportion vectors.

    Documents with all-zero proportions (nothing retained) get no point;
    each point carries the argmax topic for coloring.
    """
    doc_ids = [d for d, v in proportions.items() if any(p > 0 for p in v)]
    if not doc_ids:
        raise ValueError("no documents with non-empty proportions")
    X = np.array([proportions[d] for d in doc_ids], dtype=float)
    Y, final_kl, kl_mid = tsne_embed(X, perplexity=perplexity, iterations=iterations, seed=seed)
    points = tuple(
        MapPoint(
            doc_id=d,
            x=float(Y[i, 0]),
            y=float(Y[i, 1]),
            dominant_topic=int(np.argmax(X[i])),
            title=titles.get(d, d),
        )
        for i, d in enumerate(doc_ids)
    )
    return DocumentMap(points=points, kl_divergence=final_kl, kl_after_exaggeration=kl_mid)


@dataclass(frozen=True)
class TimeSeries:
    topic_id: int
    points: tuple[tuple[str, float], ...]  # ("YYYY-MM", accumulated proportion)


def _month_range(first: tuple[int, int], last: tuple[int, int]) -> list[tuple[int, int]]:
    months = []
    y, m = first
    while (y, m) <= last:
        months.append((y, m))
        y, m = (y + 1, 1) if m == 12 else (y, m + 1)
    return months


def topic_time_series(
    topic_ids: list[int],
    proportions: dict[str, list[float]],
    dates: dict[str, datetime.date | None],
) -> list[TimeSeries]:
    """Accumulated (summed, not averaged) monthly proportion per topic.

    Every month between the first and last dated document is emitted, with
    zero for empty months; undated documents are skipped entirely.
    """
    topic_count = max((len(v) for v in proportions.values()), default=0)
    for t in topic_ids:
        if t < 0 or t >= topic_count:
            raise UnknownIdError(f"unknown topic {t}")

    dated = [(d, dates[d]) for d in proportions if dates.get(d) is not None]
    if not dated:
        log.warning("no dated documents; time series is empty")
        return [TimeSeries(topic_id=t, points=()) for t in topic_ids]

    keys = [(dt.year, dt.month) for _, dt in dated]
    months = _month_range(min(keys), max(keys))
    sums: dict[tuple[int, int], dict[int, float]] = {m: {t: 0.0 for t in topic_ids} for m in months}
    for doc_id, dt in dated:
        bucket = sums[(dt.year, dt.month)]
        vector = proportions[doc_id]
        for t in topic_ids:
            bucket[t] += vector[t]

    return [
        TimeSeries(
            topic_id=t,
            points=tuple((f"{y:04d}-{m:02d}", sums[(y, m)][t]) for y, m in months),
        )
        for t in topic_ids
    ]


@dataclass(frozen=True)
class ThemeCrosstab:
    tags: tuple[str, ...]
    topic_count: int
    matrix: tuple[tuple[float, ...], ...] = field(default_factory=tuple)  # tag x topic means
    doc_counts: tuple[int, ...] = ()

    @property
    def empty(self) -> bool:
        return not self.tags


def theme_crosstab(
    proportions: dict[str, list[float]], tags: dict[str, tuple[str, ...]]
) -> ThemeCrosstab:
    """Mean topic proportion per thematic tag; documents carrying several
    tags contribute to each of their rows."""
    topic_count = max((len(v) for v in proportions.values()), default=0)
    tag_docs: dict[str, list[str]] = {}
    for doc_id in proportions:
        for tag in tags.get(doc_id, ()):
            tag_docs.setdefault(tag, []).append(doc_id)
    if not tag_docs:
        log.warning("no tagged documents; theme crosstab is empty")
        return ThemeCrosstab(tags=(), topic_count=topic_count)

    tag_names = tuple(sorted(tag_docs))
    matrix = []
    counts = []
    for tag in tag_names:
        docs = tag_docs[tag]
        counts.append(len(docs))
        row = [0.0] * topic_count
        for doc_id in docs:
            for t, p in enumerate(proportions[doc_id]):
                row[t] += p
        matrix.append(tuple(p / len(docs) for p in row))
    return ThemeCrosstab(
        tags=tag_names, topic_count=topic_count, matrix=tuple(matrix), doc_counts=tuple(counts)
    )
