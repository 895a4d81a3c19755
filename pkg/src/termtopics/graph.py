"""Corpus-level term co-occurrence network.

Vertices are the terms retained in at least one thinned document; an edge
weight counts the thinned documents containing both endpoint terms.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable

from .rank import DocumentTermRanking


class TermNetwork:
    """Weighted undirected graph over terms, immutable once built."""

    def __init__(self, vertices: list[str], df: list[int], adjacency: list[dict[int, float]]):
        self.vertices = vertices
        self.index = {t: i for i, t in enumerate(vertices)}
        self.df = df
        self.adjacency = adjacency
        self.degrees = [sum(neigh.values()) for neigh in adjacency]
        self.total_weight_2m = sum(self.degrees)
        self.validate()

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return sum(len(neigh) for neigh in self.adjacency) // 2

    def weight(self, a: str, b: str) -> float:
        return self.adjacency[self.index[a]].get(self.index[b], 0.0)

    def degree(self, term: str) -> float:
        return self.degrees[self.index[term]]

    def validate(self) -> None:
        """Assert symmetry, no self-loops, and degree/weight consistency."""
        total = 0.0
        for i, neigh in enumerate(self.adjacency):
            if i in neigh:
                raise AssertionError(f"self-loop on vertex {self.vertices[i]!r}")
            for j, w in neigh.items():
                if self.adjacency[j].get(i) != w:
                    raise AssertionError(
                        f"asymmetric edge {self.vertices[i]!r}-{self.vertices[j]!r}"
                    )
                total += w
        if abs(total - self.total_weight_2m) > 1e-9:
            raise AssertionError("sum of degrees does not equal twice the edge weight total")


def build_network(rankings: Iterable[DocumentTermRanking]) -> TermNetwork:
    """Aggregate retained-term pairs over all documents.

    Each document contributes exactly 1 to the weight of every unordered
    pair of its retained terms, so the network is independent of document
    order and of in-document term frequency.
    """
    df: dict[str, int] = {}
    pair_weights: dict[tuple[str, str], float] = {}
    for ranking in rankings:
        retained = sorted(set(ranking.retained_terms()))
        for term in retained:
            df[term] = df.get(term, 0) + 1
        for i, a in enumerate(retained):
            for b in retained[i + 1 :]:
                pair_weights[(a, b)] = pair_weights.get((a, b), 0.0) + 1.0

    vertices = sorted(df)
    index = {t: i for i, t in enumerate(vertices)}
    adjacency: list[dict[int, float]] = [{} for _ in vertices]
    for (a, b), w in sorted(pair_weights.items()):
        ia, ib = index[a], index[b]
        adjacency[ia][ib] = w
        adjacency[ib][ia] = w
    return TermNetwork(vertices, [df[t] for t in vertices], adjacency)


def prune_rare_edges(net: TermNetwork, min_df: int) -> TermNetwork:
    """Drop edges where BOTH endpoints occur in fewer than min_df thinned
    documents; vertices always survive. min_df=0 is the identity."""
    if min_df < 0:
        raise ValueError("min_df must be >= 0")
    adjacency: list[dict[int, float]] = [{} for _ in net.vertices]
    for i, neigh in enumerate(net.adjacency):
        for j, w in neigh.items():
            if net.df[i] < min_df and net.df[j] < min_df:
                continue
            adjacency[i][j] = w
    return TermNetwork(list(net.vertices), list(net.df), adjacency)


def write_edge_list(net: TermNetwork, path: str | Path) -> None:
    """Dump edges as `term_a<TAB>term_b<TAB>weight`, one per line."""
    with Path(path).open("w", encoding="utf-8") as fh:
        for i, neigh in enumerate(net.adjacency):
            for j in sorted(neigh):
                if j <= i:
                    continue
                w = neigh[j]
                fh.write(f"{net.vertices[i]}\t{net.vertices[j]}\t{w:g}\n")


def write_vertex_list(net: TermNetwork, path: str | Path) -> None:
    """Dump vertices as `term<TAB>df`, one per line."""
    with Path(path).open("w", encoding="utf-8") as fh:
        for term, df in zip(net.vertices, net.df):
            fh.write(f"{term}\t{df}\n")
