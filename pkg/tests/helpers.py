"""Shared builders for tests: tokens, documents, and explicit networks."""

from __future__ import annotations

import datetime
import itertools

from termtopics.corpus import AnnotatedDocument, AnnotatedToken
from termtopics.graph import TermNetwork
from termtopics.rank import DocumentTermRanking, TermRank


def tok(surface: str, pos: str = "NOUN", lemma: str | None = None, ner: str | None = None, position: int = 0) -> AnnotatedToken:
    return AnnotatedToken(
        surface=surface,
        lemma=lemma if lemma is not None else surface.lower(),
        pos=pos,
        ner=ner,
        position=position,
    )


def doc(doc_id: str, tokens, title: str | None = None, date: str | None = None, tags=()) -> AnnotatedDocument:
    placed = tuple(
        AnnotatedToken(t.surface, t.lemma, t.pos, t.ner, i) for i, t in enumerate(tokens)
    )
    return AnnotatedDocument(
        doc_id=doc_id,
        title=title if title is not None else doc_id,
        tokens=placed,
        date=datetime.date.fromisoformat(date) if date else None,
        tags=tuple(tags),
    )


def noun_doc(doc_id: str, words: list[str], **kwargs) -> AnnotatedDocument:
    return doc(doc_id, [tok(w) for w in words], **kwargs)


def net_from_edges(edges: list[tuple[str, str, float]], extra_vertices=(), df=None) -> TermNetwork:
    names = sorted({v for e in edges for v in e[:2]} | set(extra_vertices))
    index = {n: i for i, n in enumerate(names)}
    adjacency: list[dict[int, float]] = [{} for _ in names]
    for a, b, w in edges:
        ia, ib = index[a], index[b]
        adjacency[ia][ib] = adjacency[ia].get(ib, 0.0) + w
        adjacency[ib][ia] = adjacency[ib].get(ia, 0.0) + w
    dfs = [df.get(n, 1) if df else 1 for n in names]
    return TermNetwork(names, dfs, adjacency)


def clique_edges(vertices: list[str], weight: float = 1.0) -> list[tuple[str, str, float]]:
    return [(a, b, weight) for a, b in itertools.combinations(vertices, 2)]


def ranking_from_scores(doc_id: str, scores: dict[str, float], thin_percent: float = 100.0) -> DocumentTermRanking:
    """DocumentTermRanking with positions in insertion order of `scores`."""
    from termtopics.rank import RankingParams, rank_and_thin

    positions = {t: i for i, t in enumerate(scores)}
    params = RankingParams(thin_percent=thin_percent)
    return rank_and_thin(doc_id, positions, scores, params)


def ranking_from_order(doc_id: str, ordered_terms: list[str], retained_top: int | None = None) -> DocumentTermRanking:
    """Ranking where the i-th term has rank i+1; retained_top defaults to all."""
    n = len(ordered_terms)
    keep = retained_top if retained_top is not None else n
    entries = tuple(
        TermRank(term=t, pos=i, score=(n - i) / n, order=i + 1, retained=i < keep)
        for i, t in enumerate(ordered_terms)
    )
    return DocumentTermRanking(doc_id=doc_id, entries=entries)


def planted_corpus_lines(
    n_docs: int = 30,
    terms_per_doc: int = 8,
    vocab_per_topic: int = 12,
    noise_terms: int = 4,
    noise_per_doc: int = 1,
    n_topics: int = 3,
    seed: int = 1234,
    with_dates: bool = True,
    with_tags: bool = True,
) -> tuple[list[str], dict[str, int]]:
    """Annotated-jsonl lines for a corpus planted from disjoint topic
    vocabularies plus shared noise terms; returns (lines, doc -> topic)."""
    import json
    import random as _random

    rng = _random.Random(seed)
    vocabularies = [
        [f"topic{t}term{i}" for i in range(vocab_per_topic)] for t in range(n_topics)
    ]
    noise = [f"noise{i}" for i in range(noise_terms)]
    lines = []
    truth = {}
    for d in range(n_docs):
        topic = d % n_topics
        words = rng.sample(vocabularies[topic], terms_per_doc - noise_per_doc)
        words += rng.sample(noise, noise_per_doc)
        rng.shuffle(words)
        doc_id = f"doc{d:04d}"
        truth[doc_id] = topic
        payload = {
            "doc_id": doc_id,
            "title": f"Synthetic document {d} about field {topic}",
            "date": f"{2019 + d % 2:04d}-{d % 12 + 1:02d}-15" if with_dates else None,
            "tags": [f"Theme {chr(65 + topic)}"] if with_tags else [],
            "raw_text": " ".join(words),
            "tokens": [
                {"surface": w, "lemma": w, "pos": "NOUN", "ner": None, "position": i}
                for i, w in enumerate(words)
            ],
        }
        lines.append(json.dumps(payload))
    return lines, truth


def enumerate_set_partitions(n: int):
    """All set partitions of range(n) as restricted-growth membership lists."""

    def rec(prefix: list[int], max_block: int):
        if len(prefix) == n:
            yield list(prefix)
            return
        for block in range(max_block + 2):
            prefix.append(block)
            yield from rec(prefix, max(max_block, block))
            prefix.pop()

    if n == 0:
        return
    yield from rec([0], 0)
