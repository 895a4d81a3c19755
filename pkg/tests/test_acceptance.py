"""Acceptance suite: one test per release criterion, at its stated tolerance.

Each test prints a single PASS line when it completes (failures surface as
ordinary pytest failures). Run with `pytest tests/test_acceptance.py -s`.
"""

import json
import math
import random
import time

import numpy as np
import pytest

from termtopics.community import ModularityParams, generalized_modularity, leiden_partition, write_partition
from termtopics.corpus import load_corpus
from termtopics.preprocess import load_stopwords
from termtopics.rank import (
    IdfTable,
    RankingParams,
    build_transition_matrix,
    compute_idf,
    stationary_distribution,
    unique_terms_with_positions,
    window_cooccurrence,
)
from termtopics.service.exports import doc_topics_csv, topic_terms_csv
from termtopics.service.pipeline import build_model, ingest_corpus
from termtopics.topicstats import bayesian_average, topic_documents, document_highlights

from helpers import (
    clique_edges,
    enumerate_set_partitions,
    net_from_edges,
    noun_doc,
    planted_corpus_lines,
    ranking_from_order,
)


def report(name):
    print(f"\nACCEPTANCE {name}: PASS")


# ----------------------------------------------------------------- helpers


def random_weighted_net(rng, n, p=0.45):
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                edges.append((f"v{i}", f"v{j}", float(rng.randint(1, 5))))
    if not edges:
        edges = [("v0", "v1", 1.0)]
    return net_from_edges(edges, extra_vertices=[f"v{i}" for i in range(n)])


def adjusted_rand_index(labels_a, labels_b):
    """Plain contingency-table ARI."""
    n = len(labels_a)
    assert n == len(labels_b) and n > 0
    cont = {}
    count_a = {}
    count_b = {}
    for a, b in zip(labels_a, labels_b):
        cont[(a, b)] = cont.get((a, b), 0) + 1
        count_a[a] = count_a.get(a, 0) + 1
        count_b[b] = count_b.get(b, 0) + 1

    def comb2(x):
        return x * (x - 1) / 2.0

    sum_ij = sum(comb2(v) for v in cont.values())
    sum_a = sum(comb2(v) for v in count_a.values())
    sum_b = sum(comb2(v) for v in count_b.values())
    expected = sum_a * sum_b / comb2(n)
    maximum = (sum_a + sum_b) / 2.0
    if maximum == expected:
        return 1.0
    return (sum_ij - expected) / (maximum - expected)


def test_ari_helper_sane():
    assert adjusted_rand_index([0, 0, 1, 1], [1, 1, 0, 0]) == pytest.approx(1.0)
    assert adjusted_rand_index([0, 0, 1, 1], [0, 1, 0, 1]) < 0.01


# ------------------------------------------------- criterion 1: modularity


def test_modularity_oracle_and_leiden_optimality():
    start = time.time()

    # three fixed fixtures, hand-computed, tolerance 1e-12
    single = net_from_edges([("a", "b", 1.0)])
    assert generalized_modularity(single, {"a": 0, "b": 0}, 1.0) == pytest.approx(0.0, abs=1e-12)
    assert generalized_modularity(single, {"a": 0, "b": 1}, 1.0) == pytest.approx(-0.5, abs=1e-12)
    cliques = clique_edges([f"a{i}" for i in range(4)]) + clique_edges([f"b{i}" for i in range(4)])
    cliques.append(("a0", "b0", 1.0))
    two_cliques = net_from_edges(cliques)
    member = {v: 0 if v.startswith("a") else 1 for v in two_cliques.vertices}
    assert generalized_modularity(two_cliques, member, 1.0) == pytest.approx(11 / 26, abs=1e-12)

    # >= 50 seeded random graphs: Leiden vs exhaustive enumeration
    rng = random.Random(20260810)
    optimal_hits = 0
    trials = 50
    for _ in range(trials):
        n = rng.randint(4, 8)
        net = random_weighted_net(rng, n)
        gamma = rng.choice([0.5, 1.0, 1.5, 2.0])
        best = max(
            generalized_modularity(net, membership, gamma)
            for membership in enumerate_set_partitions(n)
        )
        part = leiden_partition(net, ModularityParams(gamma=gamma, seed=42))
        if part.quality >= best - 1e-12:
            optimal_hits += 1
        singleton = generalized_modularity(net, list(range(n)), gamma)
        all_in_one = generalized_modularity(net, [0] * n, gamma)
        assert part.quality >= max(singleton, all_in_one) - 1e-12

    elapsed = time.time() - start
    assert optimal_hits >= 0.9 * trials, f"only {optimal_hits}/{trials} optimal"
    assert elapsed < 30.0, f"took {elapsed:.1f}s"
    report(f"modularity oracle ({optimal_hits}/{trials} optimal, {elapsed:.1f}s)")


# -------------------------------------------- criterion 2: resolution limits


def test_resolution_limits_on_ten_vertex_graph():
    start = time.time()
    rng = random.Random(5)
    vertices = [f"v{i}" for i in range(10)]
    edges = [(vertices[i], vertices[i + 1], 1.0) for i in range(9)]  # connected spine
    extra = {(rng.randrange(10), rng.randrange(10)) for _ in range(8)}
    for i, j in sorted(extra):
        if i != j and (vertices[min(i, j)], vertices[max(i, j)], 1.0) not in edges:
            edges.append((vertices[min(i, j)], vertices[max(i, j)], 1.0))
    net = net_from_edges(edges)
    assert net.vertex_count == 10

    low = leiden_partition(net, ModularityParams(gamma=1e-4, seed=42))
    high = leiden_partition(net, ModularityParams(gamma=1e6, seed=42))
    elapsed = time.time() - start
    assert low.community_count == 1
    assert high.community_count == 10
    assert elapsed < 1.0, f"took {elapsed:.2f}s"
    report(f"resolution limits ({elapsed:.2f}s)")


# --------------------------------------- criterion 3: stationary distribution


def test_stationary_oracle_hundred_documents():
    start = time.time()
    rng = random.Random(77)
    pool = [f"w{i}" for i in range(400)]
    docs = []
    for d in range(100):
        n_unique = rng.randint(5, 50)
        unique = rng.sample(pool, n_unique)
        words = unique + [rng.choice(unique) for _ in range(rng.randint(0, 40))]
        rng.shuffle(words)
        docs.append(noun_doc(f"d{d}", words))

    from termtopics.preprocess import filter_tokens

    term_docs = [filter_tokens(doc, frozenset()) for doc in docs]
    idf = compute_idf(term_docs)
    params = RankingParams()

    checked = 0
    for td in term_docs:
        positions = unique_terms_with_positions(td)
        terms = list(positions)
        G = build_transition_matrix(terms, window_cooccurrence(td, params.window), idf, positions, params)
        x = stationary_distribution(G)
        assert abs(x.sum() - 1.0) <= 1e-9
        assert (x >= 0).all()

        n = len(terms)
        A = G - np.eye(n)
        A[-1, :] = 1.0
        b = np.zeros(n)
        b[-1] = 1.0
        oracle = np.linalg.solve(A, b)
        assert np.abs(x - oracle).sum() <= 1e-8
        checked += 1

    elapsed = time.time() - start
    assert checked == 100
    assert elapsed < 10.0, f"took {elapsed:.1f}s"
    report(f"stationary oracle (100 documents, {elapsed:.1f}s)")


# --------------------------------------------- criterion 4: planted recovery


def test_planted_topic_recovery(tmp_path):
    start = time.time()
    lines, truth = planted_corpus_lines(
        n_docs=300,
        terms_per_doc=20,
        vocab_per_topic=50,
        noise_terms=10,
        noise_per_doc=1,  # 5% of 20 terms
        seed=424242,
    )
    path = tmp_path / "planted.jsonl"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")

    corpus = load_corpus(path, corpus_id="planted")
    params = RankingParams(thin_percent=50.0)
    prepared = ingest_corpus(corpus, params, load_stopwords())
    record = build_model(prepared, gamma=1.0, seed=42, tsne_iterations=250)

    membership = record.partition.membership
    planted = [t for t in membership if t.startswith("topic")]
    labels_true = [int(t[5]) for t in planted]  # topic<K>term<i>
    labels_found = [membership[t] for t in planted]
    ari = adjusted_rand_index(labels_true, labels_found)
    assert ari >= 0.9, f"ARI {ari:.3f}"

    # dominant topic of every document matches its generator community
    from collections import Counter

    votes = {}
    for doc_id, vector in record.proportions.items():
        dominant = max(range(len(vector)), key=lambda t: vector[t])
        votes.setdefault(truth[doc_id], Counter())[dominant] += 1
    mapping = {g: c.most_common(1)[0][0] for g, c in votes.items()}
    assert len(set(mapping.values())) == 3
    mismatches = [
        doc_id
        for doc_id, vector in record.proportions.items()
        if max(range(len(vector)), key=lambda t: vector[t]) != mapping[truth[doc_id]]
    ]
    assert not mismatches, f"{len(mismatches)} documents off-generator"

    elapsed = time.time() - start
    assert elapsed < 60.0, f"took {elapsed:.1f}s"
    report(f"planted-topic recovery (ARI {ari:.3f}, {elapsed:.1f}s)")


# --------------------------------------------------- criterion 5: rating


def test_rating_formula_fixtures():
    assert bayesian_average(10.0, 0, 0) == 0.3  # prior limit, exact
    assert bayesian_average(10.0, 5, 15) == 1.2  # (3 + 15) / 15, exact
    ratings = [bayesian_average(7.0, 9, s) for s in range(0, 28)]
    assert all(a < b for a, b in zip(ratings, ratings[1:]))
    report("rating formula fixtures")


# ------------------------------------------------ criterion 6: thresholds


def test_threshold_fixtures():
    # topic_documents: strict > 0.15 and the 30-item cap
    proportions = {f"d{i:03d}": [0.151 + i * 1e-4, 1 - 0.151 - i * 1e-4] for i in range(35)}
    proportions["exactly"] = [0.15, 0.85]
    proportions["under"] = [0.1499, 0.8501]
    rows = topic_documents(0, proportions)
    assert len(rows) == 30
    assert "exactly" not in {d for d, _ in rows}
    assert "under" not in {d for d, _ in rows}
    values = [p for _, p in rows]
    assert values == sorted(values, reverse=True)

    # document_highlights: inclusive >= 0.10
    from termtopics.preprocess import Term, TermDocument, TermOccurrence
    from test_topicstats import make_partition

    term_doc = TermDocument(
        doc_id="d",
        terms=(TermOccurrence(Term("a"), 0), TermOccurrence(Term("b"), 1)),
    )
    ranking = ranking_from_order("d", ["a", "b"])
    part = make_partition({"a": 0, "b": 1})
    spans = document_highlights(term_doc, ranking, part, [0.90, 0.10])
    assert {h.topic_id for h in spans} == {0, 1}  # 0.10 qualifies
    spans = document_highlights(term_doc, ranking, part, [0.91, 0.09])
    assert {h.topic_id for h in spans} == {0}  # 0.09 does not
    report("threshold fixtures")


# ----------------------------------------------- criterion 7: determinism


def test_full_pipeline_determinism(tmp_path):
    lines, _ = planted_corpus_lines(n_docs=60, seed=31)
    path = tmp_path / "det.jsonl"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")

    artifacts = []
    for run in ("one", "two"):
        corpus = load_corpus(path, corpus_id="det")
        prepared = ingest_corpus(corpus, RankingParams(thin_percent=60.0), load_stopwords())
        record = build_model(prepared, gamma=1.0, seed=42, tsne_iterations=200)
        part_path = tmp_path / f"partition-{run}.tsv"
        write_partition(record.partition, part_path)
        artifacts.append(
            (
                part_path.read_bytes(),
                topic_terms_csv(record).encode(),
                doc_topics_csv(record).encode(),
            )
        )
    assert artifacts[0][0] == artifacts[1][0], "partition exports differ"
    assert artifacts[0][1] == artifacts[1][1], "topic_terms.csv differs"
    assert artifacts[0][2] == artifacts[1][2], "doc_topics.csv differs"
    report("determinism (byte-identical exports)")


# ----------------------------------------------- criterion 8: performance


def test_performance_budget(tmp_path):
    rng = random.Random(99)
    n_topics = 10
    topic_vocab = [[f"t{t}w{i}" for i in range(150)] for t in range(n_topics)]
    shared = [f"common{i}" for i in range(300)]
    lines = []
    for d in range(1000):
        t = d % n_topics
        words = [
            rng.choice(shared) if rng.random() < 0.35 else rng.choice(topic_vocab[t])
            for _ in range(200)
        ]
        lines.append(
            json.dumps(
                {
                    "doc_id": f"d{d:05d}",
                    "title": f"doc {d}",
                    "date": f"2019-{d % 12 + 1:02d}-01",
                    "tags": [],
                    "raw_text": " ".join(words),
                    "tokens": [
                        {"surface": w, "lemma": w, "pos": "NOUN", "ner": None, "position": i}
                        for i, w in enumerate(words)
                    ],
                }
            )
        )
    path = tmp_path / "perf.jsonl"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")

    start = time.time()
    corpus = load_corpus(path, corpus_id="perf")
    prepared = ingest_corpus(corpus, RankingParams(), load_stopwords())
    build_model(prepared, gamma=1.0, seed=42)
    full = time.time() - start
    assert full < 60.0, f"ingest-to-model took {full:.1f}s"

    start = time.time()
    build_model(prepared, gamma=2.0, seed=42)
    rebuild = time.time() - start
    assert rebuild < 20.0, f"model rebuild took {rebuild:.1f}s"
    report(f"performance budget (full {full:.1f}s, rebuild {rebuild:.1f}s)")
