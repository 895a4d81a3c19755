import random

import pytest

from termtopics.graph import build_network, prune_rare_edges, write_edge_list, write_vertex_list

from helpers import ranking_from_order


def test_edge_weight_counts_documents():
    rankings = [
        ranking_from_order("d1", ["ocean", "plastic"]),
        ranking_from_order("d2", ["ocean", "plastic"]),
    ]
    net = build_network(rankings)
    assert net.weight("ocean", "plastic") == 2.0


def test_isolated_vertex_has_degree_zero():
    net = build_network([ranking_from_order("d1", ["ozone"])])
    assert net.vertices == ["ozone"]
    assert net.degree("ozone") == 0.0


def test_three_document_example():
    # docs {a,b}, {a,b,c}, {b,c}: enumerate document pairs by hand
    rankings = [
        ranking_from_order("d1", ["a", "b"]),
        ranking_from_order("d2", ["a", "b", "c"]),
        ranking_from_order("d3", ["b", "c"]),
    ]
    net = build_network(rankings)
    assert net.weight("a", "b") == 2.0
    assert net.weight("b", "c") == 2.0
    assert net.weight("a", "c") == 1.0
    assert net.degree("b") == 4.0
    assert net.total_weight_2m == 10.0


def test_in_document_repetition_counts_once():
    ranking = ranking_from_order("d1", ["x", "y"])
    net = build_network([ranking, ranking_from_order("d2", ["x", "y"])])
    # each document contributes exactly 1 regardless of term frequency
    assert net.weight("x", "y") == 2.0


def test_only_retained_terms_become_vertices():
    ranking = ranking_from_order("d1", ["kept", "alsokept", "dropped"], retained_top=2)
    net = build_network([ranking])
    assert net.vertices == ["alsokept", "kept"]


def test_df_counts_thinned_documents():
    rankings = [
        ranking_from_order("d1", ["x", "y"]),
        ranking_from_order("d2", ["x"]),
    ]
    net = build_network(rankings)
    assert net.df[net.index["x"]] == 2
    assert net.df[net.index["y"]] == 1


def test_build_is_order_independent():
    rankings = [
        ranking_from_order("d1", ["a", "b"]),
        ranking_from_order("d2", ["b", "c", "d"]),
        ranking_from_order("d3", ["a", "d"]),
    ]
    net1 = build_network(rankings)
    net2 = build_network(list(reversed(rankings)))
    assert net1.vertices == net2.vertices
    assert net1.adjacency == net2.adjacency
    assert net1.df == net2.df


def test_copresent_pairs_have_positive_weight():
    rng = random.Random(3)
    rankings = []
    for i in range(20):
        terms = rng.sample([f"t{j}" for j in range(15)], rng.randint(1, 6))
        rankings.append(ranking_from_order(f"d{i}", terms))
    net = build_network(rankings)
    for r in rankings:
        terms = r.retained_terms()
        for i, a in enumerate(terms):
            for b in terms[i + 1 :]:
                assert net.weight(a, b) >= 1.0
    net.validate()  # degree/weight consistency


def test_prune_min_df_zero_is_identity():
    net = build_network([ranking_from_order("d1", ["a", "b"]), ranking_from_order("d2", ["a"])])
    pruned = prune_rare_edges(net, 0)
    assert pruned.adjacency == net.adjacency
    assert pruned.vertices == net.vertices


def test_prune_removes_edge_when_both_endpoints_rare():
    net = build_network([ranking_from_order("d1", ["a", "b"])])
    pruned = prune_rare_edges(net, 2)  # both df=1 < 2
    assert pruned.weight("a", "b") == 0.0
    assert pruned.vertices == net.vertices  # vertices never removed


def test_prune_keeps_edge_when_one_endpoint_common():
    rankings = [ranking_from_order(f"d{i}", ["common", "x" if i == 0 else f"y{i}"]) for i in range(5)]
    net = build_network(rankings)
    assert net.df[net.index["common"]] == 5
    assert net.df[net.index["x"]] == 1
    pruned = prune_rare_edges(net, 2)
    assert pruned.weight("common", "x") == 1.0


def test_prune_negative_min_df_rejected():
    net = build_network([ranking_from_order("d1", ["a", "b"])])
    with pytest.raises(ValueError):
        prune_rare_edges(net, -1)


def test_edge_and_vertex_dumps(tmp_path):
    net = build_network(
        [ranking_from_order("d1", ["a", "b"]), ranking_from_order("d2", ["a", "b", "c"])]
    )
    edges_path = tmp_path / "edges.tsv"
    verts_path = tmp_path / "verts.tsv"
    write_edge_list(net, edges_path)
    write_vertex_list(net, verts_path)
    edge_rows = [line.split("\t") for line in edges_path.read_text().splitlines()]
    assert ["a", "b", "2"] in edge_rows
    vert_rows = dict(line.split("\t") for line in verts_path.read_text().splitlines())
    assert vert_rows == {"a": "2", "b": "2", "c": "1"}
