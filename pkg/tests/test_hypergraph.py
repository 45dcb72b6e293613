import math
from itertools import combinations

import numpy as np
import pytest

from rainbowgirth.errors import ParameterError
from rainbowgirth.hypergraph import (
    DenseSequence, KGraph, berge_adjacency, default_family, intersecting_pairs,
    lb_probability, read_tgraph, sample_random_tgraph, shadow_k, write_tgraph
)
from rainbowgirth.modes import berge, cycles


def test_kgraph_normalizes_edges():
    tgraph = KGraph(k=3, edges=[(2, 1, 0), (0, 1, 2), (5, 3, 4)])
    assert tgraph.edges == [(0, 1, 2), (3, 4, 5)]
    assert tgraph.vertices == [0, 1, 2, 3, 4, 5]
    assert len(tgraph) == 2
    assert tgraph.density == pytest.approx(1 / 3)
    assert KGraph(k=2).density == 0.0


@pytest.mark.parametrize("edges", [[(0, 0, 1)], [(0, 1)], [(0, 1, 2, 3)]])
def test_kgraph_rejects_malformed_edges(edges):
    with pytest.raises(ParameterError):
        KGraph(k=3, edges=edges)


def test_shadow():
    tgraph = KGraph(k=3, edges=[(0, 1, 2), (1, 2, 3)])
    assert shadow_k(tgraph, 2).edges == [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]
    assert shadow_k(tgraph, 3).edges == tgraph.edges
    assert shadow_k(tgraph, 1).edges == [(0,), (1,), (2,), (3,)]
    with pytest.raises(ParameterError):
        shadow_k(tgraph, 4)


def test_graph_cycles():
    family = DenseSequence(k=2)
    assert family.first_length == 3
    c4 = family.member(4)
    assert c4.edges == [(0, 1), (0, 3), (1, 2), (2, 3)]
    assert c4.density == 1.0
    with pytest.raises(ParameterError):
        family.member(2)


def test_loose_berge_cycles():
    family = DenseSequence(k=3, kind=berge)
    assert family.first_length == 2
    member = family.member(3)
    assert member.edges == [(0, 1, 2), (0, 4, 5), (2, 3, 4)]
    assert len(member.vertices) <= 3 * (family.k - 1)
    # consecutive edges share exactly one vertex
    assert len(set(member.edges[0]) & set(member.edges[2])) == 1
    assert family.member(2).edges == [(0, 1, 2), (0, 2, 3)]


@pytest.mark.parametrize("k, kind", [(3, cycles), (1, berge), (2, "paths")])
def test_dense_sequence_validation(k, kind):
    with pytest.raises(ParameterError):
        DenseSequence(k=k, kind=kind)


def test_default_family():
    assert default_family(2) == [DenseSequence(k=2, kind=cycles)]
    assert default_family(4) == [DenseSequence(k=4, kind=berge)]


def test_lb_probability():
    assert lb_probability(100, 4, 1) == pytest.approx(1536e-6)
    assert lb_probability(100, 4, 0) == 0


def test_sampling_extremes():
    assert len(sample_random_tgraph(10, 3, 0.0, seed=0)) == 0
    full = sample_random_tgraph(6, 3, 1.0, seed=0)
    assert full.edges == list(combinations(range(6), 3))


def test_sampling_is_seeded():
    first = sample_random_tgraph(15, 3, 0.1, seed=5)
    assert first == sample_random_tgraph(15, 3, 0.1, seed=5)
    assert first != sample_random_tgraph(15, 3, 0.1, seed=6)


def test_binomial_sampling_path():
    tgraph = sample_random_tgraph(30, 3, 0.01, seed=1, enumeration_limit=100)
    assert tgraph == sample_random_tgraph(30, 3, 0.01, seed=1, enumeration_limit=100)
    assert all(len(set(edge)) == 3 and max(edge) < 30 for edge in tgraph.edges)
    with pytest.raises(ParameterError):
        sample_random_tgraph(30, 3, 0.9, seed=1, enumeration_limit=100)


@pytest.mark.parametrize("n, t, p", [(2, 3, 0.1), (10, 0, 0.1), (10, 3, 1.5)])
def test_sampling_rejects_bad_parameters(n, t, p):
    with pytest.raises(ParameterError):
        sample_random_tgraph(n, t, p, seed=0)


@pytest.mark.parametrize("limit", [10**6, 100])
def test_edge_count_is_binomial(limit):
    n, t, p, seeds = 20, 3, 0.05, 200
    sizes = np.array([len(sample_random_tgraph(n, t, p, seed, enumeration_limit=limit)) for seed in range(seeds)])
    se = sizes.std(ddof=1) / math.sqrt(seeds)
    assert abs(sizes.mean() - math.comb(n, t) * p) <= 4 * se


def test_intersecting_pairs():
    edges = [(0, 1, 2), (1, 2, 3), (3, 4, 5), (0, 1, 6)]
    assert intersecting_pairs(edges) == [(0, 1), (0, 3)]
    assert intersecting_pairs([]) == []


def test_tgraph_file_round_trip(tmp_path, planted_c4_text):
    path = tmp_path / "planted.txt"
    path.write_text(planted_c4_text)
    n, tgraph = read_tgraph(path)
    assert n == 8 and tgraph.k == 3 and len(tgraph) == 4

    copy = tmp_path / "copy.txt"
    write_tgraph(n, tgraph, copy)
    assert read_tgraph(copy) == (n, tgraph)


@pytest.mark.parametrize("text", ["3\n0 1 2\n", "4 3\n0 1 9\n", "4 3\n0 1 x\n"])
def test_read_tgraph_rejects_malformed_files(tmp_path, text):
    path = tmp_path / "bad.txt"
    path.write_text(text)
    with pytest.raises(ParameterError):
        read_tgraph(path)


def test_berge_adjacency_of_a_graph():
    adjacency = berge_adjacency([(0, [(0, 1)]), (1, [(1, 2)])])
    assert adjacency == {
        0: {1: {0: (0, 1)}},
        1: {0: {0: (0, 1)}, 2: {1: (1, 2)}},
        2: {1: {1: (1, 2)}},
    }


def test_berge_adjacency_labels_with_smallest_member():
    adjacency = berge_adjacency([(7, [(0, 1, 3), (0, 1, 2)])])
    assert adjacency[0][1] == {7: (0, 1, 2)}
    assert adjacency[3][0] == {7: (0, 1, 3)}
