from fractions import Fraction

import networkx as nx
import pytest

from rainbowgirth.core import profile_classes
from rainbowgirth.errors import ParameterError
from rainbowgirth.exact import rainbow_girth_exact
from rainbowgirth.experiments import census_of
from rainbowgirth.generators import gen_random_family, gen_star_cycle, gen_tight_example


def test_star_cycle_of_single_edges_is_a_rainbow_cycle():
    graph = gen_star_cycle(5, 1)
    assert graph.num_classes == 5
    assert rainbow_girth_exact(graph).length == 5


def test_star_cycle_structure():
    graph = gen_star_cycle(12, 3)
    assert graph.num_edges == 36
    for color_class in graph.classes:
        assert color_class.size == 3
        # every edge of class i touches x_i
        assert all(color_class.id in edge for edge in color_class.edges)
    profiles = profile_classes(graph).values()
    assert all(prof.has_star2 and not prof.has_matching2 for prof in profiles)


@pytest.mark.parametrize("n, r", [(6, 3), (2, 1), (5, 0)])
def test_star_cycle_rejects_bad_parameters(n, r):
    with pytest.raises(ParameterError):
        gen_star_cycle(n, r)


def test_tight_example_quarter_half():
    graph = gen_tight_example(Fraction(1, 4), Fraction(1, 2), 40)
    census = census_of(graph)
    assert (census.matching2, census.star2, census.rest) == (10, 20, 10)
    sizes = sorted(len(component) for component in nx.connected_components(graph.graph))
    assert sizes == [20, 20]


def test_tight_example_thirds():
    graph = gen_tight_example(Fraction(1, 3), Fraction(1, 3), 36)
    census = census_of(graph)
    assert (census.matching2, census.star2, census.rest) == (12, 12, 12)
    # single-edge classes follow the matchings, stars come last
    assert [c.size for c in graph.classes[12:24]] == [1] * 12


@pytest.mark.parametrize("alpha, beta, n", [
    (Fraction(1, 3), Fraction(1, 2), 36),
    (Fraction(1, 4), Fraction(1, 2), 42),
    (Fraction(1, 4), Fraction(1, 2), 36),
    (Fraction(1, 4), Fraction(1, 2), 8),
    (Fraction(1, 2), Fraction(0), 40),
])
def test_tight_example_rejects_bad_parameters(alpha, beta, n):
    with pytest.raises(ParameterError):
        gen_tight_example(alpha, beta, n)


def test_random_family_is_seeded():
    counts = {"matching2": 10, "star2": 5, "triangle": 3, "single": 4}
    graph = gen_random_family(50, counts, 7)
    assert graph == gen_random_family(50, counts, 7)
    assert graph != gen_random_family(50, counts, 8)

    profiles = profile_classes(graph)
    assert graph.class_ids == list(range(22))
    assert all(profiles[i].has_matching2 and profiles[i].size == 2 for i in range(10))
    assert all(profiles[i].has_star2 and not profiles[i].has_triangle and profiles[i].size == 2 for i in range(10, 15))
    assert all(profiles[i].has_triangle for i in range(15, 18))
    assert all(profiles[i].size == 1 for i in range(18, 22))


def test_random_family_collisions_exhaust_retries():
    # any two triangles on four vertices share an edge
    with pytest.raises(ParameterError):
        gen_random_family(4, {"triangle": 2}, 0, max_retries=50)


@pytest.mark.parametrize("n, counts", [
    (10, {"square": 1}),
    (10, {"single": -1}),
    (4, {"single": 7}),
    (3, {"matching2": 1}),
])
def test_random_family_rejects_bad_counts(n, counts):
    with pytest.raises(ParameterError):
        gen_random_family(n, counts, 0)
