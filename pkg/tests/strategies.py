"""Hypothesis strategies and brute-force oracles shared by the test modules."""
import math
from itertools import combinations, permutations

from hypothesis import strategies as st

from rainbowgirth.container import ColoredGraph
from rainbowgirth.hypergraph import KGraph


@st.composite
def colored_graphs(draw, min_n=3, max_n=7, max_edges=14, max_colors=6):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=max_edges))
    colors = draw(st.lists(
        st.integers(min_value=0, max_value=max_colors - 1), min_size=len(chosen), max_size=len(chosen)
    ))
    return ColoredGraph.from_edge_colors(n, [(u, v, c) for (u, v), c in zip(chosen, colors)])


@st.composite
def small_tgraphs(draw, t=3, max_n=8, max_edges=12):
    n = draw(st.integers(min_value=t, max_value=max_n))
    candidates = list(combinations(range(n), t))
    edges = draw(st.lists(st.sampled_from(candidates), unique=True, max_size=max_edges))
    return KGraph(k=t, edges=edges)


def naive_rainbow_girth(graph: ColoredGraph) -> float:
    """Try every vertex subset in every cyclic order."""
    for length in range(3, graph.n + 1):
        for subset in combinations(range(graph.n), length):
            first, rest = subset[0], subset[1:]
            for order in permutations(rest):
                cycle = (first, *order)
                colors = [graph.color_of(cycle[i], cycle[(i + 1) % length]) for i in range(length)]
                if None not in colors and len(set(colors)) == length:
                    return length
    return math.inf


def naive_profile(edges):
    """(has 2-matching, has 2-star, has triangle) by direct enumeration."""
    edges = [tuple(sorted(edge)) for edge in edges]
    matching = any(not set(e) & set(f) for e, f in combinations(edges, 2))
    star = any(set(e) & set(f) for e, f in combinations(edges, 2))
    triangle = any(
        len({v for edge in trio for v in edge}) == 3 for trio in combinations(edges, 3)
    )
    return matching, star, triangle
