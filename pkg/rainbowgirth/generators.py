"""
Constructors for the extremal colored graphs and seeded random instance families.

All vertices are 0-based. Constructions stated with 1-based indices taken
modulo some m map index j to residue (j - 1) mod m, so x_1 is vertex 0 and
x_m (equivalently x_0) is vertex m - 1.
"""
from fractions import Fraction
from typing import Dict, List

import numpy as np
from loguru import logger

from .container import ColorClass, ColoredGraph, Edge, normalize_edge
from .errors import ParameterError
from .modes import DEFAULT_COLLISION_RETRIES
from .seeding import make_rng

CENSUS_KEYS = ["matching2", "star2", "triangle", "single"]


def _build(n: int, class_edges: List[List[Edge]], what: str) -> ColoredGraph:
    try:
        return ColoredGraph(n=n, classes=[ColorClass(id=i, edges=edges) for i, edges in enumerate(class_edges)])
    except ParameterError as e:
        raise ParameterError(f"{what} produced colliding vertex pairs: {e}") from e


def gen_star_cycle(n: int, r: int) -> ColoredGraph:
    """
    n classes on a cycle x_0..x_{n-1}; class i is the star {x_i x_{i+1}, ..., x_i x_{i+r}}.

    Rainbow girth is ceil(n / r), which shows the ceil(n/r) bound cannot be improved.

    Parameters
    ----------
    n : int
        Vertex and class count, at least 3.
    r : int
        Star size; 2r < n keeps the n*r pairs distinct.
    """
    if n < 3 or r < 1:
        raise ParameterError(f"gen_star_cycle needs n >= 3 and r >= 1, got n={n}, r={r}.")
    if 2 * r >= n:
        raise ParameterError(f"gen_star_cycle needs 2r < n, got n={n}, r={r}.")
    classes = [[normalize_edge(i, (i + j) % n) for j in range(1, r + 1)] for i in range(n)]
    return _build(n, classes, "gen_star_cycle")


def tight_example_sizes(alpha, beta, n: int) -> tuple[int, int]:
    """Validate the tight-example parameters and return (alpha*n, beta*n)."""
    alpha, beta = Fraction(alpha), Fraction(beta)
    if 2 * alpha + beta != 1:
        raise ParameterError(f"The tight example needs 2*alpha + beta = 1, got {2 * alpha + beta}.")
    if min(alpha, beta) <= 0:
        raise ParameterError(f"The tight example needs alpha, beta > 0, got {alpha}, {beta}.")
    an, bn = alpha * n, beta * n
    if an.denominator != 1 or bn.denominator != 1:
        raise ParameterError(f"alpha*n = {an} and beta*n = {bn} must be integers.")
    an, bn = int(an), int(bn)
    if an < 4 or an % 2:
        raise ParameterError(f"alpha*n = {an} must be at least 4 and even.")
    return an, bn


def gen_tight_example(alpha, beta, n: int) -> ColoredGraph:
    """
    Graph at the threshold 2*alpha + beta = 1 with linear rainbow girth.

    Two components: X = x_1..x_{2an} (vertices 0..2an-1) and Y = y_1..y_{bn}
    (vertices 2an..n-1), where an = alpha*n and bn = beta*n. For i = 1..an/2
    with X indices mod 2an:

    - ids 2(i-1), 2(i-1)+1: 2-matchings {x_{4i+1}x_{4i+2}, x_{4i+3}x_{4i+4}}
      and {x_{4i+2}x_{4i+5}, x_{4i+4}x_{4i+7}};
    - ids an + 2(i-1), an + 2(i-1)+1: single edges {x_{4i+1}x_{4i+3}} and
      {x_{4i+2}x_{4i+4}};

    and for i = 1..bn, id 2an + (i-1): the star {y_i y_{i+1}, y_i y_{i+2}},
    Y indices mod bn.

    Census: an matching classes, bn star classes, an single-edge classes.
    Rainbow girth is at least min(an, bn/2).
    """
    an, bn = tight_example_sizes(alpha, beta, n)
    size_x = 2 * an

    def x(j: int) -> int:
        return (j - 1) % size_x

    def y(j: int) -> int:
        return size_x + (j - 1) % bn

    matchings, singles, stars = [], [], []
    for i in range(1, an // 2 + 1):
        matchings.append([normalize_edge(x(4 * i + 1), x(4 * i + 2)), normalize_edge(x(4 * i + 3), x(4 * i + 4))])
        matchings.append([normalize_edge(x(4 * i + 2), x(4 * i + 5)), normalize_edge(x(4 * i + 4), x(4 * i + 7))])
        singles.append([normalize_edge(x(4 * i + 1), x(4 * i + 3))])
        singles.append([normalize_edge(x(4 * i + 2), x(4 * i + 4))])
    for i in range(1, bn + 1):
        stars.append([normalize_edge(y(i), y(i + 1)), normalize_edge(y(i), y(i + 2))])

    graph = _build(n, matchings + singles + stars, "gen_tight_example")
    covered = {v for edge in graph.color_map for v in edge}
    assert covered == set(range(n)), "every X and Y vertex must be covered"
    return graph


def _draw_class(rng: np.random.Generator, n: int, kind: str) -> List[Edge]:
    if kind == "matching2":
        a, b, c, d = rng.choice(n, size=4, replace=False).tolist()
        return [normalize_edge(a, b), normalize_edge(c, d)]
    if kind == "star2":
        a, b, c = rng.choice(n, size=3, replace=False).tolist()
        return [normalize_edge(a, b), normalize_edge(a, c)]
    if kind == "triangle":
        a, b, c = rng.choice(n, size=3, replace=False).tolist()
        return [normalize_edge(a, b), normalize_edge(b, c), normalize_edge(a, c)]
    a, b = rng.choice(n, size=2, replace=False).tolist()
    return [normalize_edge(a, b)]


CLASS_EDGES = {"matching2": 2, "star2": 2, "triangle": 3, "single": 1}
CLASS_VERTICES = {"matching2": 4, "star2": 3, "triangle": 3, "single": 2}


def gen_random_family(
    n: int,
    counts: Dict[str, int],
    seed: int,
    max_retries: int = DEFAULT_COLLISION_RETRIES,
) -> ColoredGraph:
    """
    Seeded random instance with a prescribed class census.

    Classes are drawn in the order matching2, star2, triangle, single, each
    uniformly from its structural type; a draw reusing an already placed
    vertex pair is rejected and redrawn.

    Parameters
    ----------
    n : int
        Vertex count.
    counts : dict
        Number of classes per type; keys among "matching2", "star2", "triangle", "single".
    seed : int
        Generator seed.
    max_retries : int, optional
        Redraws allowed per class before giving up.
    """
    unknown = set(counts) - set(CENSUS_KEYS)
    if unknown:
        raise ParameterError(f"Unknown class types {sorted(unknown)}; expected {CENSUS_KEYS}.")
    if any(counts.get(kind, 0) < 0 for kind in CENSUS_KEYS):
        raise ParameterError(f"Class counts must be non-negative, got {counts}.")
    demand = sum(counts.get(kind, 0) * CLASS_EDGES[kind] for kind in CENSUS_KEYS)
    if demand > n * (n - 1) // 2:
        raise ParameterError(f"{demand} edges do not fit in a simple graph on {n} vertices.")
    for kind in CENSUS_KEYS:
        if counts.get(kind, 0) and n < CLASS_VERTICES[kind]:
            raise ParameterError(f"A {kind} class needs {CLASS_VERTICES[kind]} vertices, n = {n}.")

    rng = make_rng(seed)
    used = set()
    class_edges = []
    for kind in CENSUS_KEYS:
        for _ in range(counts.get(kind, 0)):
            for _attempt in range(max_retries):
                edges = _draw_class(rng, n, kind)
                if not used.intersection(edges):
                    break
            else:
                raise ParameterError(
                    f"Could not place a {kind} class after {max_retries} draws "
                    f"({len(used)} pairs used on {n} vertices); use a larger n."
                )
            used.update(edges)
            class_edges.append(edges)
    logger.debug(f"Generated random family on {n} vertices with census {counts} (seed {seed}).")
    return _build(n, class_edges, "gen_random_family")
