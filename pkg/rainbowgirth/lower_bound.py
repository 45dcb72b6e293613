import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from dataclasses_json import dataclass_json
from loguru import logger

from .container import ColorClass, ColoredGraph
from .errors import ParameterError
from .exact import RainbowCycleSearch, rainbow_girth_exact
from .hypergraph import (
    DenseSequence, HyperEdge, KGraph, berge_adjacency, default_family,
    intersecting_pairs, lb_probability, sample_random_tgraph, shadow_k
)
from .modes import event_a, event_b, event_c, found


@dataclass_json
@dataclass
class LBParams:
    """
    Parameters of the random-hypergraph construction.

    Parameters
    ----------
    n : int
        Vertex count.
    uniformity_t : int
        Uniformity t of the random hypergraph, t >= k.
    k : int
        Uniformity of the shadow and of the family members. Default: 2.
    L : float
        Class-count constant; L = 0 gives p = 0.
    delta_exp : float
        Exponent delta in (0, 1]; at most n^(1-delta) families are allowed.
    c : float
        Logarithmic constant; ell_max defaults to ceil(c * log(n)).
    seed : int
    ell_max : int, optional
        Largest family size eliminated; overrides ceil(c * log(n)).
    log_base : float
        Base of the logarithm in ceil(c * log(n)). Default: e.
    """
    n: int
    uniformity_t: int
    k: int = 2
    L: float = 1.0
    delta_exp: float = 1.0
    c: float = 0.01
    seed: int = 0
    ell_max: Optional[int] = None
    log_base: float = math.e

    def __post_init__(self):
        if not 2 <= self.k <= self.uniformity_t:
            raise ParameterError(f"Need 2 <= k <= t, got k={self.k}, t={self.uniformity_t}.")
        if self.n < self.uniformity_t:
            raise ParameterError(f"Need n >= t, got n={self.n}, t={self.uniformity_t}.")
        if self.L < 0:
            raise ParameterError(f"L must be non-negative, got {self.L}.")
        if not 0 < self.delta_exp <= 1:
            raise ParameterError(f"delta_exp must lie in (0, 1], got {self.delta_exp}.")
        if self.c <= 0:
            raise ParameterError(f"c must be positive, got {self.c}.")
        if self.ell_max is not None and self.ell_max < 0:
            raise ParameterError(f"ell_max must be non-negative, got {self.ell_max}.")
        if self.p > 1:
            raise ParameterError(f"p = {self.p:.4f} exceeds 1; increase n or decrease L.")
        if not self.c_admissible:
            logger.warning(
                f"c = {self.c} violates c*ln(4*2^t*t!*L) <= delta/9; "
                f"the elimination length is set by ell_max = {self.resolved_ell_max}."
            )

    @property
    def p(self) -> float:
        return lb_probability(self.n, self.uniformity_t, self.L)

    @property
    def c_admissible(self) -> bool:
        weight = 4 * 2**self.uniformity_t * math.factorial(self.uniformity_t) * self.L
        if weight <= 1:
            return True
        return self.c * math.log(weight) <= self.delta_exp / 9

    @property
    def resolved_ell_max(self) -> int:
        if self.ell_max is not None:
            return self.ell_max
        return math.ceil(self.c * math.log(self.n, self.log_base))


@dataclass_json
@dataclass
class LBInstance:
    """
    State of the construction after sampling, intersection pruning and copy elimination.

    ``classes[i]`` lists the k-subsets of ``G.edges[i]``; together they form H.
    """
    n: int
    k: int
    G0: KGraph
    G1: KGraph
    G: KGraph
    H: KGraph
    classes: Dict[int, List[HyperEdge]] = field(default_factory=dict)
    removed1: int = 0
    removed2: int = 0
    Y: int = 0
    ell_max: int = 0
    events: Dict[str, bool] = field(default_factory=dict)
    params: Optional[LBParams] = None
    min_rainbow_size: Optional[int] = None

    @property
    def all_events(self) -> bool:
        return bool(self.events) and all(self.events.values())

    def colored_graph(self) -> ColoredGraph:
        """The shadow as a colored graph, one color per t-edge (k = 2 only)."""
        if self.k != 2:
            raise ParameterError(f"Only 2-shadows are colored graphs, got k={self.k}.")
        return ColoredGraph(n=self.n, classes=[
            ColorClass(id=cid, edges=list(members)) for cid, members in sorted(self.classes.items())
        ])

    def summary(self) -> dict:
        return {
            "params": None if self.params is None else self.params.to_dict(),
            "G0": len(self.G0),
            "G1": len(self.G1),
            "G": len(self.G),
            "Y": self.Y,
            "removed1": self.removed1,
            "removed2": self.removed2,
            "classes": len(self.classes),
            "H": len(self.H),
            "ell_max": self.ell_max,
            "events": self.events,
            "min_rainbow_size": self.min_rainbow_size,
        }


def remove_intersecting(G0: KGraph) -> Tuple[KGraph, int, int]:
    """
    Prune G0 until any two edges share at most one vertex.

    Edges are scanned in canonical order and an edge is dropped when it shares
    a vertex pair with an edge already kept, so of every intersecting pair the
    later edge goes.

    Returns
    -------
    (G1, removed1, Y)
        Y is the number of unordered pairs of G0 sharing two or more vertices;
        removed1 <= Y.
    """
    Y = len(intersecting_pairs(G0.edges))
    covered = set()
    kept = []
    for edge in G0.edges:
        pairs = list(combinations(edge, 2))
        if covered.isdisjoint(pairs):
            covered.update(pairs)
            kept.append(edge)
    removed = len(G0) - len(kept)
    return KGraph(k=G0.k, edges=kept), removed, Y


def is_distinguishable(copy: Sequence[Sequence[int]], tgraph: KGraph) -> bool:
    """
    True iff every S_i lies in some edge of ``tgraph`` containing no other S_j.

    Distinct members have distinct candidate sets, so picking one candidate per
    member always gives distinct representatives.
    """
    members = [frozenset(member) for member in copy]
    edges = [frozenset(edge) for edge in tgraph.edges]
    for i, member in enumerate(members):
        others = [other for j, other in enumerate(members) if j != i]
        if not any(member <= edge and not any(other <= edge for other in others) for edge in edges):
            return False
    return True


def _class_members(tgraph: KGraph, k: int) -> Dict[int, List[HyperEdge]]:
    return {i: list(combinations(edge, k)) for i, edge in enumerate(tgraph.edges)}


def remove_distinguishable(
    G1: KGraph,
    families: List[DenseSequence],
    ell_max: int,
    k: int = 2,
) -> Tuple[KGraph, int]:
    """
    Remove t-edges until no family member of size <= ``ell_max`` has a rainbow copy in the shadow.

    After intersection pruning every k-set lies in exactly one t-edge, so a
    distinguishable copy is the same as a rainbow copy under the coloring by
    t-edges. Copies are found as rainbow (Berge) cycles, shortest first; the
    t-edge covering the first member of each copy found is removed and the
    search resumes from the same start vertex.

    Returns
    -------
    (G, removed2)
    """
    if any(family.k != k for family in families):
        raise ParameterError(f"All families must be {k}-uniform.")
    lengths = sorted({ell for family in families for ell in range(family.first_length, ell_max + 1)})
    if not lengths or not G1.edges:
        return KGraph(k=G1.k, edges=list(G1.edges)), 0

    members = _class_members(G1, k)
    search = RainbowCycleSearch(berge_adjacency(members.items()))
    removed = set()
    for length in lengths:
        start = 0
        while True:
            hit = search.find(length, start)
            if hit is None:
                break
            vertices, colors, _ = hit
            color = colors[0]
            search.remove_color(color, combinations(G1.edges[color], 2))
            removed.add(color)
            start = vertices[0]
        logger.debug(f"Copies of length {length} eliminated; {len(removed)} t-edges removed so far.")
    kept = [edge for i, edge in enumerate(G1.edges) if i not in removed]
    return KGraph(k=G1.k, edges=kept), len(removed)


def instance_from_tgraph(n: int, tgraph: KGraph, k: int = 2) -> LBInstance:
    """
    Shadow and class coloring of a given t-graph, without alteration.

    Raises
    ------
    ParameterError
        Two edges share k or more vertices, so the classes would overlap.
    """
    if k > tgraph.k:
        raise ParameterError(f"Cannot take the {k}-shadow of a {tgraph.k}-graph.")
    if k == 2:
        overlapping = intersecting_pairs(tgraph.edges)
    else:
        members = [set(edge) for edge in tgraph.edges]
        overlapping = [(i, j) for i, j in combinations(range(len(members)), 2) if len(members[i] & members[j]) >= k]
    if overlapping:
        i, j = overlapping[0]
        raise ParameterError(
            f"Edges {tgraph.edges[i]} and {tgraph.edges[j]} share {k} or more vertices; classes would overlap."
        )
    return LBInstance(
        n=n, k=k, G0=tgraph, G1=tgraph, G=tgraph,
        H=shadow_k(tgraph, k), classes=_class_members(tgraph, k),
    )


def build_lb_instance(params: LBParams, families: Optional[List[DenseSequence]] = None) -> LBInstance:
    """
    Sample G0, prune intersecting pairs, eliminate short rainbow copies and color the shadow.

    Events: A = {|G0| >= 3Ln and G0 nonempty}, B = {Y <= Ln}, C = {removed2 <= Ln}.
    Failed events are recorded, never raised.
    """
    n, t, k = params.n, params.uniformity_t, params.k
    families = families or default_family(k)
    if len(families) > max(1, n ** (1 - params.delta_exp)):
        raise ParameterError(f"{len(families)} families exceed n^(1-delta) = {n ** (1 - params.delta_exp):.2f}.")
    ell_max = params.resolved_ell_max

    G0 = sample_random_tgraph(n, t, params.p, params.seed)
    G1, removed1, Y = remove_intersecting(G0)
    G, removed2 = remove_distinguishable(G1, families, ell_max, k)
    logger.info(
        f"n={n}, t={t}, L={params.L}: |G0|={len(G0):,}, Y={Y:,}, removed1={removed1:,}, "
        f"removed2={removed2:,}, |G|={len(G):,} (ell_max={ell_max})."
    )
    budget = params.L * n
    instance = instance_from_tgraph(n, G, k)
    instance.G0, instance.G1 = G0, G1
    instance.removed1, instance.removed2, instance.Y = removed1, removed2, Y
    instance.ell_max = ell_max
    instance.params = params
    instance.events = {
        event_a: len(G0) > 0 and len(G0) >= 3 * budget,
        event_b: Y <= budget,
        event_c: removed2 <= budget,
    }
    return instance


def min_rainbow_family_size(
    instance: LBInstance,
    families: Optional[List[DenseSequence]] = None,
    search_cap: int = 8,
) -> Optional[int]:
    """
    Smallest l <= ``search_cap`` such that some family member F_l has a rainbow copy in H.

    The search is built from the instance's classes alone, independently of
    the elimination loop. For k = 2 it is the exact rainbow girth; for k >= 3
    a rainbow Berge-cycle search. Returns None when nothing is found up to
    the cap.
    """
    families = families or default_family(instance.k)
    first = min(family.first_length for family in families)
    if search_cap < first or not instance.classes:
        return None
    if instance.k == 2:
        result = rainbow_girth_exact(instance.colored_graph(), length_cutoff=max(search_cap, 3))
        return result.length if result.status == found else None
    search = RainbowCycleSearch(berge_adjacency(instance.classes.items()))
    for length in range(first, search_cap + 1):
        if search.find(length) is not None:
            return length
    return None
