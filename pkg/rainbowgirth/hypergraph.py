"""
k-uniform hypergraphs, dense sequences, shadows and random t-graphs.

A t-graph is a ``KGraph`` whose uniformity is t; edges are stored as sorted
vertex tuples in ascending order, which is the canonical edge order used by
every removal rule.
"""
import math
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable, List, Tuple

import numpy as np
from dataclasses_json import dataclass_json
from loguru import logger

from .errors import ParameterError
from .modes import TGRAPH_ENUMERATION_LIMIT, berge, cycles
from .seeding import make_rng

HyperEdge = Tuple[int, ...]


@dataclass_json
@dataclass
class KGraph:
    k: int
    edges: List[HyperEdge] = field(default_factory=list)

    def __post_init__(self):
        if self.k < 1:
            raise ParameterError(f"Uniformity must be positive, got {self.k}.")
        normalized = set()
        for edge in self.edges:
            edge = tuple(sorted(int(v) for v in edge))
            if len(edge) != self.k or len(set(edge)) != self.k:
                raise ParameterError(f"{edge} is not a set of {self.k} distinct vertices.")
            normalized.add(edge)
        self.edges = sorted(normalized)

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> List[int]:
        return sorted({v for edge in self.edges for v in edge})

    @property
    def density(self) -> float:
        """|F| / |V(F)|, 0 for the empty hypergraph."""
        vertex_count = len(self.vertices)
        return len(self.edges) / vertex_count if vertex_count else 0.0


@dataclass_json
@dataclass(frozen=True)
class DenseSequence:
    """
    A sequence (F_l) of k-graphs with |F_l| = l and |V(F_l)| <= l(k-1).

    ``cycles`` is the graph cycle C_l (k = 2). ``berge`` is the loose Berge
    cycle: l edges on l(k-1) vertices, consecutive edges sharing one vertex.
    For k = 2 both kinds are C_l.
    """
    k: int
    kind: str = cycles

    def __post_init__(self):
        if self.kind not in (cycles, berge):
            raise ParameterError(f"Unknown family kind {self.kind!r}.")
        if self.k < 2:
            raise ParameterError(f"Dense sequences need k >= 2, got {self.k}.")
        if self.kind == cycles and self.k != 2:
            raise ParameterError(f"Graph cycles are 2-uniform; use {berge!r} for k = {self.k}.")

    @property
    def first_length(self) -> int:
        """Smallest l with a member: 3 for graphs, 2 for k >= 3."""
        return 3 if self.k == 2 else 2

    def member(self, ell: int) -> KGraph:
        if ell < self.first_length:
            raise ParameterError(f"{self.kind} with k = {self.k} starts at length {self.first_length}, got {ell}.")
        step = self.k - 1
        size = ell * step
        edges = [tuple((i * step + j) % size for j in range(self.k)) for i in range(ell)]
        return KGraph(k=self.k, edges=edges)


def default_family(k: int) -> List[DenseSequence]:
    return [DenseSequence(k=k, kind=cycles if k == 2 else berge)]


def shadow_k(tgraph: KGraph, k: int) -> KGraph:
    """All k-subsets of edges of ``tgraph``, deduplicated."""
    if k > tgraph.k:
        raise ParameterError(f"Cannot take the {k}-shadow of a {tgraph.k}-graph.")
    if k < 1:
        raise ParameterError(f"Shadow uniformity must be positive, got {k}.")
    return KGraph(k=k, edges=[subset for edge in tgraph.edges for subset in combinations(edge, k)])


def lb_probability(n: int, t: int, L: float) -> float:
    """p = 4 * 2^t * t! * L / n^(t-1)."""
    return 4 * 2**t * math.factorial(t) * L / n ** (t - 1)


def sample_random_tgraph(
    n: int,
    t: int,
    p: float,
    seed: int,
    enumeration_limit: int = TGRAPH_ENUMERATION_LIMIT,
) -> KGraph:
    """
    Binomial random t-graph on n vertices: each t-set is kept with probability p.

    Up to ``enumeration_limit`` candidate t-sets one coin per t-set is drawn in
    lexicographic order. Above it the edge count is drawn from
    Binomial(C(n, t), p) and that many distinct t-sets are sampled uniformly,
    which has the same distribution.

    Parameters
    ----------
    n : int
        Vertex count, at least t.
    t : int
        Uniformity.
    p : float
        Edge probability in [0, 1].
    seed : int
    """
    if t < 1 or n < t:
        raise ParameterError(f"Need 1 <= t <= n, got n={n}, t={t}.")
    if not 0 <= p <= 1:
        raise ParameterError(f"p must lie in [0, 1], got {p}.")
    rng = make_rng(seed)
    total = math.comb(n, t)
    if total <= enumeration_limit:
        keep = rng.random(total) < p
        edges = [edge for edge, kept in zip(combinations(range(n), t), keep) if kept]
        return KGraph(k=t, edges=edges)

    count = int(rng.binomial(total, p))
    if count > total // 2:
        raise ParameterError(
            f"{count} of {total} t-sets requested; rejection sampling needs p well below 1/2 "
            f"at this size, or a larger enumeration_limit."
        )
    chosen = set()
    while len(chosen) < count:
        batch = min(count - len(chosen), 4096)
        draws = np.argsort(rng.random((batch, n)), axis=1)[:, :t]
        chosen.update(tuple(sorted(row)) for row in draws.tolist())
    logger.debug(f"Sampled {count:,} of C({n}, {t}) = {total:,} t-sets by rejection.")
    return KGraph(k=t, edges=list(chosen))


def intersecting_pairs(edges: List[HyperEdge]) -> List[Tuple[int, int]]:
    """Index pairs (i, j), i < j, of edges sharing at least two vertices; each pair once."""
    by_pair = {}
    for index, edge in enumerate(edges):
        for pair in combinations(edge, 2):
            by_pair.setdefault(pair, []).append(index)
    found = set()
    for indices in by_pair.values():
        found.update(combinations(indices, 2))
    return sorted(found)


def read_tgraph(path) -> Tuple[int, KGraph]:
    """Read the "n t" header followed by one t-edge per line."""
    rows = [
        line.split() for line in Path(path).read_text().splitlines()
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not rows or len(rows[0]) != 2:
        raise ParameterError(f"{path}: hypergraph text must start with a line 'n t'.")
    try:
        n, t = int(rows[0][0]), int(rows[0][1])
        edges = [tuple(int(v) for v in row) for row in rows[1:]]
    except ValueError as e:
        raise ParameterError(f"{path}: malformed hypergraph line: {e}") from e
    tgraph = KGraph(k=t, edges=edges)
    if any(v < 0 or v >= n for v in tgraph.vertices):
        raise ParameterError(f"{path}: vertex out of range for n={n}.")
    return n, tgraph


def write_tgraph(n: int, tgraph: KGraph, path):
    with open(path, "w") as f:
        f.write(f"{n} {tgraph.k}\n")
        for edge in tgraph.edges:
            f.write(" ".join(str(v) for v in edge) + "\n")


def berge_adjacency(classes: Iterable[Tuple[int, Iterable[HyperEdge]]]):
    """
    Vertex adjacency for rainbow Berge-cycle search.

    Two vertices are joined in color i when some k-set of class i contains
    both; the label is the smallest such k-set. For k = 2 this is the colored
    graph itself.
    """
    adjacency = {}
    for color, members in classes:
        for member in sorted(members):
            for u, w in combinations(member, 2):
                adjacency.setdefault(u, {}).setdefault(w, {}).setdefault(color, member)
                adjacency.setdefault(w, {}).setdefault(u, {}).setdefault(color, member)
    return adjacency
