import math
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

import networkx as nx
import numpy as np
from dataclasses_json import dataclass_json
from loguru import logger

from .container import ColoredGraph, Edge, RainbowCycleCertificate
from .core import certificate_from_cycle
from .errors import ParameterError
from .modes import canonical_first, found, infinite, none_below_cutoff, seeded_uniform
from .seeding import make_rng


def shortest_cycle(graph: nx.Graph) -> Tuple[float, Optional[List[int]]]:
    """
    Exact shortest cycle of a simple graph.

    Only the 2-core can carry cycles, so it is extracted first. A BFS from
    every remaining vertex closes a cycle at each non-tree edge; the minimum
    over all roots is the girth, and the walk attaining it is a simple cycle.
    Each BFS stops once its depth cannot beat the best cycle so far.

    Returns
    -------
    (length, vertices)
        ``(math.inf, None)`` for forests.
    """
    core = nx.k_core(graph, 2)
    best, best_cycle = math.inf, None
    adjacency = {u: sorted(core.adj[u]) for u in core.nodes}
    for root in sorted(adjacency):
        dist = {root: 0}
        parent = {root: None}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] >= best:
                break
            for w in adjacency[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    length = dist[u] + dist[w] + 1
                    if length < best:
                        best = length
                        best_cycle = _close_walk(parent, u, w)
        if best == 3:
            break
    return best, best_cycle


def _close_walk(parent: Dict[int, Optional[int]], u: int, w: int) -> List[int]:
    def to_root(x):
        path = []
        while x is not None:
            path.append(x)
            x = parent[x]
        return path
    up = to_root(u)
    return list(reversed(up)) + to_root(w)[:-1]


def girth(vertex_count: int, edges: Iterable[Edge]) -> float:
    """Length of a shortest cycle, ``math.inf`` for forests."""
    graph = nx.Graph()
    graph.add_nodes_from(range(vertex_count))
    graph.add_edges_from(edges)
    return shortest_cycle(graph)[0]


class RainbowCycleSearch:
    """
    Exhaustive search for rainbow cycles of a prescribed length.

    The adjacency maps each vertex to its neighbors and, per neighbor, to the
    colors available on that pair with a label for each (the edge itself for
    graphs, the hyperedge for Berge cycles). A cycle is reported in canonical
    form: it starts at its smallest vertex and its second vertex is smaller
    than its last. Starts and neighbors are scanned in ascending order, so the
    first hit is the lexicographically smallest canonical cycle.

    The adjacency may shrink between calls through ``remove_color``; distance
    tables cached before a removal remain valid lower bounds.
    """
    def __init__(self, adjacency: Dict[int, Dict[int, Dict[int, object]]]):
        self.adjacency = adjacency
        self._distances: Dict[int, Dict[int, int]] = {}
        self.expanded = 0

    @classmethod
    def from_colored_graph(cls, graph: ColoredGraph) -> "RainbowCycleSearch":
        adjacency = {u: {} for u in range(graph.n)}
        for (u, v), color in graph.color_map.items():
            adjacency[u][v] = {color: (u, v)}
            adjacency[v][u] = {color: (u, v)}
        return cls(adjacency)

    def remove_color(self, color: int, pairs: Iterable[Edge]):
        """Drop ``color`` from every listed vertex pair."""
        for u, v in pairs:
            for a, b in ((u, v), (v, u)):
                labels = self.adjacency.get(a, {}).get(b)
                if labels is not None and color in labels:
                    del labels[color]
                    if not labels:
                        del self.adjacency[a][b]

    def _distances_from(self, start: int) -> Dict[int, int]:
        if start not in self._distances:
            dist = {start: 0}
            queue = deque([start])
            while queue:
                u = queue.popleft()
                for w in self.adjacency[u]:
                    if w > start and w not in dist:
                        dist[w] = dist[u] + 1
                        queue.append(w)
            self._distances[start] = dist
        return self._distances[start]

    def find(self, length: int, start: int = 0):
        """
        First canonical rainbow cycle of exactly ``length`` whose smallest vertex is >= ``start``.

        Returns
        -------
        tuple or None
            ``(vertices, colors, labels)`` where ``colors[i]`` is the color of
            the step from ``vertices[i]`` to ``vertices[i + 1]`` (cyclically).
        """
        if length < 2:
            raise ParameterError(f"Cycle length must be at least 2, got {length}.")
        for v in sorted(u for u in self.adjacency if u >= start):
            hit = self.find_from(v, length)
            if hit is not None:
                return hit
        return None

    def find_from(self, v: int, length: int):
        adjacency = self.adjacency
        if length == 2:
            for w in sorted(adjacency[v]):
                colors = sorted(adjacency[v][w])
                if w > v and len(colors) >= 2:
                    return [v, w], colors[:2], [adjacency[v][w][c] for c in colors[:2]]
            return None

        if not any(w > v for w in adjacency[v]):
            return None
        dist = self._distances_from(v)
        path, colors = [v], []
        on_path = {v}

        def close(u):
            # path[1] < last vertex fixes the direction
            if u <= path[1]:
                return None
            for c in sorted(adjacency[u].get(v, ())):
                if c not in colors:
                    return c
            return None

        def extend(u, remaining):
            self.expanded += 1
            if remaining == 1:
                c = close(u)
                if c is None:
                    return False
                colors.append(c)
                return True
            if remaining == 2:
                candidates = sorted(
                    w for w in adjacency[u].keys() & adjacency[v].keys()
                    if w > v and w not in on_path and (len(path) == 1 or w > path[1])
                )
            else:
                candidates = [
                    w for w in sorted(adjacency[u])
                    if w > v and w not in on_path and dist.get(w, math.inf) <= remaining - 1
                ]
            for w in candidates:
                for c in sorted(adjacency[u][w]):
                    if c in colors:
                        continue
                    path.append(w)
                    on_path.add(w)
                    colors.append(c)
                    if extend(w, remaining - 1):
                        return True
                    colors.pop()
                    on_path.discard(w)
                    path.pop()
            return False

        if extend(v, length):
            labels = [
                adjacency[path[i]][path[(i + 1) % length]][colors[i]] for i in range(length)
            ]
            return list(path), list(colors), labels
        return None


@dataclass_json
@dataclass
class RainbowGirthResult:
    status: str
    length: Optional[int] = None
    certificate: Optional[RainbowCycleCertificate] = None
    cutoff: Optional[int] = None

    @property
    def value(self) -> float:
        """Length as a number: the found length, or infinity when no rainbow cycle exists."""
        if self.status == found:
            return self.length
        return math.inf


def rainbow_girth_exact(graph: ColoredGraph, length_cutoff: Optional[int] = None) -> RainbowGirthResult:
    """
    Exact rainbow girth by iterative deepening over cycle lengths 3, 4, ...

    Parameters
    ----------
    graph : ColoredGraph
    length_cutoff : int, optional
        Largest length examined, at least 3. Defaults to max(n, 3), which makes the answer fully exact.

    Returns
    -------
    RainbowGirthResult
        ``found`` with the lexicographically smallest shortest canonical cycle;
        ``infinite`` when every possible length was ruled out; otherwise
        ``none_below_cutoff``.
    """
    if length_cutoff is None:
        length_cutoff = max(graph.n, 3)
    if length_cutoff < 3:
        raise ParameterError(f"length_cutoff must be at least 3, got {length_cutoff}.")
    # a rainbow cycle has at most n vertices and at most one edge per class
    longest = min(graph.n, graph.num_classes)
    limit = min(length_cutoff, longest)
    if graph.n < 3 or graph.num_edges < 3 or nx.is_forest(graph.graph):
        return RainbowGirthResult(status=infinite, cutoff=length_cutoff)

    search = RainbowCycleSearch.from_colored_graph(graph)
    for length in range(3, limit + 1):
        hit = search.find(length)
        if hit is not None:
            vertices, _, _ = hit
            certificate = certificate_from_cycle(graph, vertices)
            logger.debug(f"Rainbow cycle of length {length} found after {search.expanded:,} expansions.")
            return RainbowGirthResult(status=found, length=length, certificate=certificate, cutoff=length_cutoff)
    status = infinite if length_cutoff >= longest else none_below_cutoff
    return RainbowGirthResult(status=status, cutoff=length_cutoff)


@dataclass_json
@dataclass
class RepresentativeResult:
    edges: List[Edge] = field(default_factory=list)
    colors: List[int] = field(default_factory=list)
    girth: Optional[int] = None  # None when H is a forest
    certificate: Optional[RainbowCycleCertificate] = None


def choose_edge(candidates: List[Edge], chooser: str, rng: Optional[np.random.Generator]) -> Edge:
    if chooser == canonical_first:
        return candidates[0]
    if chooser == seeded_uniform:
        return candidates[int(rng.integers(len(candidates)))]
    raise ParameterError(f"Unknown chooser {chooser!r}.")


def representative_girth(graph: ColoredGraph, chooser: str = canonical_first, seed: Optional[int] = None) -> RepresentativeResult:
    """
    Girth of H, the graph of one chosen edge per class.

    Classes are disjoint, so every cycle of H is rainbow and its length is an
    upper bound on the rainbow girth of ``graph``.
    """
    rng = make_rng(seed) if chooser == seeded_uniform else None
    edges = [choose_edge(color_class.edges, chooser, rng) for color_class in graph.classes]
    colors = [color_class.id for color_class in graph.classes]
    h = nx.Graph()
    h.add_nodes_from(range(graph.n))
    h.add_edges_from(edges)
    length, cycle = shortest_cycle(h)
    result = RepresentativeResult(edges=edges, colors=colors)
    if cycle is not None:
        result.girth = int(length)
        result.certificate = certificate_from_cycle(graph, cycle)
    return result
