import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import networkx as nx
from dataclasses_json import config, dataclass_json

from .errors import ParameterError

Edge = Tuple[int, int]


def normalize_edge(u: int, v: int) -> Edge:
    """Return the pair as (min, max); rejects loops."""
    u, v = int(u), int(v)
    if u == v:
        raise ParameterError(f"Edge ({u}, {v}) is a loop; only simple graphs are supported.")
    return (u, v) if u < v else (v, u)


def fraction_field(default=None):
    return field(default=default, metadata=config(encoder=lambda x: None if x is None else str(x),
                                                  decoder=lambda x: None if x is None else Fraction(x)))


@dataclass_json
@dataclass(frozen=True)
class ColorClass:
    id: int
    edges: List[Edge]

    def __post_init__(self):
        if not self.edges:
            raise ParameterError(f"Color class {self.id} is empty.")
        normalized = [normalize_edge(*edge) for edge in self.edges]
        if len(set(normalized)) != len(normalized):
            raise ParameterError(f"Color class {self.id} lists the same vertex pair twice.")
        object.__setattr__(self, "edges", sorted(normalized))

    @property
    def size(self) -> int:
        return len(self.edges)


@dataclass_json
@dataclass(frozen=True)
class ColoredGraph:
    """
    A simple graph on vertices 0..n-1 whose edges are partitioned into color classes.

    Each vertex pair carries at most one color. Instances are immutable; the
    derived views (``color_map``, ``graph``) are computed once on first access.

    Parameters
    ----------
    n : int
        Number of vertices.
    classes : list[ColorClass]
        Nonempty, pairwise disjoint color classes with unique ids.
    """
    n: int
    classes: List[ColorClass] = field(default_factory=list)

    def __post_init__(self):
        if self.n < 0:
            raise ParameterError(f"Vertex count must be non-negative, got {self.n}.")
        seen_ids = set()
        seen_pairs = {}
        for color_class in self.classes:
            if color_class.id in seen_ids:
                raise ParameterError(f"Duplicate color class id {color_class.id}.")
            seen_ids.add(color_class.id)
            for u, v in color_class.edges:
                if u < 0 or v >= self.n:
                    raise ParameterError(
                        f"Edge ({u}, {v}) of class {color_class.id} is out of range for n={self.n}."
                    )
                if (u, v) in seen_pairs:
                    raise ParameterError(
                        f"Vertex pair ({u}, {v}) appears in classes {seen_pairs[(u, v)]} and "
                        f"{color_class.id}; colorings must be functions on a simple edge set."
                    )
                seen_pairs[(u, v)] = color_class.id
        object.__setattr__(self, "classes", list(self.classes))

    def __repr__(self) -> str:
        return f"ColoredGraph(n={self.n:,}, classes={len(self.classes):,}, edges={self.num_edges:,})"

    @property
    def num_classes(self) -> int:
        return len(self.classes)

    @property
    def num_edges(self) -> int:
        return sum(color_class.size for color_class in self.classes)

    @property
    def class_ids(self) -> List[int]:
        return [color_class.id for color_class in self.classes]

    @cached_property
    def color_map(self) -> Dict[Edge, int]:
        return {edge: color_class.id for color_class in self.classes for edge in color_class.edges}

    @cached_property
    def class_map(self) -> Dict[int, ColorClass]:
        return {color_class.id: color_class for color_class in self.classes}

    @cached_property
    def graph(self) -> nx.Graph:
        """Frozen networkx view of the underlying simple graph; edges carry a ``color`` attribute."""
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from((u, v, {"color": c}) for (u, v), c in self.color_map.items())
        return nx.freeze(g)

    def color_of(self, u: int, v: int) -> Optional[int]:
        if u == v:
            return None
        return self.color_map.get(normalize_edge(u, v))

    def edges(self) -> List[Edge]:
        return sorted(self.color_map)

    @classmethod
    def from_edge_colors(cls, n: int, colored_edges) -> "ColoredGraph":
        """Build a graph from (u, v, color) triples; classes are the color preimages."""
        by_color: Dict[int, List[Edge]] = {}
        for u, v, c in colored_edges:
            by_color.setdefault(int(c), []).append((int(u), int(v)))
        return cls(n=n, classes=[ColorClass(id=c, edges=by_color[c]) for c in sorted(by_color)])

    def to_text(self) -> str:
        lines = [f"{self.n} {self.num_edges}"]
        for color_class in self.classes:
            lines.extend(f"{u} {v} {color_class.id}" for u, v in color_class.edges)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "ColoredGraph":
        """
        Parse the "n m" + "u v c" text format.

        ``m`` is the number of edge lines that follow; blank lines and lines
        starting with ``#`` are ignored.
        """
        rows = [line.split() for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]
        if not rows or len(rows[0]) != 2:
            raise ParameterError("Colored-graph text must start with a line 'n m'.")
        try:
            n, m = int(rows[0][0]), int(rows[0][1])
            triples = [(int(u), int(v), int(c)) for u, v, c in rows[1:]]
        except ValueError as e:
            raise ParameterError(f"Malformed colored-graph line: {e}") from e
        if len(triples) != m:
            raise ParameterError(f"Header announces {m} edges but {len(triples)} edge lines follow.")
        return cls.from_edge_colors(n, triples)


def read_colored_graph(path) -> ColoredGraph:
    """Read a colored graph from the text format or its JSON mirror (chosen by content)."""
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        try:
            return ColoredGraph.from_dict(json.loads(text))
        except (KeyError, TypeError) as e:
            raise ParameterError(f"Malformed colored-graph JSON in {path}: {e}") from e
    return ColoredGraph.from_text(text)


def write_colored_graph(graph: ColoredGraph, path, fmt: str = "text"):
    with open(path, "w") as f:
        if fmt == "json":
            f.write(graph.to_json(indent=2))
        else:
            f.write(graph.to_text())


@dataclass_json
@dataclass(frozen=True)
class ColorClassProfile:
    size: int
    has_matching2: bool = False
    has_star2: bool = False
    has_triangle: bool = False
    triangle: Optional[List[int]] = None  # first triangle found, vertices ascending


@dataclass_json
@dataclass(frozen=True)
class ClassCensus:
    matching2: int = 0
    star2: int = 0
    rest: int = 0


@dataclass_json
@dataclass(frozen=True)
class ClassPartition:
    """Witness of the three class-count conditions: F_M, F_S and the remaining classes."""
    matching_ids: List[int]
    star_ids: List[int]
    rest_ids: List[int]
    xi: Fraction = fraction_field(Fraction(0))

    def census(self) -> ClassCensus:
        return ClassCensus(len(self.matching_ids), len(self.star_ids), len(self.rest_ids))


@dataclass_json
@dataclass(frozen=True)
class RainbowCycleCertificate:
    """A cycle v0..v_{l-1} with its l edges and their l pairwise distinct colors."""
    vertices: List[int]
    edges: List[Edge]
    colors: List[int]

    @property
    def length(self) -> int:
        return len(self.vertices)
