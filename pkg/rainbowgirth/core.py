import math
from fractions import Fraction
from itertools import combinations
from typing import Iterable, List, Optional, Sequence

from loguru import logger

from .container import (
    ClassPartition, ColoredGraph, ColorClassProfile, Edge,
    RainbowCycleCertificate, normalize_edge
)
from .errors import InfeasibleHypothesisError, ParameterError
from .schedule import derive_schedule


def classify_class(edges: Iterable[Edge]) -> ColorClassProfile:
    """
    Compute the structural profile of one color class.

    Every pair of edges is inspected; a triangle is detected by closing each
    pair of edges that share a vertex.

    Parameters
    ----------
    edges : iterable of (int, int)
        The edges of the class.

    Returns
    -------
    ColorClassProfile
    """
    edges = sorted({normalize_edge(u, v) for u, v in edges})
    if not edges:
        raise ParameterError("Cannot classify an empty color class.")
    edge_set = set(edges)
    has_matching2 = has_star2 = False
    triangle = None
    for (a, b), (c, d) in combinations(edges, 2):
        shared = {a, b} & {c, d}
        if not shared:
            has_matching2 = True
            continue
        has_star2 = True
        if triangle is None:
            x, y = sorted({a, b, c, d} - shared)
            if (x, y) in edge_set:
                triangle = sorted({a, b, c, d})
    return ColorClassProfile(
        size=len(edges),
        has_matching2=has_matching2,
        has_star2=has_star2,
        has_triangle=triangle is not None,
        triangle=triangle,
    )


def profile_classes(graph: ColoredGraph) -> dict[int, ColorClassProfile]:
    return {color_class.id: classify_class(color_class.edges) for color_class in graph.classes}


def excess(vertex_count: int, edge_count: int) -> int:
    """|E| - |V|; may be negative."""
    if vertex_count < 0 or edge_count < 0:
        raise ParameterError(f"Counts must be non-negative, got {vertex_count} vertices and {edge_count} edges.")
    return edge_count - vertex_count


def default_xi(alpha: Fraction, beta: Fraction) -> Fraction:
    """The slack xi of the proof schedule, or 0 when (alpha, beta) has no schedule."""
    if 2 * alpha + beta > 1 and max(alpha, beta) <= 1:
        return derive_schedule(alpha, beta).xi
    return Fraction(0)


def partition_classes(
    graph: ColoredGraph,
    alpha,
    beta,
    xi: Optional[Fraction] = None,
) -> ClassPartition:
    """
    Select F_M and F_S witnessing the class-count conditions.

    The conditions are |F_M| >= (alpha - xi) n, |F_S| >= (beta - xi) n and
    |F \\ (F_M u F_S)| >= (1 - alpha - beta - xi) n, where n is the vertex
    count. F_M takes exactly as many classes as required, preferring those
    with a 2-matching but no 2-star; F_S then prefers classes with a 2-star
    but no 2-matching before the mixed ones left over. Ties go to the lowest
    ids. A witness is found whenever one exists. Everything else is left over.

    Parameters
    ----------
    graph : ColoredGraph
    alpha, beta : Fraction or str or int
        Non-negative rationals.
    xi : Fraction, optional
        Slack; defaults to the schedule's xi, or 0 at and below the threshold.

    Returns
    -------
    ClassPartition

    Raises
    ------
    InfeasibleHypothesisError
        With ``condition`` set to "F_M", "F_S" or "F_rest".
    """
    alpha, beta = Fraction(alpha), Fraction(beta)
    if alpha < 0 or beta < 0:
        raise ParameterError(f"alpha and beta must be non-negative, got {alpha}, {beta}.")
    if xi is None:
        xi = default_xi(alpha, beta)
    n = graph.n
    profiles = profile_classes(graph)

    need_m = max(0, math.ceil((alpha - xi) * n))
    need_s = max(0, math.ceil((beta - xi) * n))
    need_rest = max(0, math.ceil((1 - alpha - beta - xi) * n))

    matching_pool = [cid for cid in sorted(profiles) if profiles[cid].has_matching2]
    if len(matching_pool) < need_m:
        raise InfeasibleHypothesisError(
            "F_M",
            f"Need {need_m} classes containing a 2-matching, found {len(matching_pool)}.",
            {"required": need_m, "available": len(matching_pool)},
        )
    # classes with both a 2-matching and a 2-star go to F_M only after the pure ones
    pure_matching = [cid for cid in matching_pool if not profiles[cid].has_star2]
    mixed = [cid for cid in matching_pool if profiles[cid].has_star2]
    matching_ids = sorted((pure_matching + mixed)[:need_m])
    taken = set(matching_ids)

    pure_star = [cid for cid in sorted(profiles) if profiles[cid].has_star2 and not profiles[cid].has_matching2]
    star_pool = pure_star + [cid for cid in mixed if cid not in taken]
    if len(star_pool) < need_s:
        raise InfeasibleHypothesisError(
            "F_S",
            f"Need {need_s} classes containing a 2-star outside F_M, found {len(star_pool)}.",
            {"required": need_s, "available": len(star_pool)},
        )
    star_ids = sorted(star_pool[:need_s])
    taken.update(star_ids)

    rest_ids = [cid for cid in sorted(profiles) if cid not in taken]
    if len(rest_ids) < need_rest:
        raise InfeasibleHypothesisError(
            "F_rest",
            f"Need {need_rest} remaining classes, found {len(rest_ids)}.",
            {"required": need_rest, "available": len(rest_ids)},
        )
    logger.debug(
        f"Partitioned {graph.num_classes} classes: |F_M|={len(matching_ids)}, "
        f"|F_S|={len(star_ids)}, |rest|={len(rest_ids)} (xi={xi})."
    )
    return ClassPartition(matching_ids=matching_ids, star_ids=star_ids, rest_ids=rest_ids, xi=xi)


def certificate_from_cycle(graph: ColoredGraph, vertices: Sequence[int]) -> RainbowCycleCertificate:
    """Attach edges and colors from ``graph`` to a cyclic vertex sequence."""
    vertices = [int(v) for v in vertices]
    edges = [normalize_edge(vertices[i], vertices[(i + 1) % len(vertices)]) for i in range(len(vertices))]
    colors = []
    for edge in edges:
        color = graph.color_map.get(edge)
        if color is None:
            raise ParameterError(f"Cycle uses {edge}, which is not an edge of the graph.")
        colors.append(color)
    return RainbowCycleCertificate(vertices=vertices, edges=edges, colors=colors)


def verify_certificate(graph: ColoredGraph, cert: RainbowCycleCertificate) -> bool:
    """True iff ``cert`` is a rainbow cycle of ``graph``; never raises."""
    try:
        vertices: List[int] = [int(v) for v in cert.vertices]
        length = len(vertices)
        if length < 3 or len(cert.edges) != length or len(cert.colors) != length:
            return False
        if len(set(vertices)) != length or any(v < 0 or v >= graph.n for v in vertices):
            return False
        if len(set(cert.colors)) != length:
            return False
        for i in range(length):
            edge = normalize_edge(vertices[i], vertices[(i + 1) % length])
            if normalize_edge(*cert.edges[i]) != edge:
                return False
            if graph.color_map.get(edge) != cert.colors[i]:
                return False
        return True
    except (TypeError, ValueError):
        return False
