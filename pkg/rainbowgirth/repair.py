from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

import networkx as nx
from loguru import logger

from .bounds import bs_bound
from .container import ColoredGraph, ColorClassProfile, Edge, normalize_edge
from .core import certificate_from_cycle, excess, profile_classes
from .errors import InfeasibleHypothesisError, ParameterError, RainbowGirthError, TrialBudgetExhausted
from .exact import shortest_cycle
from .modes import (
    DEFAULT_CHOOSER, DEFAULT_MAX_TRIALS, branch_matching, branch_sampling,
    branch_triangle, nonstar, nonstarex
)
from .sampling import FinderResult, run_trials
from .schedule import derive_nonstarex_schedule, derive_schedule


def _require_class_sizes(graph: ColoredGraph):
    small = [color_class.id for color_class in graph.classes if color_class.size < 2]
    if small:
        raise InfeasibleHypothesisError(
            "class_size",
            f"Every color class needs at least two edges; class {small[0]} has one "
            f"({len(small)} such classes).",
            {"class_ids": small[:20], "count": len(small)},
        )


def triangle_excess_graph(
    graph: ColoredGraph,
    profiles: Dict[int, ColorClassProfile],
    triangle_ids: List[int],
) -> Tuple[nx.Graph, Dict[int, Edge]]:
    """
    Two edges of one triangle from each listed class, one edge from every other class.

    For a triangle a < b < c the kept edges are ab and bc; ac is returned as
    the class's third edge. Other classes contribute their smallest edge.

    Returns
    -------
    (F, third_edges)
        ``F`` carries a ``color`` attribute per edge.
    """
    chosen = set(triangle_ids)
    f = nx.Graph()
    f.add_nodes_from(range(graph.n))
    third_edges = {}
    for color_class in graph.classes:
        if color_class.id in chosen:
            a, b, c = profiles[color_class.id].triangle
            f.add_edge(a, b, color=color_class.id)
            f.add_edge(b, c, color=color_class.id)
            third_edges[color_class.id] = (a, c)
        else:
            f.add_edge(*color_class.edges[0], color=color_class.id)
    return f, third_edges


def repair_cycle(
    cycle: List[int],
    color_of: Callable[[int, int], int],
    third_edges: Dict[int, Edge],
) -> Tuple[List[int], List[int]]:
    """
    Shorten a cycle until it is rainbow.

    Two edges of one color are always consecutive halves a-b, b-c of a
    triangle; they are replaced by its third edge a-c, dropping b.

    Returns
    -------
    (cycle, lengths)
        The rainbow cycle and the cycle length before every repair followed by the final length.
    """
    cycle = list(cycle)
    lengths = [len(cycle)]
    while True:
        size = len(cycle)
        colors = [color_of(cycle[i], cycle[(i + 1) % size]) for i in range(size)]
        if len(set(colors)) == size:
            return cycle, lengths
        repeated = next((i for i in range(size) if colors[i] == colors[(i + 1) % size]), None)
        if repeated is None:
            raise RainbowGirthError(f"Cycle {cycle} repeats a color on non-adjacent edges.")
        a, b, c = cycle[repeated], cycle[(repeated + 1) % size], cycle[(repeated + 2) % size]
        if normalize_edge(a, c) != normalize_edge(*third_edges[colors[repeated]]):
            raise RainbowGirthError(f"Edges {a}-{b}-{c} of color {colors[repeated]} are not two triangle sides.")
        cycle.pop((repeated + 1) % size)
        lengths.append(len(cycle))


def _triangle_branch(graph, profiles, triangle_ids, mode) -> FinderResult:
    f, third_edges = triangle_excess_graph(graph, profiles, triangle_ids)
    excess_f = excess(graph.n, f.number_of_edges())
    logger.info(f"Triangle branch: F has {f.number_of_edges():,} edges, excess {excess_f}.")
    length, cycle = shortest_cycle(f)
    if cycle is None:
        raise TrialBudgetExhausted("F is a forest; no cycle to repair.")
    cycle, lengths = repair_cycle(cycle, graph.color_of, third_edges)
    logger.info(f"Repaired a cycle of length {lengths[0]} in {len(lengths) - 1} steps to length {lengths[-1]}.")
    result = FinderResult(
        mode=mode,
        branch=branch_triangle,
        certificate=certificate_from_cycle(graph, cycle),
        repairs=lengths,
        parameters={"triangle_classes": len(triangle_ids), "excess_F": excess_f},
    )
    if excess_f >= 2 and graph.n >= 4:
        result.bound = bs_bound(graph.n, excess_f)
        result.bound_satisfied = lengths[0] <= result.bound
    return result


def triangle_repair_find(
    graph: ColoredGraph,
    alpha,
    max_trials: int = DEFAULT_MAX_TRIALS,
    seed: int = 0,
    chooser: str = DEFAULT_CHOOSER,
) -> FinderResult:
    """
    Short rainbow cycle when every class has two edges and alpha*n classes are non-stars.

    If at least alpha*n/2 classes contain a 2-matching, vertex sampling runs
    with the schedule of (alpha/2, 1 - alpha/2). Otherwise at least alpha*n/2 classes
    contain a triangle: F takes two sides of one triangle from each of them
    and one edge from every other class, and a shortest cycle of F is
    repaired into a rainbow one.

    Parameters
    ----------
    graph : ColoredGraph
    alpha : Fraction or str
        Positive fraction of non-star classes.
    max_trials, seed, chooser
        Passed to the sampling finder in the matching branch.
    """
    alpha = Fraction(alpha)
    if not 0 < alpha <= 1:
        raise ParameterError(f"alpha must lie in (0, 1], got {alpha}.")
    n = graph.n
    _require_class_sizes(graph)
    profiles = profile_classes(graph)
    nonstar_ids = [cid for cid, prof in profiles.items() if prof.has_matching2 or prof.has_triangle]
    if len(nonstar_ids) < alpha * n:
        raise InfeasibleHypothesisError(
            "census",
            f"Need {alpha * n} classes with a 2-matching or a triangle, found {len(nonstar_ids)}.",
            {"required": str(alpha * n), "available": len(nonstar_ids)},
        )
    matching_ids = [cid for cid in nonstar_ids if profiles[cid].has_matching2]
    if len(matching_ids) >= alpha * n / 2:
        # every other class has two edges, which survive at least as often as a 2-star
        schedule = derive_schedule(alpha / 2, 1 - alpha / 2)
        logger.info(f"Matching branch: {len(matching_ids)} classes contain a 2-matching, p = {schedule.p}.")
        best, log = run_trials(graph, schedule.p_float, max_trials, seed, chooser)
        if best is None:
            raise TrialBudgetExhausted(f"No cycle in {max_trials} trials.", trials=log)
        return FinderResult(
            mode=nonstar, branch=branch_matching, certificate=best, trials=log,
            parameters={"alpha": str(alpha), "p": str(schedule.p), "seed": seed, "max_trials": max_trials},
        )
    triangle_ids = sorted(cid for cid in nonstar_ids if profiles[cid].has_triangle)
    result = _triangle_branch(graph, profiles, triangle_ids, nonstar)
    result.parameters["alpha"] = str(alpha)
    return result


def nonstarex_find(
    graph: ColoredGraph,
    c: float,
    L: float,
    max_trials: int = DEFAULT_MAX_TRIALS,
    seed: int = 0,
    chooser: str = DEFAULT_CHOOSER,
    allow_small_L: bool = False,
    A: Optional[int] = None,
) -> FinderResult:
    """
    Short rainbow cycle with the explicit bound 2 log2(k)/k * n, k = (L/100) n^(1-2c).

    Needs classes of size at least two and L*n^(1-c) classes containing a
    2-matching or a triangle. With at least (L/2) n^(1-c) triangle classes the
    triangle construction is used; otherwise the matching classes drive a
    sampling run with t = n^(-c)/10. The certificate length is compared
    against the bound and reported, never altered.

    Parameters
    ----------
    c : float
        Exponent in [0, 1/2].
    L : float
        Class-count constant.
    allow_small_L : bool, optional
        Run with L below L0 = max(100A, 1000), logging a warning.
    A : int, optional
        Calibrated constant, defaults to ``calibrate_A()``.
    """
    n = graph.n
    _require_class_sizes(graph)
    schedule = derive_nonstarex_schedule(n, c, L, A=A, strict=not allow_small_L)
    if L < schedule.L0:
        logger.warning(f"L = {L} is below L0 = {schedule.L0}; the explicit bound is not guaranteed.")
    profiles = profile_classes(graph)
    nonstar_ids = [cid for cid, prof in profiles.items() if prof.has_matching2 or prof.has_triangle]
    if len(nonstar_ids) < schedule.class_requirement:
        raise InfeasibleHypothesisError(
            "census",
            f"Need {schedule.class_requirement:.1f} classes with a 2-matching or a triangle, "
            f"found {len(nonstar_ids)}.",
            {"required": schedule.class_requirement, "available": len(nonstar_ids)},
        )
    triangle_ids = sorted(cid for cid in nonstar_ids if profiles[cid].has_triangle)
    bound = schedule.theorem_bound()
    if len(triangle_ids) >= schedule.branch_threshold:
        result = _triangle_branch(graph, profiles, triangle_ids, nonstarex)
    else:
        matching_count = sum(1 for cid in nonstar_ids if profiles[cid].has_matching2)
        logger.info(
            f"Sampling branch: T = {matching_count} matching classes, p = {schedule.p:.6f}, "
            f"target excess {schedule.target_excess:.2f}."
        )
        best, log = run_trials(graph, schedule.p, max_trials, seed, chooser)
        if best is None:
            raise TrialBudgetExhausted(f"No cycle in {max_trials} trials.", trials=log)
        result = FinderResult(mode=nonstarex, branch=branch_sampling, certificate=best, trials=log)
    result.parameters.update({
        "c": c, "L": L, "L0": schedule.L0, "A": schedule.A, "t": schedule.t,
        "target_excess": schedule.target_excess, "seed": seed, "max_trials": max_trials,
    })
    result.bound = bound
    result.bound_satisfied = result.certificate.length <= bound
    return result
