from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

import networkx as nx
import numpy as np
from dataclasses_json import dataclass_json
from loguru import logger
from tqdm import tqdm

from .bounds import bs_bound
from .container import ColoredGraph, Edge, RainbowCycleCertificate
from .core import certificate_from_cycle, excess, partition_classes
from .errors import ParameterError, TrialBudgetExhausted
from .exact import choose_edge, representative_girth, shortest_cycle
from .modes import (
    DEFAULT_CHOOSER, DEFAULT_MAX_TRIALS, branch_representative, branch_sampling,
    mainstronger, seeded_uniform
)
from .schedule import derive_schedule
from .seeding import derive_seed, make_rng


@dataclass_json
@dataclass
class SampleOutcome:
    """
    One p-random vertex sample S and the rainbow subgraph H it induces.

    ``vertex_count`` counts all of S; ``excess`` is |E(H)| - |S|.
    ``non_isolated`` counts the vertices touched by H, on which the girth depends.
    """
    seed: int
    p: float
    sampled: List[int] = field(default_factory=list)
    edges: List[Edge] = field(default_factory=list)
    colors: List[int] = field(default_factory=list)
    vertex_count: int = 0
    non_isolated: int = 0
    excess: int = 0
    girth: Optional[int] = None
    certificate: Optional[RainbowCycleCertificate] = None


@dataclass_json
@dataclass
class TrialRecord:
    trial: int
    seed: int
    sampled: int
    non_isolated: int
    excess: int
    girth: Optional[int] = None
    certificate_length: Optional[int] = None
    bs_bound: Optional[float] = None  # bs_bound(non_isolated, excess) when defined


@dataclass_json
@dataclass
class FinderResult:
    mode: str
    branch: str
    certificate: Optional[RainbowCycleCertificate] = None
    trials: List[TrialRecord] = field(default_factory=list)
    repairs: List[int] = field(default_factory=list)  # cycle length before each repair, then the final length
    bound: Optional[float] = None
    bound_satisfied: Optional[bool] = None
    parameters: dict = field(default_factory=dict)

    @property
    def length(self) -> Optional[int]:
        return None if self.certificate is None else self.certificate.length


def sample_rainbow_subgraph(
    graph: ColoredGraph,
    p: float,
    seed: int,
    chooser: str = DEFAULT_CHOOSER,
    compute_girth: bool = True,
) -> SampleOutcome:
    """
    Sample S by independent per-vertex coins and keep one edge inside S per class.

    Parameters
    ----------
    graph : ColoredGraph
    p : float
        Inclusion probability, 0 < p < 1.
    seed : int
        Seed for the coins and, with ``seeded-uniform``, for the edge choice.
    chooser : str, optional
        ``canonical-first`` keeps the smallest eligible edge of each class;
        ``seeded-uniform`` picks uniformly among eligible edges.
    compute_girth : bool, optional
        Also compute the girth of H and a certificate for a shortest cycle.
    """
    if not 0 < p < 1:
        raise ParameterError(f"p must lie strictly between 0 and 1, got {p}.")
    rng = make_rng(seed)
    inside = rng.random(graph.n) < p
    edges, colors = [], []
    for color_class in graph.classes:
        eligible = [(u, v) for u, v in color_class.edges if inside[u] and inside[v]]
        if eligible:
            edges.append(choose_edge(eligible, chooser, rng))
            colors.append(color_class.id)
    sampled = np.flatnonzero(inside).tolist()
    touched = {v for edge in edges for v in edge}
    outcome = SampleOutcome(
        seed=seed,
        p=p,
        sampled=sampled,
        edges=edges,
        colors=colors,
        vertex_count=len(sampled),
        non_isolated=len(touched),
        excess=excess(len(sampled), len(edges)),
    )
    if compute_girth:
        attach_girth(graph, outcome)
    return outcome


def attach_girth(graph: ColoredGraph, outcome: SampleOutcome) -> SampleOutcome:
    """Fill in the girth of H and a certificate for one of its shortest cycles."""
    if outcome.edges:
        h = nx.Graph()
        h.add_edges_from(outcome.edges)
        length, cycle = shortest_cycle(h)
        if cycle is not None:
            outcome.girth = int(length)
            outcome.certificate = certificate_from_cycle(graph, cycle)
    return outcome


def trial_record(trial: int, outcome: SampleOutcome) -> TrialRecord:
    bound = None
    if outcome.excess >= 2 and outcome.non_isolated >= 4:
        bound = bs_bound(outcome.non_isolated, outcome.excess)
    return TrialRecord(
        trial=trial,
        seed=outcome.seed,
        sampled=outcome.vertex_count,
        non_isolated=outcome.non_isolated,
        excess=outcome.excess,
        girth=outcome.girth,
        certificate_length=None if outcome.certificate is None else outcome.certificate.length,
        bs_bound=bound,
    )


def run_trials(
    graph: ColoredGraph,
    p: float,
    max_trials: int,
    seed: int,
    chooser: str = DEFAULT_CHOOSER,
    min_excess: int = 1,
    progress: bool = False,
):
    """
    Repeat the sample with seeds ``derive_seed(seed, i)`` and keep the shortest certificate.

    H is only searched for a cycle on trials with excess at least ``min_excess``.

    Returns
    -------
    (certificate or None, list[TrialRecord])
    """
    if max_trials < 1:
        raise ParameterError(f"max_trials must be at least 1, got {max_trials}.")
    best: Optional[RainbowCycleCertificate] = None
    log: List[TrialRecord] = []
    for trial in tqdm(range(max_trials), desc="trials", disable=not progress):
        trial_seed = derive_seed(seed, trial)
        outcome = sample_rainbow_subgraph(graph, p, trial_seed, chooser, compute_girth=False)
        if outcome.excess >= min_excess:
            attach_girth(graph, outcome)
        record = trial_record(trial, outcome)
        log.append(record)
        logger.debug(
            f"trial {trial}: |S|={record.sampled}, K={record.excess}, girth={record.girth}"
        )
        if outcome.certificate is not None and (best is None or outcome.certificate.length < best.length):
            best = outcome.certificate
    return best, log


def find_short_rainbow_cycle(
    graph: ColoredGraph,
    alpha,
    beta,
    max_trials: int = DEFAULT_MAX_TRIALS,
    seed: int = 0,
    chooser: str = DEFAULT_CHOOSER,
    progress: bool = False,
) -> FinderResult:
    """
    Short rainbow cycle via p-random sampling with the (alpha, beta) schedule.

    Checks the class-count hypotheses, samples up to ``max_trials`` times with
    p = 1 - gamma/40 and returns the shortest cycle of H over all trials. When
    max(alpha, beta) > 1, one representative edge per class already has
    linear excess and is used directly.

    Raises
    ------
    InfeasibleHypothesisError
        Threshold or class-count hypotheses fail.
    TrialBudgetExhausted
        No trial produced a cycle; the exception carries the trial log.
    """
    alpha, beta = Fraction(alpha), Fraction(beta)
    parameters = {"alpha": str(alpha), "beta": str(beta), "max_trials": max_trials, "seed": seed, "chooser": chooser}
    if max(alpha, beta) > 1:
        # slack (max - 1)/2 still forces more than n classes, so one edge per class has linear excess
        partition_classes(graph, alpha, beta, xi=(max(alpha, beta) - 1) / 2)
        rep = representative_girth(graph, chooser, seed if chooser == seeded_uniform else None)
        if rep.certificate is None:
            raise TrialBudgetExhausted("One edge per class gave a forest.")
        return FinderResult(mode=mainstronger, branch=branch_representative, certificate=rep.certificate,
                            parameters=parameters)

    schedule = derive_schedule(alpha, beta)
    partition_classes(graph, alpha, beta, xi=schedule.xi)
    logger.info(
        f"Sampling {max_trials} trials on {graph!r} with p = {schedule.p} "
        f"(gamma = {schedule.gamma}, target excess delta*n = {float(schedule.excess_lower_bound(graph.n)):.2f})."
    )
    best, log = run_trials(graph, schedule.p_float, max_trials, seed, chooser, progress=progress)
    if best is None:
        raise TrialBudgetExhausted(f"No cycle in {max_trials} trials.", trials=log)
    parameters["p"] = str(schedule.p)
    return FinderResult(mode=mainstronger, branch=branch_sampling, certificate=best, trials=log, parameters=parameters)
