import json
import math
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from multiprocessing import Pool
from typing import List, Optional

import numpy as np
import pandas as pd
from dataclasses_json import dataclass_json
from loguru import logger
from tqdm import tqdm

from .bounds import expected_excess
from .container import ClassCensus, ColoredGraph
from .core import partition_classes, profile_classes
from .errors import InfeasibleHypothesisError, ParameterError
from .generators import gen_random_family, gen_tight_example
from .lower_bound import LBParams, build_lb_instance
from .modes import *
from .sampling import TrialRecord, sample_rainbow_subgraph, trial_record
from .schedule import derive_nonstarex_schedule, derive_schedule
from .seeding import derive_seed


@dataclass_json
@dataclass
class ExperimentConfig:
    """
    A sweep over vertex counts and a parameter grid.

    ``grid`` holds (alpha, beta) pairs as strings for the mainstronger mode and
    (c, L) pairs for nonstarex. Cells are enumerated n-major in the listed order.
    """
    mode: str = mainstronger
    n_values: List[int] = field(default_factory=lambda: [256])
    grid: List[List[str]] = field(default_factory=lambda: [["1", "0"]])
    instance: str = instance_random
    trials: int = 100
    master_seed: int = 0
    chooser: str = DEFAULT_CHOOSER
    fallback_t: str = str(DEFAULT_FALLBACK_T)
    workers: int = 1
    csv_path: Optional[str] = None
    json_path: Optional[str] = None

    def __post_init__(self):
        if self.mode not in (mainstronger, nonstarex):
            raise ParameterError(f"Sweeps support {mainstronger} and {nonstarex}, got {self.mode}.")
        if self.instance not in (instance_random, instance_tight):
            raise ParameterError(f"Unknown instance kind {self.instance!r}.")
        if not self.n_values or not self.grid:
            raise ParameterError("n_values and grid must be nonempty.")
        if any(len(point) != 2 for point in self.grid):
            raise ParameterError(f"Every grid point needs two coordinates, got {self.grid}.")
        if self.trials < 1:
            raise ParameterError(f"trials must be at least 1, got {self.trials}.")
        if self.chooser not in all_choosers:
            raise ParameterError(f"Invalid chooser: {self.chooser}.")
        if not 0 < Fraction(self.fallback_t) < 1:
            raise ParameterError(f"fallback_t must lie in (0, 1), got {self.fallback_t}.")
        self.grid = [[str(x) for x in point] for point in self.grid]

    def cells(self):
        return [(n, point) for n in self.n_values for point in self.grid]


@dataclass_json
@dataclass
class ExperimentRow:
    cell: int
    seed: int
    mode: str
    instance: str
    n: int
    param1: str
    param2: str
    status: str
    p: Optional[float] = None
    classes: int = 0
    census_matching2: int = 0
    census_star2: int = 0
    census_rest: int = 0
    expected_excess: Optional[float] = None
    mean_excess: Optional[float] = None
    success_rate: Optional[float] = None
    min_length: Optional[int] = None
    median_length: Optional[float] = None
    message: str = ""
    trials: List[TrialRecord] = field(default_factory=list)

    def aggregate(self):
        """Recompute the aggregate columns from ``trials``."""
        if not self.trials:
            return self
        excesses = np.array([trial.excess for trial in self.trials], dtype=float)
        lengths = [trial.certificate_length for trial in self.trials if trial.certificate_length is not None]
        self.mean_excess = float(excesses.mean())
        self.success_rate = float(np.mean([trial.excess >= 1 and trial.girth is not None for trial in self.trials]))
        self.min_length = int(min(lengths)) if lengths else None
        self.median_length = float(np.median(lengths)) if lengths else None
        return self


CSV_COLUMNS = [
    "cell", "seed", "mode", "instance", "n", "param1", "param2", "status", "p", "classes",
    "census_matching2", "census_star2", "census_rest", "expected_excess", "mean_excess",
    "success_rate", "min_length", "median_length", "message",
]


def census_of(graph: ColoredGraph) -> ClassCensus:
    """Classes with a 2-matching; with a 2-star but no 2-matching; the rest."""
    profiles = profile_classes(graph).values()
    matching = sum(1 for prof in profiles if prof.has_matching2)
    star = sum(1 for prof in profiles if prof.has_star2 and not prof.has_matching2)
    return ClassCensus(matching2=matching, star2=star, rest=len(profiles) - matching - star)


def _random_counts(n: int, alpha: Fraction, beta: Fraction) -> dict:
    matching = round(alpha * n)
    star = round(beta * n)
    return {"matching2": matching, "star2": star, "single": max(0, n - matching - star)}


def _cell_instance(config: ExperimentConfig, n: int, point, seed: int) -> ColoredGraph:
    if config.mode == nonstarex:
        c, L = float(point[0]), float(point[1])
        matching = math.ceil(L * n ** (1 - c))
        return gen_random_family(n, {"matching2": matching, "star2": max(0, n - matching)}, seed)
    alpha, beta = Fraction(point[0]), Fraction(point[1])
    if config.instance == instance_tight:
        return gen_tight_example(alpha, beta, n)
    return gen_random_family(n, _random_counts(n, alpha, beta), seed)


def _cell_probability(config: ExperimentConfig, graph: ColoredGraph, point):
    """Sampling probability and status for a cell; raises InfeasibleHypothesisError for infeasible cells."""
    if config.mode == nonstarex:
        schedule = derive_nonstarex_schedule(graph.n, float(point[0]), float(point[1]), strict=False)
        return schedule.p, status_ok
    alpha, beta = Fraction(point[0]), Fraction(point[1])
    if max(alpha, beta) > 1:
        raise InfeasibleHypothesisError("large", f"max(alpha, beta) = {max(alpha, beta)} > 1 is not sampled.")
    if 2 * alpha + beta <= 1:
        return float(1 - Fraction(config.fallback_t)), status_below_threshold
    schedule = derive_schedule(alpha, beta)
    partition_classes(graph, alpha, beta, xi=schedule.xi)
    return schedule.p_float, status_ok


def run_cell(task) -> tuple:
    """Run one sweep cell; returns (row, wall seconds). Top-level so worker processes can import it."""
    config, index = task
    n, point = config.cells()[index]
    cell_seed = derive_seed(config.master_seed, index)
    started = time.perf_counter()
    row = ExperimentRow(
        cell=index, seed=cell_seed, mode=config.mode, instance=config.instance,
        n=n, param1=point[0], param2=point[1], status=status_ok,
    )
    try:
        graph = _cell_instance(config, n, point, cell_seed)
        census = census_of(graph)
        row.classes = graph.num_classes
        row.census_matching2, row.census_star2, row.census_rest = census.matching2, census.star2, census.rest
        p, row.status = _cell_probability(config, graph, point)
    except (InfeasibleHypothesisError, ParameterError) as e:
        row.status, row.message = status_infeasible, str(e)
        return row, time.perf_counter() - started

    row.p = p
    row.expected_excess = expected_excess(census, n, p)
    for trial in range(config.trials):
        outcome = sample_rainbow_subgraph(graph, p, derive_seed(cell_seed, trial), config.chooser)
        row.trials.append(trial_record(trial, outcome))
    row.aggregate()
    return row, time.perf_counter() - started


def _write_csv(df: pd.DataFrame, path, kind: str):
    with open(path, "w") as f:
        f.write(f"# rainbowgirth {kind} schema v{CSV_SCHEMA_VERSION}\n")
        df.to_csv(f, index=False)


def run_sweep(config: ExperimentConfig, progress: bool = False) -> dict:
    """
    Run every cell of ``config`` and write the CSV and JSON reports.

    Rows come back in cell order whatever the worker count. The JSON report
    carries the per-trial logs; creation time and wall times sit in its
    ``header`` and nowhere else, so everything outside the header is
    reproducible from the master seed.

    Returns
    -------
    dict
        The JSON report.
    """
    tasks = [(config, index) for index in range(len(config.cells()))]
    logger.info(f"Sweeping {len(tasks)} cells x {config.trials} trials ({config.mode}, {config.instance}).")
    if config.workers > 1:
        with Pool(config.workers) as pool:
            results = list(tqdm(pool.imap(run_cell, tasks), total=len(tasks), desc="cells", disable=not progress))
    else:
        results = [run_cell(task) for task in tqdm(tasks, desc="cells", disable=not progress)]
    rows = [row for row, _ in results]
    for row in rows:
        logger.info(
            f"cell {row.cell}: n={row.n}, ({row.param1}, {row.param2}) {row.status}, "
            f"success={row.success_rate}, min length={row.min_length}"
        )

    report = {
        "header": {
            "created": datetime.now(timezone.utc).isoformat(),
            "wall_seconds": [round(wall, 6) for _, wall in results],
            "schema": CSV_SCHEMA_VERSION,
        },
        "config": config.to_dict(),
        "rows": [row.to_dict() for row in rows],
    }
    if config.csv_path:
        _write_csv(sweep_frame(rows), config.csv_path, "sweep")
    if config.json_path:
        with open(config.json_path, "w") as f:
            json.dump(report, f, indent=2)
    return report


def sweep_frame(rows: List[ExperimentRow]) -> pd.DataFrame:
    return pd.DataFrame([{column: getattr(row, column) for column in CSV_COLUMNS} for row in rows], columns=CSV_COLUMNS)


def event_frequency_report(
    grid: List[tuple],
    seeds: int,
    master_seed: int = 0,
    k: int = 2,
    c: float = 0.01,
    ell_max: Optional[int] = None,
    csv_path: Optional[str] = None,
    progress: bool = False,
) -> pd.DataFrame:
    """
    Frequencies of the events A, B, C and A&B&C over seeded runs of the construction.

    Parameters
    ----------
    grid : list of (n, t, L)
    seeds : int
        Runs per cell; run s of cell i uses ``derive_seed(derive_seed(master_seed, i), s)``.
    k, c, ell_max
        Passed to ``LBParams``.
    csv_path : str, optional
        Where to write the CSV (with a schema comment line).

    Returns
    -------
    pandas.DataFrame
        One row per cell with the event frequencies and |G0| statistics next
        to the binomial mean C(n, t) * p.
    """
    if seeds < 1:
        raise ParameterError(f"seeds must be at least 1, got {seeds}.")
    records = []
    for index, (n, t, L) in enumerate(grid):
        cell_seed = derive_seed(master_seed, index)
        sizes, hits = [], {event: 0 for event in all_events}
        together = 0
        p = None
        for s in tqdm(range(seeds), desc=f"n={n}, t={t}, L={L}", disable=not progress):
            params = LBParams(n=n, uniformity_t=t, k=k, L=L, c=c, seed=derive_seed(cell_seed, s), ell_max=ell_max)
            p = params.p
            instance = build_lb_instance(params)
            sizes.append(len(instance.G0))
            for event in all_events:
                hits[event] += int(instance.events[event])
            together += int(instance.all_events)
        sizes = np.array(sizes, dtype=float)
        records.append({
            "n": n, "t": t, "L": L, "k": k, "p": p, "seeds": seeds,
            "freq_A": hits[event_a] / seeds,
            "freq_B": hits[event_b] / seeds,
            "freq_C": hits[event_c] / seeds,
            "freq_ABC": together / seeds,
            "mean_G0": float(sizes.mean()),
            "se_G0": float(sizes.std(ddof=1) / np.sqrt(seeds)) if seeds > 1 else 0.0,
            "expected_G0": math.comb(n, t) * p,
        })
        logger.info(f"n={n}, t={t}, L={L}: A&B&C in {together}/{seeds} runs.")
    df = pd.DataFrame.from_records(records)
    if csv_path:
        _write_csv(df, csv_path, "events")
    return df
