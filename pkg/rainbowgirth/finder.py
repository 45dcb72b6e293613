from typing import Optional

from loguru import logger

from .container import ColoredGraph
from .core import verify_certificate
from .errors import ParameterError, RainbowGirthError
from .modes import *
from .repair import nonstarex_find, triangle_repair_find
from .sampling import FinderResult, find_short_rainbow_cycle


def _run_mainstronger(finder, graph, params):
    return find_short_rainbow_cycle(
        graph, params["alpha"], params["beta"], finder.max_trials, finder.seed, finder.chooser, finder.progress
    )


def _run_nonstar(finder, graph, params):
    return triangle_repair_find(graph, params["alpha"], finder.max_trials, finder.seed, finder.chooser)


def _run_nonstarex(finder, graph, params):
    return nonstarex_find(
        graph, params["c"], params["L"], finder.max_trials, finder.seed, finder.chooser,
        allow_small_L=params["allow_small_L"],
    )


MODE_FUNC_MAP = {
    mainstronger: _run_mainstronger,
    nonstar: _run_nonstar,
    nonstarex: _run_nonstarex,
}


class RainbowFinder():
    """
    Front end for the short-rainbow-cycle procedures.

    Parameters
    ----------
    max_trials : int, optional
        Sampling trials per run. Default: 64.
    seed : int, optional
        Master seed; trial i uses ``derive_seed(seed, i)``. Default: 0.
    chooser : str, optional
        Edge chooser, "canonical-first" or "seeded-uniform". Default: "canonical-first".
    progress : bool, optional
        Show a progress bar over trials of the sampling finder. Default: False.
    """
    def __init__(
        self,
        max_trials=DEFAULT_MAX_TRIALS,
        seed=0,
        chooser=DEFAULT_CHOOSER,
        progress=False,
    ):
        if chooser not in all_choosers:
            raise ParameterError(f"Invalid chooser: {chooser}.")
        self.max_trials = max_trials
        self.seed = seed
        self.chooser = chooser
        self.progress = progress

    def find(
        self,
        graph: ColoredGraph,
        mode=mainstronger,
        alpha=None,
        beta=None,
        c: Optional[float] = None,
        L: Optional[float] = None,
        allow_small_L=False,
    ) -> FinderResult:
        """
        Run one finder on ``graph`` and verify its certificate.

        Parameters
        ----------
        graph : ColoredGraph
        mode : str, optional
            One of "mainstronger", "nonstar", "nonstarex". Default: "mainstronger".
        alpha, beta : Fraction or str, optional
            Class-count fractions; mainstronger needs both, nonstar needs alpha.
        c, L : float, optional
            Exponent and constant of the nonstarex mode.
        allow_small_L : bool, optional
            Let nonstarex run with L below L0.
        """
        if mode not in all_modes:
            raise ParameterError(f"Invalid mode: {mode}.")
        supplied = {"alpha": alpha, "beta": beta, "c": c, "L": L}
        missing = [name for name in MODE_HYPOTHESES[mode] if supplied[name] is None]
        if missing:
            raise ParameterError(f"Mode {mode} needs {', '.join(missing)}.")

        logger.info(f"Running {mode} on {graph!r} with {self.max_trials} trials, seed {self.seed}.")
        params = {**supplied, "allow_small_L": allow_small_L}
        result = MODE_FUNC_MAP[mode](self, graph, params)

        if not verify_certificate(graph, result.certificate):
            raise RainbowGirthError(f"{mode} produced an invalid certificate: {result.certificate}.")
        logger.info(f"{mode} ({result.branch} branch) found a rainbow cycle of length {result.length}.")
        return result
