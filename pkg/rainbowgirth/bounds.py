import math
from functools import lru_cache

import numpy as np
from loguru import logger

from .container import ClassCensus
from .errors import ParameterError
from .modes import DEFAULT_CALIBRATION_N_MAX


def bs_bound(n: float, k: float) -> float:
    """
    Girth bound for an n-vertex graph with excess at least k (Bollobas-Szemeredi):
    2(n+k)/(3k) * (log2 k + log2 log2 k + 4).

    Parameters
    ----------
    n : float
        Vertex count, at least 4.
    k : float
        Excess, at least 2.
    """
    if n < 4:
        raise ParameterError(f"bs_bound needs n >= 4, got {n}.")
    if k < 2:
        raise ParameterError(f"bs_bound needs k >= 2, got {k}.")
    return 2 * (n + k) / (3 * k) * (math.log2(k) + math.log2(math.log2(k)) + 4)


def log_ratio(k):
    """f(k) = log2(k) / k; decreasing for k >= 3."""
    return np.log2(k) / k


@lru_cache(maxsize=None)
def calibrate_A(n_max: int = DEFAULT_CALIBRATION_N_MAX) -> int:
    """
    Smallest integer A >= 3 such that for all A <= k <= n <= n_max

        2(n+k)/(3k) (log2 k + log2 log2 k + 4) <= 2 log2(k)/k * n

    and f(k) = log2(k)/k is decreasing on [A, n_max].

    For fixed k the left minus right side decreases in n once the inequality
    holds at n = k, so only the diagonal k = n is scanned. When no k <= n_max
    qualifies the condition is vacuous and n_max + 1 is returned.
    """
    if n_max < 16:
        raise ParameterError(f"calibrate_A needs n_max >= 16, got {n_max}.")
    k = np.arange(3, n_max + 1, dtype=np.float64)
    lhs = 4 * (np.log2(k) + np.log2(np.log2(k)) + 4)
    rhs = 6 * np.log2(k)
    failing = np.nonzero(lhs > rhs)[0]
    A = int(k[failing[-1]]) + 1 if failing.size else 3
    if A <= n_max:
        tail = log_ratio(k[A - 3:])
        if not np.all(np.diff(tail) < 0):
            raise ParameterError(f"log2(k)/k is not decreasing on [{A}, {n_max}].")
    logger.debug(f"Calibrated A = {A} for n_max = {n_max}.")
    return A


def expected_excess(census: ClassCensus, n: int, p: float) -> float:
    """
    Analytic lower bound on E K for a p-random vertex sample.

    m(2p^2 - p^4) + s(2p^2 - p^3) + r p^2 - n p. Exact when the classes are
    exactly 2-matchings, 2-stars and single edges; larger classes only raise
    the survival probability.
    """
    if min(census.matching2, census.star2, census.rest, n) < 0:
        raise ParameterError("Counts must be non-negative.")
    if not 0 <= p <= 1:
        raise ParameterError(f"p must lie in [0, 1], got {p}.")
    return (
        census.matching2 * (2 * p**2 - p**4)
        + census.star2 * (2 * p**2 - p**3)
        + census.rest * p**2
        - n * p
    )


def nonstarex_bound(n: int, c: float, L: float) -> float:
    """2 log2(k)/k * n at k = (L/100) n^(1-2c)."""
    k = L / 100 * n ** (1 - 2 * c)
    if k <= 1:
        return 0.0
    return 2 * math.log2(k) / k * n
