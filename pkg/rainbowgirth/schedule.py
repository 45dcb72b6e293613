from dataclasses import dataclass
from fractions import Fraction

from dataclasses_json import dataclass_json

from .bounds import calibrate_A, nonstarex_bound
from .container import fraction_field
from .errors import InfeasibleHypothesisError, ParameterError


@dataclass_json
@dataclass(frozen=True)
class ProofSchedule:
    """
    Parameters of the sampling argument for 2*alpha + beta > 1, all exact.

    gamma = 2*alpha + beta - 1, t = gamma/40, xi = gamma*t/100, p = 1 - t,
    delta = gamma*t/10.
    """
    alpha: Fraction = fraction_field()
    beta: Fraction = fraction_field()
    gamma: Fraction = fraction_field()
    t: Fraction = fraction_field()
    xi: Fraction = fraction_field()
    p: Fraction = fraction_field()
    delta: Fraction = fraction_field()

    @property
    def p_float(self) -> float:
        return float(self.p)

    def excess_lower_bound(self, n: int) -> Fraction:
        """delta * n, the guaranteed expected excess."""
        return self.delta * n

    def guaranteed_excess(self, n: int) -> Fraction:
        """
        Lower bound on E K before simplification, with the xi slack in every class count:
        (a-xi)n(2p^2-p^4) + (b-xi)n(2p^2-p^3) + (1-a-b-xi)n p^2 - np.
        """
        p, xi = self.p, self.xi
        return (
            (self.alpha - xi) * n * (2 * p**2 - p**4)
            + (self.beta - xi) * n * (2 * p**2 - p**3)
            + (1 - self.alpha - self.beta - xi) * n * p**2
            - n * p
        )


def derive_schedule(alpha, beta) -> ProofSchedule:
    """
    Derive the exact schedule for (alpha, beta).

    Parameters
    ----------
    alpha, beta : Fraction or str or int
        Rationals with 2*alpha + beta > 1 and max(alpha, beta) <= 1.

    Raises
    ------
    InfeasibleHypothesisError
        At or below the threshold 2*alpha + beta = 1; the tight example shows
        logarithmic rainbow girth cannot be forced there.
    ParameterError
        Negative inputs, or max(alpha, beta) > 1.
    """
    alpha, beta = Fraction(alpha), Fraction(beta)
    if alpha < 0 or beta < 0:
        raise ParameterError(f"alpha and beta must be non-negative, got {alpha}, {beta}.")
    gamma = 2 * alpha + beta - 1
    if gamma <= 0:
        raise InfeasibleHypothesisError(
            "threshold",
            f"2*alpha + beta = {2 * alpha + beta} <= 1 (gamma = {gamma}); no schedule exists. "
            "See gen_tight_example for graphs with linear rainbow girth at the threshold.",
            {"gamma": str(gamma)},
        )
    if max(alpha, beta) > 1:
        raise ParameterError(
            f"max(alpha, beta) = {max(alpha, beta)} > 1; use one representative edge per class instead."
        )
    t = gamma / 40
    xi = gamma * t / 100
    delta = gamma * t / 10
    p = 1 - t
    assert 0 < t < 1 and 0 < p < 1 and delta > 0
    return ProofSchedule(alpha=alpha, beta=beta, gamma=gamma, t=t, xi=xi, p=p, delta=delta)


@dataclass_json
@dataclass(frozen=True)
class NonstarexSchedule:
    """
    Explicit-bound schedule for about L*n^(1-c) non-star classes.

    t = n^(-c)/10, p = 1 - t, target_excess = (L/100) n^(1-2c), L0 = max(100A, 1000).
    """
    n: int
    c: float
    L: float
    t: float
    p: float
    target_excess: float
    A: int
    L0: float

    @property
    def class_requirement(self) -> float:
        """L * n^(1-c) classes must contain a 2-matching or a triangle."""
        return self.L * self.n ** (1 - self.c)

    @property
    def branch_threshold(self) -> float:
        return self.L / 2 * self.n ** (1 - self.c)

    def theorem_bound(self) -> float:
        """2 log2(k) / k * n at k = target_excess; the rainbow girth bound being certified."""
        return nonstarex_bound(self.n, self.c, self.L)


def derive_nonstarex_schedule(n: int, c: float, L: float, A: int | None = None, strict: bool = True) -> NonstarexSchedule:
    """
    Parameters
    ----------
    n : int
        Vertex count.
    c : float
        Exponent in [0, 1/2].
    L : float
        Class-count constant; must be at least L0 unless ``strict`` is False.
    A : int, optional
        Calibrated constant; defaults to ``calibrate_A()``.
    strict : bool
        Enforce L >= L0.
    """
    if not 0 <= c <= 0.5:
        raise ParameterError(f"c must lie in [0, 1/2], got {c}.")
    if n < 1:
        raise ParameterError(f"n must be positive, got {n}.")
    if A is None:
        A = calibrate_A()
    L0 = max(100 * A, 10**3)
    if strict and L < L0:
        raise ParameterError(f"L = {L} is below L0 = {L0} (A = {A}); pass strict=False to run anyway.")
    t = n ** (-c) / 10
    target = L / 100 * n ** (1 - 2 * c)
    if target <= 0:
        raise ParameterError(f"Target excess {target} must be positive; L must be positive.")
    return NonstarexSchedule(n=n, c=c, L=L, t=t, p=1 - t, target_excess=target, A=A, L0=L0)
