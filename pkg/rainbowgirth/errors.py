class RainbowGirthError(Exception):
    """Base class for all errors raised by rainbowgirth."""


class ParameterError(RainbowGirthError, ValueError):
    """Invalid parameters or malformed input data."""


class InfeasibleHypothesisError(RainbowGirthError):
    """
    The hypotheses of a theorem do not hold for the given input.

    Parameters
    ----------
    condition : str
        Machine-readable name of the failing condition, e.g. "F_M" or "class_size".
    message : str
        Human-readable explanation.
    details : dict, optional
        Numbers behind the failure (required vs available counts, class ids).
    """
    def __init__(self, condition: str, message: str, details: dict | None = None):
        super().__init__(message)
        self.condition = condition
        self.details = details or {}

    def to_dict(self) -> dict:
        return {"condition": self.condition, "message": str(self), "details": self.details}


class TrialBudgetExhausted(RainbowGirthError):
    """A randomized finder used all of its trials without producing a cycle."""
    def __init__(self, message: str, trials: list | None = None):
        super().__init__(message)
        self.trials = trials or []
