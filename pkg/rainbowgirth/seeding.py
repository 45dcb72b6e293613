from typing import Optional

import numpy as np


def derive_seed(parent: int, index: int) -> int:
    """
    Split a seed into an independent child seed.

    The child is the first 64-bit word produced by
    ``numpy.random.SeedSequence([parent, index])``. Master, cell and trial
    seeds all go through this rule, so a trial's randomness depends only on
    its position and never on execution order.

    Parameters
    ----------
    parent : int
        Non-negative parent seed.
    index : int
        Non-negative child index.

    Returns
    -------
    int
        Child seed in [0, 2**64).
    """
    if parent < 0 or index < 0:
        raise ValueError(f"Seeds must be non-negative, got parent={parent}, index={index}.")
    state = np.random.SeedSequence([parent, index]).generate_state(1, dtype=np.uint64)
    return int(state[0])


def make_rng(seed: Optional[int]) -> np.random.Generator:
    """Seeded numpy Generator; ``None`` draws fresh OS entropy."""
    return np.random.default_rng(seed)
