import numpy as np


def make_rng(seed: int) -> np.random.Generator:
    """Counter-based generator (one per run or per generated instance)."""
    return np.random.Generator(np.random.Philox(seed))
