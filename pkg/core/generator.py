"""Seeded random frameworks.

The bit generator is numpy's PCG64, so a given (n, p, seed) produces the same
framework on every platform. Arguments are named x1..xn.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .framework import ArgumentationFramework


def generate_random(n: int, p: float, seed: int) -> ArgumentationFramework:
    """Each ordered pair (i, j), self-attacks included, is an attack with probability p."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must lie in [0, 1], got {p}")
    rng = np.random.Generator(np.random.PCG64(seed))
    draws = rng.random((n, n))
    present = draws < p
    pairs = frozenset((int(a), int(b)) for a, b in zip(*np.nonzero(present)))
    return ArgumentationFramework(tuple(f"x{i + 1}" for i in range(n)), pairs)


@dataclass(frozen=True)
class Trial:
    index: int
    n: int
    p: float
    seed: int
    af: ArgumentationFramework


def random_frameworks(
    trials: int,
    seed: int,
    n_min: int = 2,
    n_max: int = 8,
    probabilities: Sequence[float] = (0.1, 0.25, 0.5),
) -> Iterator[Trial]:
    """Survey stream: n uniform in [n_min, n_max], p drawn from probabilities.

    Trial t draws its shape from PCG64([seed, t]) and its attacks from the
    derived framework seed, so any single trial can be replayed on its own.
    """
    if n_min > n_max:
        raise ValueError("n_min must not exceed n_max")
    if not probabilities:
        raise ValueError("at least one edge probability is needed")
    for t in range(trials):
        meta = np.random.Generator(np.random.PCG64([seed, t]))
        n = int(meta.integers(n_min, n_max + 1))
        p = float(probabilities[int(meta.integers(0, len(probabilities)))])
        af_seed = int(meta.integers(0, 2**31 - 1))
        yield Trial(t, n, p, af_seed, generate_random(n, p, af_seed))


__all__ = ["generate_random", "random_frameworks", "Trial"]
