"""Boolean-matrix semantics over packed bitsets.

A subset S of arguments is the indicator vector g_S; a boolean matrix is a
tuple of packed rows. The boolean product A ⊙ g is then one AND and one
nonzero test per row. The sgn-arithmetic path (A ⊙ g = sgn(A·g)) is kept next
to it so the two can be checked against each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Union

import numpy as np

from .config import get_settings
from .errors import SizeCapError
from .events import log_event
from .framework import ArgSet, AttackMatrix, iter_bits


@dataclass(frozen=True)
class BoolSet:
    """Indicator vector g_S of length n, packed into an int."""

    bits: int
    n: int

    @classmethod
    def zeros(cls, n: int) -> "BoolSet":
        return cls(0, n)

    @classmethod
    def ones(cls, n: int) -> "BoolSet":
        return cls((1 << n) - 1, n)

    @classmethod
    def of(cls, indices: Sequence[int], n: int) -> "BoolSet":
        bits = 0
        for i in indices:
            if not 0 <= i < n:
                raise IndexError(f"index {i} outside 0..{n - 1}")
            bits |= 1 << i
        return cls(bits, n)

    @classmethod
    def from_arg_set(cls, s: ArgSet, n: int) -> "BoolSet":
        if s.bits >> n:
            raise IndexError(f"set {s.indices()} does not fit in {n} arguments")
        return cls(s.bits, n)

    @classmethod
    def from_array(cls, values: np.ndarray) -> "BoolSet":
        values = np.asarray(values)
        bits = 0
        for i in np.flatnonzero(values):
            bits |= 1 << int(i)
        return cls(bits, int(values.shape[0]))

    def to_arg_set(self) -> ArgSet:
        return ArgSet(self.bits)

    def as_array(self) -> np.ndarray:
        out = np.zeros(self.n, dtype=np.int64)
        for i in iter_bits(self.bits):
            out[i] = 1
        return out

    def indices(self) -> tuple:
        return tuple(iter_bits(self.bits))

    def __invert__(self) -> "BoolSet":
        return bool_negation(self)

    def issubset(self, other: "BoolSet") -> bool:
        return self.bits & ~other.bits == 0


@dataclass(frozen=True)
class BoolMatrix:
    """Square boolean matrix stored as packed rows."""

    rows: tuple
    n: int

    @classmethod
    def from_attack_matrix(cls, matrix: AttackMatrix) -> "BoolMatrix":
        return cls(tuple(matrix.rows), matrix.n)

    @classmethod
    def from_array(cls, values: np.ndarray) -> "BoolMatrix":
        values = np.asarray(values)
        rows = tuple(BoolSet.from_array(row).bits for row in values)
        return cls(rows, int(values.shape[1]) if values.ndim == 2 else 0)

    def transpose(self) -> "BoolMatrix":
        cols = [0] * self.n
        for i, row in enumerate(self.rows):
            for j in iter_bits(row):
                cols[j] |= 1 << i
        return BoolMatrix(tuple(cols), len(self.rows))

    def as_array(self) -> np.ndarray:
        out = np.zeros((len(self.rows), self.n), dtype=np.int64)
        for i, row in enumerate(self.rows):
            for j in iter_bits(row):
                out[i, j] = 1
        return out


MatrixLike = Union[AttackMatrix, BoolMatrix]


def _as_bool_matrix(m: MatrixLike) -> BoolMatrix:
    return m if isinstance(m, BoolMatrix) else BoolMatrix.from_attack_matrix(m)


def sgn(values: np.ndarray) -> np.ndarray:
    values = np.asarray(values)
    if (values < 0).any():
        raise ValueError("sgn is only defined here on nonnegative inputs")
    return (values > 0).astype(np.int64)


def bool_product(m: MatrixLike, g: BoolSet) -> BoolSet:
    """OR-AND product: c_i = OR_h (m_ih AND g_h)."""
    bm = _as_bool_matrix(m)
    if g.n != bm.n:
        raise ValueError(f"vector of length {g.n} does not match a matrix with {bm.n} columns")
    bits = 0
    for i, row in enumerate(bm.rows):
        if row & g.bits:
            bits |= 1 << i
    return BoolSet(bits, len(bm.rows))


def bool_product_sgn(m: MatrixLike, g: BoolSet, scale: float = 1.0) -> BoolSet:
    """sgn(scale · M·g), the arithmetic form of the boolean product."""
    if scale <= 0:
        raise ValueError("scale must be positive for sgn to match the boolean product")
    if isinstance(m, AttackMatrix):
        dense = m.entries
    else:
        dense = m.as_array()
    return BoolSet.from_array(sgn(scale * (dense @ g.as_array())))


def bool_negation(g: BoolSet) -> BoolSet:
    return BoolSet(~g.bits & ((1 << g.n) - 1), g.n)


def forward_image(m: MatrixLike, g: BoolSet) -> BoolSet:
    """g_{R⁺(S)} = A ⊙ g_S."""
    return bool_product(m, g)


def backward_image(m: MatrixLike, g: BoolSet) -> BoolSet:
    """g_{R⁻(S)} = Aᵀ ⊙ g_S."""
    return bool_product(_as_bool_matrix(m).transpose(), g)


def characteristic(m: MatrixLike, g: BoolSet) -> BoolSet:
    """𝔉(g) = ¬(A ⊙ ¬(A ⊙ g)): arguments defended by S."""
    return bool_negation(bool_product(m, bool_negation(bool_product(m, g))))


def characteristic_arithmetic(matrix: AttackMatrix, g: BoolSet, alpha: float) -> BoolSet:
    """e − sgn(Â(e − sgn(Â g))) with Â = αÃ."""
    scaled = alpha * matrix.normalized
    e = np.ones(matrix.n, dtype=np.int64)
    inner = e - sgn(scaled @ g.as_array())
    return BoolSet.from_array(e - sgn(scaled @ inner))


def grounded_trajectory(m: MatrixLike) -> List[BoolSet]:
    """Iterates g^(0)=0, g^(k)=𝔉(g^(k-1)) up to and including the fixpoint."""
    bm = _as_bool_matrix(m)
    g = BoolSet.zeros(bm.n)
    path = [g]
    while True:
        nxt = characteristic(bm, g)
        if nxt == g:
            return path
        path.append(nxt)
        g = nxt


def grounded_fixpoint(m: MatrixLike) -> BoolSet:
    path = grounded_trajectory(m)
    log_event("boolean", "grounded fixpoint", meta={"n": path[-1].n, "iterations": len(path), "size": len(path[-1].indices())})
    return path[-1]


def grounded_fixpoint_arithmetic(matrix: AttackMatrix, alpha: float) -> BoolSet:
    g = BoolSet.zeros(matrix.n)
    for _ in range(matrix.n + 2):
        nxt = characteristic_arithmetic(matrix, g, alpha)
        if nxt == g:
            break
        g = nxt
    return g


def stable_operator(m: MatrixLike, g: BoolSet) -> BoolSet:
    """𝔊(g) = ¬(A ⊙ g): arguments not attacked by S."""
    return bool_negation(bool_product(m, g))


def find_stable_by_operator(m: MatrixLike, cap: Optional[int] = None) -> List[BoolSet]:
    """Conflict-free fixpoints of 𝔊, scanned in ascending subset order."""
    bm = _as_bool_matrix(m)
    cap = get_settings().enum_cap if cap is None else cap
    if bm.n > cap:
        raise SizeCapError(bm.n, cap, "stable operator scan")
    found: List[BoolSet] = []
    for bits in range(1 << bm.n):
        g = BoolSet(bits, bm.n)
        hit = bool_product(bm, g)
        if hit.bits & bits:
            continue
        if bool_negation(hit) == g:
            found.append(g)
    log_event("boolean", "stable scan", meta={"n": bm.n, "found": len(found)})
    return found


__all__ = [
    "BoolSet",
    "BoolMatrix",
    "sgn",
    "bool_product",
    "bool_product_sgn",
    "bool_negation",
    "forward_image",
    "backward_image",
    "characteristic",
    "characteristic_arithmetic",
    "grounded_trajectory",
    "grounded_fixpoint",
    "grounded_fixpoint_arithmetic",
    "stable_operator",
    "find_stable_by_operator",
]
