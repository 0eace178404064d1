"""Rankings derived from strength vectors, and set-level comparison.

A ranking is a total preorder stored as tie groups, best first. Two arguments
are tied when a chain of consecutive values, each gap within tie_tol, links
them. Group comparison lifts the ranking to sets: S1 ≽ S2 when some injection
δ: S2 → S1 has δ(x) ≽ x for every x.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from core.config import get_settings
from core.counting import StrengthVector

# above this many arguments on the right, matchings come from scipy
EXHAUSTIVE_LIMIT = 8


class Order(int, Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@dataclass(frozen=True)
class Ranking:
    groups: Tuple[Tuple[int, ...], ...]
    values: Tuple[float, ...]
    names: Optional[Tuple[str, ...]] = None
    tie_tol: float = 0.0
    _level: Tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        level = [0] * len(self.values)
        for rank, group in enumerate(self.groups):
            for i in group:
                # lower level means better
                level[i] = rank
        object.__setattr__(self, "_level", tuple(level))

    def __len__(self) -> int:
        return len(self.values)

    def _idx(self, x: Union[int, str]) -> int:
        if isinstance(x, str):
            if self.names is None:
                raise KeyError(f"ranking has no names, cannot resolve {x!r}")
            return self.names.index(x)
        return int(x)

    def level(self, x: Union[int, str]) -> int:
        return self._level[self._idx(x)]

    def cmp(self, x: Union[int, str], y: Union[int, str]) -> Order:
        lx, ly = self.level(x), self.level(y)
        if lx == ly:
            return Order.EQUAL
        return Order.GREATER if lx < ly else Order.LESS

    def geq(self, x: Union[int, str], y: Union[int, str]) -> bool:
        return self.level(x) <= self.level(y)

    def gt(self, x: Union[int, str], y: Union[int, str]) -> bool:
        return self.level(x) < self.level(y)

    def tied(self, x: Union[int, str], y: Union[int, str]) -> bool:
        return self.level(x) == self.level(y)

    def named_groups(self) -> List[List[str]]:
        if self.names is None:
            return [[str(i) for i in g] for g in self.groups]
        return [[self.names[i] for i in g] for g in self.groups]

    def __str__(self) -> str:
        return " > ".join(" ~ ".join(g) for g in self.named_groups())


def derive_ranking(
    v: Union[StrengthVector, Sequence[float], np.ndarray],
    tie_tol: Optional[float] = None,
    names: Optional[Sequence[str]] = None,
) -> Ranking:
    """Sort descending; a gap of at most tie_tol between neighbours keeps them tied."""
    if tie_tol is None:
        eps = v.epsilon if isinstance(v, StrengthVector) else None
        tie_tol = get_settings().resolved_tie_tol(eps)
    if tie_tol < 0:
        raise ValueError("tie_tol must be non-negative")
    values = np.asarray(v.values if isinstance(v, StrengthVector) else v, dtype=float)
    order = sorted(range(values.shape[0]), key=lambda i: (-values[i], i))

    groups: List[List[int]] = []
    prev = None
    for i in order:
        if prev is not None and values[prev] - values[i] <= tie_tol:
            groups[-1].append(i)
        else:
            groups.append([i])
        prev = i
    return Ranking(
        groups=tuple(tuple(sorted(g)) for g in groups),
        values=tuple(float(x) for x in values),
        names=tuple(names) if names is not None else None,
        tie_tol=float(tie_tol),
    )


class Comparison(str, Enum):
    STRICT = "strict"
    WEAK = "weak"
    NONE = "none"


@dataclass(frozen=True)
class GroupComparison:
    kind: Comparison
    witness: Optional[Dict[int, int]] = None

    @property
    def weak(self) -> bool:
        return self.kind is not Comparison.NONE

    @property
    def strict(self) -> bool:
        return self.kind is Comparison.STRICT


def _search(
    ranking: Ranking,
    left: List[int],
    right: List[int],
    need_strict: bool,
) -> Tuple[Optional[Dict[int, int]], Optional[Dict[int, int]]]:
    """Backtracking over injections right -> left.

    Returns (first weak witness, first witness with a strict pair); the search
    stops as soon as it has what the caller needs.
    """
    options = [[y for y in left if ranking.geq(y, x)] for x in right]
    used: set = set()
    chosen: Dict[int, int] = {}
    found: Dict[str, Optional[Dict[int, int]]] = {"weak": None, "strict": None}

    def walk(k: int, has_strict: bool) -> bool:
        if k == len(right):
            if found["weak"] is None:
                found["weak"] = dict(chosen)
            if has_strict:
                found["strict"] = dict(chosen)
                return True
            return not need_strict
        x = right[k]
        for y in options[k]:
            if y in used:
                continue
            used.add(y)
            chosen[x] = y
            if walk(k + 1, has_strict or ranking.gt(y, x)):
                return True
            used.discard(y)
            del chosen[x]
        return False

    walk(0, False)
    return found["weak"], found["strict"]


def _saturating_matching(ranking: Ranking, left: List[int], right: List[int], forced: Optional[Tuple[int, int]] = None) -> Optional[Dict[int, int]]:
    rows, cols = [], []
    for r, x in enumerate(right):
        for c, y in enumerate(left):
            if forced is not None and (x == forced[0]) != (y == forced[1]):
                continue
            if ranking.geq(y, x):
                rows.append(r)
                cols.append(c)
    if len({*rows}) < len(right):
        return None
    graph = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(len(right), len(left)))
    match = maximum_bipartite_matching(graph, perm_type="column")
    if (match < 0).any():
        return None
    return {right[r]: left[int(c)] for r, c in enumerate(match)}


def group_compare(ranking: Ranking, s1: Iterable[int], s2: Iterable[int]) -> GroupComparison:
    """Compare S1 against S2.

    Weak when an injection δ: S2 → S1 with δ(x) ≽ x exists. Strict when one
    such δ also has |S1| > |S2| or at least one pair with δ(x) ≻ x.
    """
    left = sorted(set(s1))
    right = sorted(set(s2))
    if not right:
        return GroupComparison(Comparison.STRICT if left else Comparison.WEAK, {})
    if len(right) > len(left):
        return GroupComparison(Comparison.NONE)

    bigger = len(left) > len(right)
    if len(right) <= EXHAUSTIVE_LIMIT:
        weak, strict = _search(ranking, left, right, need_strict=not bigger)
        if weak is None:
            return GroupComparison(Comparison.NONE)
        if bigger:
            return GroupComparison(Comparison.STRICT, weak)
        if strict is not None:
            return GroupComparison(Comparison.STRICT, strict)
        return GroupComparison(Comparison.WEAK, weak)

    weak = _saturating_matching(ranking, left, right)
    if weak is None:
        return GroupComparison(Comparison.NONE)
    if bigger:
        return GroupComparison(Comparison.STRICT, weak)
    for x in right:
        for y in left:
            if ranking.gt(y, x):
                strict = _saturating_matching(ranking, left, right, forced=(x, y))
                if strict is not None:
                    return GroupComparison(Comparison.STRICT, strict)
    return GroupComparison(Comparison.WEAK, weak)


def pair_agreement(first: Ranking, second: Ranking) -> Dict[str, int]:
    """Kendall-style count over unordered pairs: same strict order, opposite order, or tied in one."""
    if len(first) != len(second):
        raise ValueError("rankings cover different numbers of arguments")
    out = {"pairs": 0, "concordant": 0, "discordant": 0, "tied": 0}
    n = len(first)
    for x in range(n):
        for y in range(x + 1, n):
            out["pairs"] += 1
            a, b = first.cmp(x, y), second.cmp(x, y)
            if a is Order.EQUAL or b is Order.EQUAL:
                out["tied"] += 1
            elif a is b:
                out["concordant"] += 1
            else:
                out["discordant"] += 1
    return out


__all__ = [
    "Order",
    "Ranking",
    "derive_ranking",
    "pair_agreement",
    "Comparison",
    "GroupComparison",
    "group_compare",
    "EXHAUSTIVE_LIMIT",
]
