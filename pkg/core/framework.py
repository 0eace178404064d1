"""Immutable argumentation framework model and the set-based operators on it.

Arguments are indexed 0..n-1 in declaration order. Sets of arguments are packed
into Python ints (bit i set <=> argument i is a member), which keeps the
operators word-parallel and lets the boolean and enumeration layers share the
same representation.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, List, Sequence, Tuple, Union

import numpy as np
from scipy import sparse

from .config import get_settings
from .errors import FrameworkError, InvalidArgumentError, InvalidSetError

ArgRef = Union[int, str]


def _bits_of(indices: Iterable[int]) -> int:
    bits = 0
    for i in indices:
        bits |= 1 << i
    return bits


def iter_bits(bits: int) -> Iterator[int]:
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


@dataclass(frozen=True)
class ArgSet:
    """Subset of argument indices with bitset semantics."""

    bits: int = 0

    @classmethod
    def of(cls, indices: Iterable[int]) -> "ArgSet":
        indices = list(indices)
        if any(i < 0 for i in indices):
            raise InvalidSetError(f"negative argument index in {indices}")
        return cls(_bits_of(indices))

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.bits)

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __contains__(self, i: object) -> bool:
        return isinstance(i, int) and i >= 0 and bool(self.bits >> i & 1)

    def __or__(self, other: "ArgSet") -> "ArgSet":
        return ArgSet(self.bits | other.bits)

    def __and__(self, other: "ArgSet") -> "ArgSet":
        return ArgSet(self.bits & other.bits)

    def __sub__(self, other: "ArgSet") -> "ArgSet":
        return ArgSet(self.bits & ~other.bits)

    def __bool__(self) -> bool:
        return self.bits != 0

    def issubset(self, other: "ArgSet") -> bool:
        return self.bits & ~other.bits == 0

    def indices(self) -> Tuple[int, ...]:
        return tuple(iter_bits(self.bits))


EMPTY = ArgSet(0)


@dataclass(frozen=True, eq=False)
class AttackMatrix:
    """A with a_ij = 1 iff x_j attacks x_i, its infinity norm N and Ã = A/N."""

    entries: np.ndarray
    norm: int
    rows: Tuple[int, ...]
    dense_threshold: int = 64

    @property
    def n(self) -> int:
        return int(self.entries.shape[0])

    @cached_property
    def _integer_operator(self):
        if self.n >= self.dense_threshold:
            return sparse.csr_matrix(self.entries)
        return self.entries

    @cached_property
    def normalized(self) -> np.ndarray:
        # N = 0 (no attacks): Ã is the zero matrix
        if self.norm == 0:
            out = np.zeros((self.n, self.n), dtype=float)
        else:
            out = self.entries.astype(float) / float(self.norm)
        out.setflags(write=False)
        return out

    @cached_property
    def _normalized_operator(self):
        if self.n >= self.dense_threshold:
            return sparse.csr_matrix(self.normalized)
        return self.normalized

    @property
    def is_sparse(self) -> bool:
        return self.n >= self.dense_threshold

    def apply(self, v: np.ndarray) -> np.ndarray:
        """Integer product A·v."""
        return np.asarray(self._integer_operator @ v)

    def apply_normalized(self, v: np.ndarray) -> np.ndarray:
        """Real product Ã·v."""
        return np.asarray(self._normalized_operator @ v, dtype=float)

    def normalized_operator(self):
        """Ã as a dense array or a CSR matrix depending on size."""
        return self._normalized_operator


@dataclass(frozen=True)
class ArgumentationFramework:
    arguments: Tuple[str, ...]
    attacks: frozenset = field(default_factory=frozenset)
    # per-argument adjacency bitmasks, derived
    _attackers: Tuple[int, ...] = field(init=False, repr=False, compare=False)
    _targets: Tuple[int, ...] = field(init=False, repr=False, compare=False)
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        args = tuple(self.arguments)
        object.__setattr__(self, "arguments", args)
        index: dict[str, int] = {}
        for i, name in enumerate(args):
            if not isinstance(name, str) or not name:
                raise FrameworkError(f"argument {i} has an empty or non-string name")
            if name in index:
                raise FrameworkError(f"duplicate argument name {name!r}")
            index[name] = i
        n = len(args)
        attacks = frozenset((int(a), int(b)) for a, b in self.attacks)
        attackers = [0] * n
        targets = [0] * n
        for a, b in attacks:
            if not (0 <= a < n and 0 <= b < n):
                raise FrameworkError(f"attack ({a}, {b}) references an index outside 0..{n - 1}")
            attackers[b] |= 1 << a
            targets[a] |= 1 << b
        object.__setattr__(self, "attacks", attacks)
        object.__setattr__(self, "_attackers", tuple(attackers))
        object.__setattr__(self, "_targets", tuple(targets))
        object.__setattr__(self, "_index", index)

    @classmethod
    def from_names(cls, arguments: Sequence[str], attacks: Iterable[Tuple[str, str]] = ()) -> "ArgumentationFramework":
        index = {name: i for i, name in enumerate(arguments)}
        pairs = set()
        for a, b in attacks:
            if a not in index or b not in index:
                missing = a if a not in index else b
                raise InvalidArgumentError(f"attack ({a}, {b}) names unknown argument {missing!r}")
            pairs.add((index[a], index[b]))
        return cls(tuple(arguments), frozenset(pairs))

    @property
    def n(self) -> int:
        return len(self.arguments)

    @property
    def full(self) -> ArgSet:
        return ArgSet((1 << self.n) - 1)

    def index_of(self, ref: ArgRef) -> int:
        if isinstance(ref, str):
            try:
                return self._index[ref]
            except KeyError:
                raise InvalidArgumentError(f"unknown argument {ref!r}") from None
        if isinstance(ref, (int, np.integer)) and 0 <= int(ref) < self.n:
            return int(ref)
        raise InvalidArgumentError(f"argument index {ref!r} outside 0..{self.n - 1}")

    def argset(self, refs: Iterable[ArgRef]) -> ArgSet:
        return ArgSet(_bits_of(self.index_of(r) for r in refs))

    def names(self, s: ArgSet) -> List[str]:
        return [self.arguments[i] for i in s]

    def check_set(self, s: ArgSet) -> ArgSet:
        if s.bits < 0 or s.bits >> self.n:
            raise InvalidSetError(f"set {s.indices()} is not a subset of 0..{self.n - 1}")
        return s

    def attacker_mask(self, i: int) -> int:
        return self._attackers[i]

    def target_mask(self, i: int) -> int:
        return self._targets[i]

    @cached_property
    def matrix(self) -> AttackMatrix:
        n = self.n
        entries = np.zeros((n, n), dtype=np.int64)
        for a, b in self.attacks:
            entries[b, a] = 1
        entries.setflags(write=False)
        norm = int(entries.sum(axis=1).max()) if n else 0
        return AttackMatrix(
            entries=entries,
            norm=norm,
            rows=self._attackers,
            dense_threshold=get_settings().dense_threshold,
        )

    def induced(self, s: ArgSet) -> "ArgumentationFramework":
        """Sub-framework on the members of s, argument order inherited."""
        keep = list(self.check_set(s))
        remap = {old: new for new, old in enumerate(keep)}
        pairs = frozenset((remap[a], remap[b]) for a, b in self.attacks if a in remap and b in remap)
        return ArgumentationFramework(tuple(self.arguments[i] for i in keep), pairs)

    def relabel(self, permutation: Sequence[int]) -> "ArgumentationFramework":
        """Isomorphic copy where argument i moves to position permutation[i]."""
        n = self.n
        if sorted(permutation) != list(range(n)):
            raise FrameworkError("relabel expects a permutation of 0..n-1")
        names: List[str] = [""] * n
        for i, target in enumerate(permutation):
            names[target] = self.arguments[i]
        pairs = frozenset((permutation[a], permutation[b]) for a, b in self.attacks)
        return ArgumentationFramework(tuple(names), pairs)


def _union_mask(af: ArgumentationFramework, s: ArgSet, masks: Tuple[int, ...]) -> ArgSet:
    af.check_set(s)
    bits = 0
    for i in s:
        bits |= masks[i]
    return ArgSet(bits)


def attackers(af: ArgumentationFramework, s: ArgSet) -> ArgSet:
    """R⁻(S): arguments attacking some member of S."""
    return _union_mask(af, s, af._attackers)


def attacked_by(af: ArgumentationFramework, s: ArgSet) -> ArgSet:
    """R⁺(S): arguments attacked by some member of S."""
    return _union_mask(af, s, af._targets)


def defenders_of(af: ArgumentationFramework, x: ArgRef) -> ArgSet:
    i = af.index_of(x)
    return attackers(af, attackers(af, ArgSet(1 << i)))


def is_conflict_free(af: ArgumentationFramework, s: ArgSet) -> bool:
    return not (s & attacked_by(af, s))


def defends(af: ArgumentationFramework, s: ArgSet, x: ArgRef) -> bool:
    i = af.index_of(x)
    return ArgSet(af.attacker_mask(i)).issubset(attacked_by(af, s))


def component_sets(af: ArgumentationFramework) -> List[ArgSet]:
    """Weakly connected components as index sets, ordered by smallest member."""
    seen = 0
    out: List[ArgSet] = []
    for start in range(af.n):
        if seen >> start & 1:
            continue
        comp = 1 << start
        queue = deque([start])
        while queue:
            i = queue.popleft()
            nbrs = (af.attacker_mask(i) | af.target_mask(i)) & ~comp
            comp |= nbrs
            queue.extend(iter_bits(nbrs))
        seen |= comp
        out.append(ArgSet(comp))
    return out


def weak_connected_components(af: ArgumentationFramework) -> List[ArgumentationFramework]:
    return [af.induced(c) for c in component_sets(af)]


def build_attack_matrix(af: ArgumentationFramework) -> AttackMatrix:
    return af.matrix


__all__ = [
    "ArgRef",
    "ArgSet",
    "EMPTY",
    "AttackMatrix",
    "ArgumentationFramework",
    "iter_bits",
    "attackers",
    "attacked_by",
    "defenders_of",
    "is_conflict_free",
    "defends",
    "component_sets",
    "weak_connected_components",
    "build_attack_matrix",
]
