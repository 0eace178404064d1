"""Brute-force enumeration of Dung's semantics.

Every subset is visited in ascending bitset order, so the output order is
deterministic. This is an oracle for the boolean layer, not a solver: the
subset scan is refused above the configured cap.
"""

from __future__ import annotations

from enum import Enum
from typing import List, Optional

from .config import get_settings
from .errors import SizeCapError
from .events import log_event
from .framework import ArgSet, ArgumentationFramework, iter_bits


class SemanticsKind(str, Enum):
    CONFLICT_FREE = "conflict-free"
    ADMISSIBLE = "admissible"
    COMPLETE = "complete"
    GROUNDED = "grounded"
    PREFERRED = "preferred"
    STABLE = "stable"

    @classmethod
    def parse(cls, value: "str | SemanticsKind") -> "SemanticsKind":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("_", "-")
        if key == "cf":
            key = "conflict-free"
        return cls(key)


class AcceptanceMode(str, Enum):
    CREDULOUS = "credulous"
    SKEPTICAL = "skeptical"


class _Scanner:
    """Bitmask predicates of one framework, shared across the subset scan."""

    def __init__(self, af: ArgumentationFramework) -> None:
        self.n = af.n
        self.full = (1 << af.n) - 1
        self.attackers = [af.attacker_mask(i) for i in range(af.n)]
        self.targets = [af.target_mask(i) for i in range(af.n)]

    def hit(self, s: int) -> int:
        out = 0
        for i in iter_bits(s):
            out |= self.targets[i]
        return out

    def defended(self, s: int) -> int:
        hit = self.hit(s)
        out = 0
        for i in range(self.n):
            if self.attackers[i] & ~hit == 0:
                out |= 1 << i
        return out

    def conflict_free(self, s: int) -> bool:
        return self.hit(s) & s == 0

    def admissible(self, s: int) -> bool:
        return self.conflict_free(s) and s & ~self.defended(s) == 0

    def complete(self, s: int) -> bool:
        return self.conflict_free(s) and self.defended(s) == s

    def stable(self, s: int) -> bool:
        return self.conflict_free(s) and s == self.full & ~self.hit(s)

    def grounded(self) -> int:
        s = 0
        while True:
            nxt = self.defended(s)
            if nxt == s:
                return s
            s = nxt


def _check_cap(af: ArgumentationFramework, cap: Optional[int]) -> None:
    cap = get_settings().enum_cap if cap is None else cap
    if af.n > cap:
        raise SizeCapError(af.n, cap, "extension enumeration")


def _maximal(sets: List[int]) -> List[int]:
    return [s for s in sets if not any(t != s and s & ~t == 0 for t in sets)]


def _minimal(sets: List[int]) -> List[int]:
    return [s for s in sets if not any(t != s and t & ~s == 0 for t in sets)]


def enumerate_extensions(
    af: ArgumentationFramework,
    kind: "str | SemanticsKind",
    cap: Optional[int] = None,
) -> List[ArgSet]:
    kind = SemanticsKind.parse(kind)
    _check_cap(af, cap)
    scan = _Scanner(af)
    subsets = range(1 << af.n)

    if kind is SemanticsKind.CONFLICT_FREE:
        found = [s for s in subsets if scan.conflict_free(s)]
    elif kind is SemanticsKind.ADMISSIBLE:
        found = [s for s in subsets if scan.admissible(s)]
    elif kind is SemanticsKind.STABLE:
        found = [s for s in subsets if scan.stable(s)]
    else:
        complete = [s for s in subsets if scan.complete(s)]
        if kind is SemanticsKind.COMPLETE:
            found = complete
        elif kind is SemanticsKind.PREFERRED:
            found = _maximal(complete)
        else:
            found = _minimal(complete)

    log_event("extensions", "enumerated", meta={"n": af.n, "kind": kind.value, "count": len(found)})
    return [ArgSet(s) for s in found]


def verify(af: ArgumentationFramework, kind: "str | SemanticsKind", s: ArgSet) -> bool:
    kind = SemanticsKind.parse(kind)
    af.check_set(s)
    scan = _Scanner(af)
    bits = s.bits
    if kind is SemanticsKind.CONFLICT_FREE:
        return scan.conflict_free(bits)
    if kind is SemanticsKind.ADMISSIBLE:
        return scan.admissible(bits)
    if kind is SemanticsKind.COMPLETE:
        return scan.complete(bits)
    if kind is SemanticsKind.STABLE:
        return scan.stable(bits)
    if kind is SemanticsKind.GROUNDED:
        return bits == scan.grounded()
    # preferred: complete, and no complete strict superset
    if not scan.complete(bits):
        return False
    rest = scan.full & ~bits
    extra = rest
    while extra:
        if scan.complete(bits | extra):
            return False
        extra = (extra - 1) & rest
    return True


def acceptance(
    af: ArgumentationFramework,
    kind: "str | SemanticsKind",
    mode: "str | AcceptanceMode" = AcceptanceMode.CREDULOUS,
    cap: Optional[int] = None,
) -> ArgSet:
    """Credulous: union of the extensions. Skeptical: their intersection."""
    mode = AcceptanceMode(mode)
    exts = enumerate_extensions(af, kind, cap)
    if mode is AcceptanceMode.CREDULOUS:
        bits = 0
        for e in exts:
            bits |= e.bits
        return ArgSet(bits)
    bits = af.full.bits
    for e in exts:
        bits &= e.bits
    return ArgSet(bits)


__all__ = [
    "SemanticsKind",
    "AcceptanceMode",
    "enumerate_extensions",
    "verify",
    "acceptance",
]
