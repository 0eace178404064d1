"""Axiom audits for rankings over one framework.

Each check scans every ordered pair (x, y) meeting the axiom's antecedent and
records the pairs where the consequent fails. A report is "violated" only with
at least one concrete witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Any, Callable, Dict, List, Optional

import numpy as np

from core.counting import StrengthVector, categoriser_valuation, solve_counting_direct
from core.framework import ArgSet, ArgumentationFramework, component_sets, iter_bits

from .ranking import Ranking, derive_ranking, group_compare

HOLDS = "holds-on-instance"
VIOLATED = "violated"

# audits compare exact fixpoints, so ties only absorb float noise
AUDIT_TIE_TOL = 1e-9
CATEGORISER_EPSILON = 1e-12


class Axiom(str, Enum):
    AB = "Ab"
    IN = "In"
    VP = "VP"
    DP = "DP"
    CT = "CT"
    SCT = "SCT"
    CP = "CP"
    QP = "QP"
    DDP = "DDP"

    @classmethod
    def parse(cls, value: "str | Axiom") -> "Axiom":
        if isinstance(value, cls):
            return value
        for member in cls:
            if member.value.lower() == str(value).strip().lower():
                return member
        raise ValueError(f"unknown axiom {value!r}")


PAIR_AXIOMS = (Axiom.VP, Axiom.DP, Axiom.CT, Axiom.SCT, Axiom.CP, Axiom.QP, Axiom.DDP)


@dataclass
class AxiomReport:
    axiom: Axiom
    violations: List[Dict[str, Any]] = field(default_factory=list)
    checked: int = 0

    @property
    def verdict(self) -> str:
        return VIOLATED if self.violations else HOLDS

    @property
    def holds(self) -> bool:
        return not self.violations

    def to_dict(self) -> Dict[str, Any]:
        return {
            "axiom": self.axiom.value,
            "verdict": self.verdict,
            "checked": self.checked,
            "violations": self.violations,
        }


Valuation = Callable[[ArgumentationFramework], StrengthVector]


def valuation_for(kind: str = "counting", alpha: float = 0.98) -> Valuation:
    """Exact-enough valuation used by the audits: direct solve or tight categoriser."""
    if kind == "counting":
        return lambda af: solve_counting_direct(af.matrix, alpha)
    if kind == "categoriser":
        return lambda af: categoriser_valuation(af.matrix, epsilon=CATEGORISER_EPSILON)
    raise ValueError(f"unknown valuation {kind!r}")


class _Pairs:
    """Neighbourhood data the pair axioms share."""

    def __init__(self, af: ArgumentationFramework) -> None:
        self.af = af
        self.att = [af.attacker_mask(i) for i in range(af.n)]
        self.hits = [af.target_mask(i) for i in range(af.n)]
        self.defenders = []
        for i in range(af.n):
            d = 0
            for a in iter_bits(self.att[i]):
                d |= self.att[a]
            self.defenders.append(d)

    @staticmethod
    def size(bits: int) -> int:
        return bin(bits).count("1")

    def simple(self, x: int) -> bool:
        return all(self.size(self.hits[d] & self.att[x]) == 1 for d in iter_bits(self.defenders[x]))

    def distributed(self, x: int) -> bool:
        return all(self.att[a] != 0 for a in iter_bits(self.att[x]))


def _witness(af: ArgumentationFramework, ranking: Ranking, x: int, y: int, **extra: Any) -> Dict[str, Any]:
    out: Dict[str, Any] = {
        "x": af.arguments[x],
        "y": af.arguments[y],
        "v_x": ranking.values[x],
        "v_y": ranking.values[y],
    }
    out.update(extra)
    return out


def check_axiom(af: ArgumentationFramework, ranking: Ranking, axiom: "str | Axiom") -> AxiomReport:
    axiom = Axiom.parse(axiom)
    if axiom not in PAIR_AXIOMS:
        raise ValueError(f"{axiom.value} needs the framework-level checks, not a fixed ranking")
    if len(ranking) != af.n:
        raise ValueError("ranking and framework disagree on the number of arguments")

    p = _Pairs(af)
    report = AxiomReport(axiom)
    size = p.size
    names = af.arguments

    for x in range(af.n):
        for y in range(af.n):
            if x == y:
                continue
            ax, ay = p.att[x], p.att[y]

            if axiom is Axiom.VP:
                if ax == 0 and ay != 0:
                    report.checked += 1
                    if not ranking.gt(x, y):
                        report.violations.append(_witness(af, ranking, x, y))

            elif axiom is Axiom.DP:
                if size(ax) == size(ay) and p.defenders[x] and not p.defenders[y]:
                    report.checked += 1
                    if not ranking.gt(x, y):
                        report.violations.append(_witness(af, ranking, x, y))

            elif axiom in (Axiom.CT, Axiom.SCT):
                cmp = group_compare(ranking, iter_bits(ay), iter_bits(ax))
                if axiom is Axiom.CT and cmp.weak:
                    report.checked += 1
                    if not ranking.geq(x, y):
                        report.violations.append(_witness(af, ranking, x, y, mapping=_named(names, cmp.witness)))
                elif axiom is Axiom.SCT and cmp.strict:
                    report.checked += 1
                    if not ranking.gt(x, y):
                        report.violations.append(_witness(af, ranking, x, y, mapping=_named(names, cmp.witness)))

            elif axiom is Axiom.CP:
                if size(ax) < size(ay):
                    report.checked += 1
                    if not ranking.gt(x, y):
                        report.violations.append(
                            _witness(af, ranking, x, y, attackers_x=size(ax), attackers_y=size(ay))
                        )

            elif axiom is Axiom.QP:
                # an unattacked x would make the inner quantifier vacuous
                if not ax:
                    continue
                strong = [
                    yp for yp in iter_bits(ay) if all(ranking.gt(yp, xp) for xp in iter_bits(ax))
                ]
                if strong:
                    report.checked += 1
                    if not ranking.gt(x, y):
                        report.violations.append(_witness(af, ranking, x, y, strong_attacker=names[strong[0]]))

            elif axiom is Axiom.DDP:
                if size(ax) != size(ay) or size(p.defenders[x]) != size(p.defenders[y]):
                    continue
                if p.simple(x) and p.distributed(x) and p.simple(y) and not p.distributed(y):
                    report.checked += 1
                    if not ranking.gt(x, y):
                        report.violations.append(_witness(af, ranking, x, y))

    return report


def _named(names, mapping: Optional[Dict[int, int]]) -> Dict[str, str]:
    return {names[k]: names[v] for k, v in (mapping or {}).items()}


def check_abstraction(
    af: ArgumentationFramework,
    alpha: float = 0.98,
    seed: int = 0,
    tie_tol: float = AUDIT_TIE_TOL,
    valuation: str = "counting",
    permutation: Optional[List[int]] = None,
) -> AxiomReport:
    """Relabel af by a seeded random permutation and compare the two rankings pairwise."""
    value = valuation_for(valuation, alpha)
    if permutation is None:
        rng = np.random.Generator(np.random.PCG64(seed))
        permutation = [int(i) for i in rng.permutation(af.n)]
    image = af.relabel(permutation)

    before = derive_ranking(value(af), tie_tol, af.arguments)
    after = derive_ranking(value(image), tie_tol, image.arguments)
    report = AxiomReport(Axiom.AB)
    for x in range(af.n):
        for y in range(af.n):
            if x == y:
                continue
            report.checked += 1
            if before.cmp(x, y) != after.cmp(permutation[x], permutation[y]):
                report.violations.append(
                    {
                        "x": af.arguments[x],
                        "y": af.arguments[y],
                        "original": before.cmp(x, y).name,
                        "relabelled": after.cmp(permutation[x], permutation[y]).name,
                        "permutation": list(permutation),
                    }
                )
    return report


def _local_values(af: ArgumentationFramework, parts: List[ArgSet], value: Valuation) -> np.ndarray:
    """Each argument's strength when its part is valued on its own."""
    out = np.zeros(af.n, dtype=float)
    for part in parts:
        members = part.indices()
        local = value(af.induced(part)).values
        for k, i in enumerate(members):
            out[i] = local[k]
    return out


def check_independence(
    af: ArgumentationFramework,
    alpha: float = 0.98,
    tie_tol: float = AUDIT_TIE_TOL,
    valuation: str = "counting",
) -> AxiomReport:
    """Compare the full ranking with rankings computed on components and their unions.

    Three families of pairs: both arguments in one component, arguments in two
    different components each valued in its own component, and (with three or
    more components) pairs inside a union of two components.
    """
    value = valuation_for(valuation, alpha)
    report = AxiomReport(Axiom.IN)
    comps = component_sets(af)
    if len(comps) < 2:
        return report

    full = derive_ranking(value(af), tie_tol, af.arguments)
    local = derive_ranking(_local_values(af, comps, value), tie_tol, af.arguments)
    comp_of = {}
    for c, comp in enumerate(comps):
        for i in comp:
            comp_of[i] = c

    def compare(ref: Ranking, x: int, y: int, scope: str) -> None:
        report.checked += 1
        if full.cmp(x, y) != ref.cmp(x, y):
            report.violations.append(
                {
                    "x": af.arguments[x],
                    "y": af.arguments[y],
                    "scope": scope,
                    "full": full.cmp(x, y).name,
                    "restricted": ref.cmp(x, y).name,
                    "v_full": [full.values[x], full.values[y]],
                    "v_restricted": [ref.values[x], ref.values[y]],
                }
            )

    for x in range(af.n):
        for y in range(x + 1, af.n):
            scope = "component" if comp_of[x] == comp_of[y] else "across-components"
            compare(local, x, y, scope)

    if len(comps) >= 3:
        for a, b in combinations(range(len(comps)), 2):
            union = comps[a] | comps[b]
            members = union.indices()
            sub = value(af.induced(union)).values
            values = np.full(af.n, np.nan)
            for k, i in enumerate(members):
                values[i] = sub[k]
            ref = derive_ranking(np.nan_to_num(values, nan=-1.0), tie_tol, af.arguments)
            for x, y in combinations(members, 2):
                compare(ref, x, y, f"union:{a}+{b}")
    return report


def audit(
    af: ArgumentationFramework,
    alpha: float = 0.98,
    tie_tol: float = AUDIT_TIE_TOL,
    valuation: str = "counting",
    seed: int = 0,
) -> Dict[Axiom, AxiomReport]:
    """Every axiom on one framework."""
    value = valuation_for(valuation, alpha)
    ranking = derive_ranking(value(af), tie_tol, af.arguments)
    reports: Dict[Axiom, AxiomReport] = {
        Axiom.AB: check_abstraction(af, alpha, seed, tie_tol, valuation),
        Axiom.IN: check_independence(af, alpha, tie_tol, valuation),
    }
    for axiom in PAIR_AXIOMS:
        reports[axiom] = check_axiom(af, ranking, axiom)
    return reports


__all__ = [
    "Axiom",
    "AxiomReport",
    "PAIR_AXIOMS",
    "HOLDS",
    "VIOLATED",
    "AUDIT_TIE_TOL",
    "valuation_for",
    "check_axiom",
    "check_abstraction",
    "check_independence",
    "audit",
]
