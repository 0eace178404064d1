from __future__ import annotations

import argparse
import json
from pathlib import Path
from typing import Any, Dict, Iterable, Optional, Sequence

from core.events import configure, log_event
from core.formats import write_apx
from core.framework import ArgumentationFramework
from core.generator import Trial, random_frameworks

from .axioms import PAIR_AXIOMS, Axiom, AxiomReport, audit, check_axiom, check_independence, valuation_for
from .config import get_survey_settings
from .ranking import derive_ranking

# axioms each valuation is known to satisfy; a violation of one of these is a defect
EXPECTED = {
    "counting": (Axiom.AB, Axiom.VP, Axiom.DP, Axiom.CT, Axiom.SCT),
    "categoriser": (Axiom.AB, Axiom.IN, Axiom.VP, Axiom.DP, Axiom.CT, Axiom.SCT),
}

AXIOM_ORDER = (Axiom.AB, Axiom.IN) + PAIR_AXIOMS


def twin_trees_framework(variant: bool = False) -> ArgumentationFramework:
    """Two disjoint five-argument trees whose roots tie under the counting semantics.

    Left: x2, x3 attack x1; x4 attacks x2; x5 attacks x3 (simple, distributed defense).
    Right: y2, y3 attack y1; y4, y5 attack y2 (simple, not distributed).
    The variant adds x6 attacking x4, which pushes x1 below y1.
    """
    left = ["x1", "x2", "x3", "x4", "x5"] + (["x6"] if variant else [])
    right = ["y1", "y2", "y3", "y4", "y5"]
    attacks = [
        ("x2", "x1"), ("x3", "x1"), ("x4", "x2"), ("x5", "x3"),
        ("y2", "y1"), ("y3", "y1"), ("y4", "y2"), ("y5", "y2"),
    ]
    if variant:
        attacks.append(("x6", "x4"))
    return ArgumentationFramework.from_names(left + right, attacks)


def star_chain_framework() -> ArgumentationFramework:
    """Three attackers on t (N=3) beside a single attack c -> b (N=1)."""
    return ArgumentationFramework.from_names(
        ["a1", "a2", "a3", "t", "c", "b"],
        [("a1", "t"), ("a2", "t"), ("a3", "t"), ("c", "b")],
    )


def _fixture_reports(alpha: float, tie_tol: float, valuation: str) -> Dict[str, Any]:
    value = valuation_for(valuation, alpha)
    out: Dict[str, Any] = {}
    for key, af in (("twin_trees", twin_trees_framework()), ("twin_trees_variant", twin_trees_framework(variant=True))):
        v = value(af)
        ranking = derive_ranking(v, tie_tol, af.arguments)
        out[f"{key}_ddp"] = check_axiom(af, ranking, Axiom.DDP).to_dict()
        out[f"{key}_ddp"]["values"] = {"x1": v[af.index_of("x1")], "y1": v[af.index_of("y1")]}
    out["star_chain_in"] = check_independence(star_chain_framework(), alpha, tie_tol, valuation).to_dict()
    return out


def _empty_row() -> Dict[str, Any]:
    return {
        "instances": 0,
        "violated_instances": 0,
        "pairs_checked": 0,
        "pair_violations": 0,
        "counterexamples": [],
    }


def axiom_survey(
    trials: Optional[int] = None,
    seed: Optional[int] = None,
    alpha: Optional[float] = None,
    tie_tol: Optional[float] = None,
    valuation: str = "counting",
    generator_config: Optional[Dict[str, Any]] = None,
    store_limit: Optional[int] = None,
    frameworks: Optional[Iterable[Trial]] = None,
) -> Dict[str, Any]:
    """Audit every axiom over a seeded stream of random frameworks."""
    st = get_survey_settings()
    trials = st.TRIALS if trials is None else int(trials)
    seed = st.SEED if seed is None else int(seed)
    alpha = st.ALPHA if alpha is None else float(alpha)
    tie_tol = st.TIE_TOL if tie_tol is None else float(tie_tol)
    store_limit = st.STORE_LIMIT if store_limit is None else int(store_limit)
    gen = dict(st.generator_config())
    gen.update(generator_config or {})
    if valuation not in EXPECTED:
        raise ValueError(f"unknown valuation {valuation!r}")

    log_event("survey", "start", meta={"trials": trials, "seed": seed, "alpha": alpha, "valuation": valuation})
    rows = {axiom: _empty_row() for axiom in AXIOM_ORDER}
    stream = frameworks if frameworks is not None else random_frameworks(trials, seed, **gen)

    count = 0
    for trial in stream:
        count += 1
        reports = audit(trial.af, alpha, tie_tol, valuation, seed=trial.seed)
        for axiom, rep in reports.items():
            _accumulate(rows[axiom], rep, trial, store_limit)

    expected = EXPECTED[valuation]
    unexpected = [a.value for a in expected if rows[a]["violated_instances"]]
    report = {
        "seed": seed,
        "trials": count,
        "alpha": alpha if valuation == "counting" else None,
        "tie_tol": tie_tol,
        "valuation": valuation,
        "generator": gen,
        "axioms": {a.value: rows[a] for a in AXIOM_ORDER},
        "fixtures": _fixture_reports(alpha, tie_tol, valuation),
        "expected_to_hold": [a.value for a in expected],
        "unexpected_violations": unexpected,
        "ok": not unexpected,
    }
    log_event(
        "survey",
        "finish",
        level="warning" if unexpected else "info",
        meta={"trials": count, "unexpected": unexpected},
    )
    return report


def _accumulate(row: Dict[str, Any], rep: AxiomReport, trial: Trial, store_limit: int) -> None:
    row["instances"] += 1
    row["pairs_checked"] += rep.checked
    row["pair_violations"] += len(rep.violations)
    if rep.holds:
        return
    row["violated_instances"] += 1
    if len(row["counterexamples"]) >= store_limit:
        return
    row["counterexamples"].append(
        {
            "trial": trial.index,
            "n": trial.n,
            "p": trial.p,
            "seed": trial.seed,
            "apx": write_apx(trial.af),
            "witness": rep.violations[0],
        }
    )
    log_event("survey", "counterexample stored", meta={"axiom": rep.axiom.value, "trial": trial.index, "seed": trial.seed})


def write_report(report: Dict[str, Any], out_dir: Optional[Path] = None) -> Path:
    out_dir = Path(out_dir) if out_dir is not None else get_survey_settings().REPORTS_DIR
    out_dir.mkdir(parents=True, exist_ok=True)
    out_path = out_dir / f"survey_{report['seed']}.json"
    with out_path.open("w", encoding="utf-8") as f:
        json.dump(report, f, ensure_ascii=False, indent=2)
    return out_path


def format_summary(report: Dict[str, Any]) -> str:
    expected = set(report.get("expected_to_hold", []))
    lines = [f"{'axiom':<6} {'instances':>9} {'violated':>9} {'stored':>7}  expectation"]
    for name, row in report["axioms"].items():
        status = "holds" if name in expected else "may fail"
        lines.append(
            f"{name:<6} {row['instances']:>9} {row['violated_instances']:>9} {len(row['counterexamples']):>7}  {status}"
        )
    for key, fixture in report.get("fixtures", {}).items():
        lines.append(f"fixture {key}: {fixture['verdict']}")
    if report.get("unexpected_violations"):
        lines.append("unexpected violations: " + ", ".join(report["unexpected_violations"]))
    return "\n".join(lines) + "\n"


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = argparse.ArgumentParser(description="Run the axiom survey over random frameworks and write a JSON report")
    parser.add_argument("--trials", type=int, default=None)
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--alpha", type=float, default=None)
    parser.add_argument("--valuation", choices=sorted(EXPECTED), default="counting")
    parser.add_argument("--out-dir", type=str, default=None)
    parser.add_argument("-v", "--verbose", action="count", default=0)
    args = parser.parse_args(argv)
    configure(args.verbose)
    report = axiom_survey(trials=args.trials, seed=args.seed, alpha=args.alpha, valuation=args.valuation)
    write_report(report, Path(args.out_dir) if args.out_dir else None)
    print(format_summary(report), end="")
    return 0 if report["ok"] else 1


__all__ = [
    "EXPECTED",
    "twin_trees_framework",
    "star_chain_framework",
    "axiom_survey",
    "write_report",
    "format_summary",
    "main",
]


if __name__ == "__main__":
    raise SystemExit(main())

