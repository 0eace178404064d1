"""
Outil en ligne de commande pour la sémantique de comptage des systèmes
d'argumentation abstraits.

Usage :
    python main.py solve data/sample.apx --alpha 0.98 --epsilon 1e-3
    python main.py rank data/sample.apx --alphas 0.5,0.9,0.98
    python main.py extensions data/sample.apx --kind preferred
    python main.py grounded data/sample.apx
    python main.py estimate --epsilon 1e-5 --alpha 0.98 --rho 1
    python main.py axioms data/twin_trees.apx
    python main.py axioms --survey --trials 1000 --seed 7
    python main.py compare data/sample.apx --output csv
    python main.py generate --n 6 --p 0.25 --seed 42

Codes de sortie : 0 succès, 1 erreur d'usage ou de lecture, 2 non-convergence
numérique, 3 limite de taille dépassée.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Callable, Dict, List, Literal, Optional, Sequence

from pydantic import BaseModel, ValidationError, field_validator

from core.boolean import grounded_fixpoint, grounded_trajectory
from core.config import get_settings
from core.counting import (
    categoriser_valuation,
    estimate_iterations,
    iteration_curve,
    max_alpha_for_budget,
    ranking_sweep,
    solve_counting,
    solve_counting_direct,
    spectral_radius,
)
from core.errors import (
    ConvergenceError,
    CountOverflowError,
    CountingError,
    EstimateError,
    ParseError,
    SizeCapError,
)
from core.events import configure, log_event
from core.extensions import SemanticsKind, acceptance, enumerate_extensions
from core.formats import emit_csv, emit_extensions, emit_results, emit_table, load_framework, write_apx, write_tgf
from core.framework import ArgSet, ArgumentationFramework
from core.generator import generate_random
from evaluator.axioms import AUDIT_TIE_TOL, audit
from evaluator.ranking import derive_ranking, pair_agreement
from evaluator.survey import axiom_survey, format_summary, write_report

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NO_CONVERGENCE = 2
EXIT_SIZE_CAP = 3

ALPHA_GUIDANCE = "alpha must lie strictly between 0 and 1; values in [0.90, 0.98] are the usual choice"


class RunConfig(BaseModel):
    """Paramètres validés d'une exécution."""

    input: Optional[str] = None
    fmt: Literal["apx", "tgf", "auto"] = "auto"
    alpha: float = 0.98
    epsilon: float = 1e-3
    max_iter: Optional[int] = None
    tie_tol: Optional[float] = None
    output: Literal["json", "csv", "table"] = "table"
    seed: Optional[int] = None
    kinds: List[str] = []
    direct: bool = False

    @field_validator("alpha")
    @classmethod
    def _alpha_range(cls, v: float) -> float:
        if not 0.0 < v < 1.0:
            raise ValueError(ALPHA_GUIDANCE)
        return v

    @field_validator("epsilon")
    @classmethod
    def _epsilon_positive(cls, v: float) -> float:
        if not v > 0.0:
            raise ValueError("epsilon must be positive")
        return v

    @field_validator("max_iter")
    @classmethod
    def _max_iter_positive(cls, v: Optional[int]) -> Optional[int]:
        if v is not None and v < 1:
            raise ValueError("max_iter must be at least 1")
        return v

    @field_validator("tie_tol")
    @classmethod
    def _tie_tol_non_negative(cls, v: Optional[float]) -> Optional[float]:
        if v is not None and v < 0:
            raise ValueError("tie_tol must be non-negative")
        return v

    @property
    def resolved_tie_tol(self) -> float:
        return self.tie_tol if self.tie_tol is not None else 10.0 * self.epsilon

    def framework(self) -> ArgumentationFramework:
        if self.input is None:
            raise CountingError("an input file (or '-' for standard input) is required")
        return load_framework(self.input, self.fmt)


class _Parser(argparse.ArgumentParser):
    """argparse quitte avec 2 par défaut ; ici 2 signifie non-convergence."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _floats(text: str) -> List[float]:
    try:
        return [float(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        input=getattr(args, "input", None),
        fmt=getattr(args, "format", "auto"),
        alpha=args.alpha if getattr(args, "alpha", None) is not None else get_settings().alpha,
        epsilon=args.epsilon if getattr(args, "epsilon", None) is not None else get_settings().epsilon,
        max_iter=getattr(args, "max_iter", None),
        tie_tol=getattr(args, "tie_tol", None) if getattr(args, "tie_tol", None) is not None else get_settings().tie_tol,
        output=getattr(args, "output", "table"),
        seed=getattr(args, "seed", None),
        kinds=list(getattr(args, "kind", None) or []),
        direct=bool(getattr(args, "direct", False)),
    )


def _strengths(config: RunConfig, af: ArgumentationFramework):
    if config.direct:
        return solve_counting_direct(af.matrix, config.alpha)
    return solve_counting(af.matrix, config.alpha, config.epsilon, config.max_iter)


def _named(af: ArgumentationFramework, s: ArgSet) -> str:
    return "{" + ",".join(af.names(s)) + "}"


def cmd_solve(config: RunConfig) -> int:
    af = config.framework()
    strengths = _strengths(config, af)
    ranking = derive_ranking(strengths, config.resolved_tie_tol, af.arguments)
    extensions = None
    if config.kinds:
        extensions = {SemanticsKind.parse(k).value: enumerate_extensions(af, k) for k in config.kinds}
    if config.output == "json":
        print(emit_results(af, strengths, ranking, extensions), end="")
    elif config.output == "csv":
        print(emit_csv(af, strengths), end="")
    else:
        print(emit_table(af, strengths, ranking), end="")
        for kind, sets in (extensions or {}).items():
            print(f"{kind}: " + (" ".join(_named(af, s) for s in sets) if sets else "none"))
    return EXIT_OK


def cmd_rank(config: RunConfig, alphas: Optional[List[float]] = None, valuation: str = "counting") -> int:
    af = config.framework()
    if valuation == "categoriser":
        rows = {None: categoriser_valuation(af.matrix, config.epsilon, config.max_iter)}
    elif alphas:
        for a in alphas:
            RunConfig(alpha=a)  # validates each value
        rows = ranking_sweep(af.matrix, alphas)
    else:
        rows = {config.alpha: _strengths(config, af)}

    report = []
    for alpha, strengths in rows.items():
        ranking = derive_ranking(strengths, config.resolved_tie_tol, af.arguments)
        report.append({"alpha": alpha, "ranking": ranking.named_groups()})
    if config.output == "json":
        print(json.dumps(report, ensure_ascii=False, indent=2))
        return EXIT_OK
    for row in report:
        line = " > ".join(" ~ ".join(g) for g in row["ranking"])
        print(line if row["alpha"] is None or len(report) == 1 else f"alpha={row['alpha']}: {line}")
    return EXIT_OK


def cmd_extensions(config: RunConfig, grounded_via: str = "brute", mode: Optional[str] = None) -> int:
    af = config.framework()
    kinds = [SemanticsKind.parse(k) for k in config.kinds] or list(SemanticsKind)
    found: Dict[str, List[ArgSet]] = {}
    for kind in kinds:
        if kind is SemanticsKind.GROUNDED and grounded_via == "boolean":
            found[kind.value] = [grounded_fixpoint(af.matrix).to_arg_set()]
        else:
            found[kind.value] = enumerate_extensions(af, kind)

    accepted: Dict[str, ArgSet] = {}
    if mode:
        accepted = {kind.value: acceptance(af, kind, mode) for kind in kinds}

    if config.output == "json":
        if not accepted:
            print(emit_extensions(af, found), end="")
        else:
            payload = json.loads(emit_extensions(af, found))
            payload["acceptance"] = {"mode": mode, "accepted": {k: af.names(s) for k, s in accepted.items()}}
            print(json.dumps(payload, ensure_ascii=False, indent=2))
        return EXIT_OK
    for kind, sets in found.items():
        print(f"{kind}: " + (" ".join(_named(af, s) for s in sets) if sets else "none"))
    for kind, s in accepted.items():
        print(f"{mode} {kind}: {_named(af, s)}")
    return EXIT_OK


def cmd_grounded(config: RunConfig) -> int:
    af = config.framework()
    path = grounded_trajectory(af.matrix)
    if config.output == "json":
        payload = {
            "arguments": list(af.arguments),
            "trajectory": [af.names(g.to_arg_set()) for g in path],
            "grounded": af.names(path[-1].to_arg_set()),
        }
        print(json.dumps(payload, ensure_ascii=False, indent=2))
        return EXIT_OK
    for k, g in enumerate(path):
        print(f"g({k}) = {_named(af, g.to_arg_set())}")
    print(f"grounded: {_named(af, path[-1].to_arg_set())}")
    return EXIT_OK


def cmd_estimate(
    config: RunConfig,
    rho: Optional[float] = None,
    measure_rho: bool = False,
    curve: Optional[List[float]] = None,
    budget: Optional[int] = None,
) -> int:
    if measure_rho:
        rho = spectral_radius(config.framework().matrix)
    rho = 1.0 if rho is None else rho
    if curve:
        rows = iteration_curve(config.epsilon, curve, rho)
        if config.output == "json":
            print(json.dumps([{"alpha": e.alpha, "k_max": e.k_max, "iterations": e.iterations} for e in rows], indent=2))
            return EXIT_OK
        print(f"{'alpha':>6}  {'k_max':>10}  iterations")
        for e in rows:
            print(f"{e.alpha:>6.3f}  {e.k_max:>10.2f}  {e.iterations}")
        return EXIT_OK

    est = estimate_iterations(config.epsilon, config.alpha, rho)
    best = max_alpha_for_budget(config.epsilon, budget, rho) if budget else None
    if config.output == "json":
        payload = {"epsilon": est.epsilon, "alpha": est.alpha, "rho": est.rho, "k_max": est.k_max, "iterations": est.iterations}
        if best is not None:
            payload["max_alpha_for_budget"] = best
        print(json.dumps(payload, indent=2))
        return EXIT_OK
    print(f"rho: {est.rho:.6f}")
    print(f"k_max: {est.k_max:.2f}")
    print(f"iterations: {est.iterations}")
    if best is not None:
        print(f"largest alpha within {budget} iterations: {best:.5f}")
    return EXIT_OK


def cmd_axioms(
    config: RunConfig,
    survey: bool = False,
    trials: Optional[int] = None,
    valuation: str = "counting",
    out_dir: Optional[str] = None,
) -> int:
    tie_tol = config.tie_tol if config.tie_tol is not None else AUDIT_TIE_TOL
    if survey:
        report = axiom_survey(trials=trials, seed=config.seed, alpha=config.alpha, tie_tol=tie_tol, valuation=valuation)
        path = write_report(report, Path(out_dir) if out_dir else None)
        log_event("cli", "survey report written", meta={"path": str(path)})
        if config.output == "json":
            print(json.dumps(report, ensure_ascii=False, indent=2))
        else:
            print(format_summary(report), end="")
        return EXIT_OK if report["ok"] else EXIT_USAGE

    af = config.framework()
    reports = audit(af, config.alpha, tie_tol, valuation, seed=config.seed or 0)
    if config.output == "json":
        print(json.dumps({a.value: r.to_dict() for a, r in reports.items()}, ensure_ascii=False, indent=2))
        return EXIT_OK
    for axiom, rep in reports.items():
        line = f"{axiom.value:<4} {rep.verdict}"
        if rep.violations:
            w = rep.violations[0]
            line += f" ({w['x']}, {w['y']})"
            if len(rep.violations) > 1:
                line += f" +{len(rep.violations) - 1} more"
        print(line)
    return EXIT_OK


def cmd_compare(config: RunConfig) -> int:
    af = config.framework()
    counting = _strengths(config, af)
    categoriser = categoriser_valuation(af.matrix, config.epsilon, config.max_iter)
    first = derive_ranking(counting, config.resolved_tie_tol, af.arguments)
    second = derive_ranking(categoriser, config.resolved_tie_tol, af.arguments)
    agreement = pair_agreement(first, second)

    if config.output == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["argument", "counting", "categoriser"])
        for i, name in enumerate(af.arguments):
            writer.writerow([name, repr(counting[i]), repr(categoriser[i])])
        print(buf.getvalue(), end="")
        return EXIT_OK
    if config.output == "json":
        payload = {
            "arguments": list(af.arguments),
            "counting": counting.as_dict(af.arguments),
            "categoriser": categoriser.as_dict(af.arguments),
            "rankings": {"counting": first.named_groups(), "categoriser": second.named_groups()},
            "agreement": agreement,
        }
        print(json.dumps(payload, ensure_ascii=False, indent=2))
        return EXIT_OK
    width = max([len("argument")] + [len(a) for a in af.arguments])
    print(f"{'argument':<{width}}  counting  categoriser")
    for i, name in enumerate(af.arguments):
        print(f"{name:<{width}}  {counting[i]:>8.2f}  {categoriser[i]:>11.2f}")
    print(f"counting:    {first}")
    print(f"categoriser: {second}")
    print(f"agreement: {agreement['concordant']}/{agreement['pairs']} concordant, {agreement['discordant']} discordant, {agreement['tied']} tied")
    return EXIT_OK


def cmd_generate(n: int, p: float, seed: int, fmt: str = "apx", out: Optional[str] = None) -> int:
    af = generate_random(n, p, seed)
    text = write_tgf(af) if fmt == "tgf" else write_apx(af)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        print(text, end="")
    return EXIT_OK


def _add_input(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("input", nargs=None if required else "?", help="APX/TGF file, or '-' for standard input")
    p.add_argument("--format", choices=["apx", "tgf", "auto"], default="auto")


def _add_numeric(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alpha", type=float, default=None, help="damping factor in (0, 1)")
    p.add_argument("--epsilon", type=float, default=None, help="convergence tolerance")
    p.add_argument("--max-iter", dest="max_iter", type=int, default=None)
    p.add_argument("--tie-tol", dest="tie_tol", type=float, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="main.py", description="Counting semantics for abstract argumentation frameworks")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="strengths and ranking")
    _add_input(p)
    _add_numeric(p)
    p.add_argument("--direct", action="store_true", help="linear solve instead of iteration")
    p.add_argument("--output", choices=["table", "json", "csv"], default="table")
    p.add_argument("--kind", action="append", help="also enumerate these extensions")

    p = sub.add_parser("rank", help="ranking only")
    _add_input(p)
    _add_numeric(p)
    p.add_argument("--direct", action="store_true")
    p.add_argument("--alphas", type=_floats, default=None, help="comma-separated damping factors to compare")
    p.add_argument("--valuation", choices=["counting", "categoriser"], default="counting")
    p.add_argument("--output", choices=["table", "json"], default="table")

    p = sub.add_parser("extensions", aliases=["enumerate"], help="Dung extensions by subset enumeration")
    _add_input(p)
    p.add_argument("--kind", action="append", choices=[k.value for k in SemanticsKind])
    p.add_argument("--grounded-via", dest="grounded_via", choices=["brute", "boolean"], default="brute")
    p.add_argument("--acceptance", choices=["credulous", "skeptical"], default=None)
    p.add_argument("--output", choices=["table", "json"], default="table")

    p = sub.add_parser("grounded", help="grounded extension by boolean fixpoint iteration")
    _add_input(p)
    p.add_argument("--output", choices=["table", "json"], default="table")

    p = sub.add_parser("estimate", help="predicted iteration count")
    _add_input(p, required=False)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--epsilon", type=float, default=None)
    p.add_argument("--rho", type=float, default=None)
    p.add_argument("--measure-rho", dest="measure_rho", action="store_true", help="power iteration on the input")
    p.add_argument("--curve", type=_floats, default=None, help="comma-separated damping factors")
    p.add_argument("--budget", type=int, default=None, help="report the largest alpha within this many iterations")
    p.add_argument("--output", choices=["table", "json"], default="table")

    p = sub.add_parser("axioms", help="audit ranking axioms")
    _add_input(p, required=False)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--tie-tol", dest="tie_tol", type=float, default=None)
    p.add_argument("--survey", action="store_true", help="random survey instead of one file")
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--valuation", choices=["counting", "categoriser"], default="counting")
    p.add_argument("--out-dir", dest="out_dir", default=None)
    p.add_argument("--output", choices=["table", "json"], default="table")

    p = sub.add_parser("compare", help="counting against categoriser")
    _add_input(p)
    _add_numeric(p)
    p.add_argument("--direct", action="store_true")
    p.add_argument("--output", choices=["table", "json", "csv"], default="table")

    p = sub.add_parser("generate", help="seeded random framework")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["apx", "tgf"], default="apx")
    p.add_argument("--out", default=None)
    return parser


def _dispatch(args: argparse.Namespace) -> int:
    command = args.command
    if command == "generate":
        return cmd_generate(args.n, args.p, args.seed, args.format, args.out)
    config = _config(args)
    handlers: Dict[str, Callable[[], int]] = {
        "solve": lambda: cmd_solve(config),
        "rank": lambda: cmd_rank(config, args.alphas, args.valuation),
        "extensions": lambda: cmd_extensions(config, args.grounded_via, args.acceptance),
        "enumerate": lambda: cmd_extensions(config, args.grounded_via, args.acceptance),
        "grounded": lambda: cmd_grounded(config),
        "estimate": lambda: cmd_estimate(config, args.rho, args.measure_rho, args.curve, args.budget),
        "axioms": lambda: cmd_axioms(config, args.survey, args.trials, args.valuation, args.out_dir),
        "compare": lambda: cmd_compare(config),
    }
    return handlers[command]()


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure(args.verbose)
    try:
        return _dispatch(args)
    except ParseError as e:
        for d in e.diagnostics:
            prefix = f"{e.source}:" if e.source else ""
            print(f"{prefix}{d}", file=sys.stderr)
        return EXIT_USAGE
    except ValidationError as e:
        for err in e.errors():
            field = ".".join(str(x) for x in err.get("loc", ())) or "config"
            print(f"error: {field}: {err.get('msg')}", file=sys.stderr)
        return EXIT_USAGE
    except (ConvergenceError, CountOverflowError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except SizeCapError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_SIZE_CAP
    except (EstimateError, CountingError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
