from .boolean import BoolMatrix, BoolSet, find_stable_by_operator, grounded_fixpoint  # re-export for convenience
from .counting import (
    ConvergenceEstimate,
    CountVector,
    StrengthVector,
    categoriser_valuation,
    estimate_iterations,
    solve_counting,
    solve_counting_direct,
    spectral_radius,
)
from .errors import CountingError, ParseError
from .extensions import SemanticsKind, enumerate_extensions, verify
from .formats import load_framework, parse_apx, parse_tgf
from .framework import ArgSet, ArgumentationFramework, AttackMatrix
from .generator import generate_random

__all__ = [
    "ArgSet",
    "ArgumentationFramework",
    "AttackMatrix",
    "BoolMatrix",
    "BoolSet",
    "ConvergenceEstimate",
    "CountVector",
    "CountingError",
    "ParseError",
    "SemanticsKind",
    "StrengthVector",
    "categoriser_valuation",
    "enumerate_extensions",
    "estimate_iterations",
    "find_stable_by_operator",
    "generate_random",
    "grounded_fixpoint",
    "load_framework",
    "parse_apx",
    "parse_tgf",
    "solve_counting",
    "solve_counting_direct",
    "spectral_radius",
    "verify",
]
