from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np


class CountingError(Exception):
    """Root of every error raised by the toolkit."""


class FrameworkError(CountingError, ValueError):
    pass


class InvalidSetError(CountingError, IndexError):
    pass


class InvalidArgumentError(CountingError, KeyError):
    def __str__(self) -> str:  # KeyError quotes its message otherwise
        return str(self.args[0]) if self.args else ""


class SizeCapError(CountingError, ValueError):
    def __init__(self, n: int, cap: int, what: str = "subset scan") -> None:
        super().__init__(f"{what} refused: {n} arguments exceeds the cap of {cap}")
        self.n = n
        self.cap = cap


class EstimateError(CountingError, ValueError):
    pass


class CountOverflowError(CountingError, OverflowError):
    def __init__(self, length: int, bound: int) -> None:
        super().__init__(
            f"walk counts of length {length} may reach {bound}, beyond the 64-bit range"
        )
        self.length = length
        self.bound = bound


class ConvergenceError(CountingError, ArithmeticError):
    def __init__(self, message: str, last: np.ndarray, change: float, iterations: int) -> None:
        super().__init__(message)
        self.last = last
        self.change = change
        self.iterations = iterations


@dataclass(frozen=True)
class ParseDiagnostic:
    line: int
    column: int
    message: str
    severity: str = "error"

    def __str__(self) -> str:
        return f"{self.line}:{self.column}: {self.severity}: {self.message}"


class ParseError(CountingError, ValueError):
    def __init__(self, diagnostics: Sequence[ParseDiagnostic], source: Optional[str] = None) -> None:
        self.diagnostics: List[ParseDiagnostic] = list(diagnostics)
        self.source = source
        first = self.diagnostics[0] if self.diagnostics else None
        prefix = f"{source}:" if source else ""
        super().__init__(f"{prefix}{first}" if first else "parse failed")


__all__ = [
    "CountingError",
    "FrameworkError",
    "InvalidSetError",
    "InvalidArgumentError",
    "SizeCapError",
    "EstimateError",
    "CountOverflowError",
    "ConvergenceError",
    "ParseDiagnostic",
    "ParseError",
]
