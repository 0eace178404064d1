"""Counting semantics: graded walk counts, damped model, fixpoint solvers.

Strength of an argument is the alternating, damped count of the walks ending at
it: defenders (even length) add, attackers (odd length) subtract. The converged
vector is the fixpoint of v = e − αÃv, computed either by iteration or by a
direct linear solve of (Id + αÃ)v = e.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy import sparse
from scipy.sparse.csgraph import connected_components
from scipy.sparse.linalg import spsolve

from .config import get_settings
from .errors import ConvergenceError, CountOverflowError, EstimateError
from .events import log_event
from .framework import AttackMatrix

# largest count we let int64 hold before refusing the next multiplication
_INT_LIMIT = 2**62


@dataclass(frozen=True, eq=False)
class CountVector:
    values: np.ndarray
    length: int

    def tolist(self) -> list:
        return self.values.tolist()


@dataclass(frozen=True, eq=False)
class StrengthVector:
    values: np.ndarray
    alpha: Optional[float]
    epsilon: float
    iterations: int
    changes: Tuple[float, ...] = ()
    method: str = "iterative"

    def __len__(self) -> int:
        return int(self.values.shape[0])

    def __getitem__(self, i: int) -> float:
        return float(self.values[i])

    def as_dict(self, names: Sequence[str]) -> Dict[str, float]:
        return {name: float(self.values[i]) for i, name in enumerate(names)}


@dataclass(frozen=True)
class ConvergenceEstimate:
    rho: float
    alpha: float
    epsilon: float
    k_max: float

    @property
    def iterations(self) -> int:
        return int(math.ceil(self.k_max - 1e-9))


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"damping factor must lie in (0, 1), got {alpha}")
    return alpha


def _ones(matrix: AttackMatrix) -> np.ndarray:
    return np.ones(matrix.n, dtype=float)


def graded_counts(matrix: AttackMatrix, length: int) -> CountVector:
    """I^(ℓ) = A^ℓ e: number of ℓ-length walks ending at each argument."""
    if length < 0:
        raise ValueError("walk length must be non-negative")
    counts = np.ones(matrix.n, dtype=np.int64)
    for step in range(1, length + 1):
        counts = _checked_step(matrix, counts, step)
    return CountVector(counts, length)


def _checked_step(matrix: AttackMatrix, counts: np.ndarray, step: int) -> np.ndarray:
    peak = int(np.abs(counts).max()) if counts.size else 0
    bound = matrix.norm * peak
    if bound > _INT_LIMIT:
        raise CountOverflowError(step, bound)
    return matrix.apply(counts).astype(np.int64)


def simple_counting(matrix: AttackMatrix, k: int) -> CountVector:
    """v^(k) = Σ_{ℓ≤k} (−1)^ℓ A^ℓ e, exact integers."""
    if k < 0:
        raise ValueError("k must be non-negative")
    counts = np.ones(matrix.n, dtype=np.int64)
    total = counts.copy()
    for step in range(1, k + 1):
        counts = _checked_step(matrix, counts, step)
        peak_total = int(np.abs(total).max()) if total.size else 0
        peak_counts = int(counts.max()) if counts.size else 0
        if peak_total + peak_counts > _INT_LIMIT:
            raise CountOverflowError(step, peak_total + peak_counts)
        total = total + counts if step % 2 == 0 else total - counts
    return CountVector(total, k)


def damped_partial(matrix: AttackMatrix, alpha: float, k: int) -> CountVector:
    """v^(k)_α = Σ_{ℓ≤k} (−α)^ℓ Ã^ℓ e, evaluated as a partial sum."""
    alpha = _check_alpha(alpha)
    if k < 0:
        raise ValueError("k must be non-negative")
    term = _ones(matrix)
    total = term.copy()
    for _ in range(k):
        term = -alpha * matrix.apply_normalized(term)
        total = total + term
    return CountVector(total, k)


def iterate_counting(matrix: AttackMatrix, alpha: float, v_prev: np.ndarray) -> np.ndarray:
    """One recurrence step v ← e − αÃv."""
    alpha = _check_alpha(alpha)
    v_prev = np.asarray(v_prev, dtype=float)
    if v_prev.shape != (matrix.n,):
        raise ValueError(f"expected a vector of length {matrix.n}, got shape {v_prev.shape}")
    return 1.0 - alpha * matrix.apply_normalized(v_prev)


def iterate_counting_two_step(matrix: AttackMatrix, alpha: float, v_prev2: np.ndarray) -> np.ndarray:
    """v = e − Â(e − Â v) with Â = αÃ; two recurrence steps at once."""
    alpha = _check_alpha(alpha)
    inner = 1.0 - alpha * matrix.apply_normalized(np.asarray(v_prev2, dtype=float))
    return 1.0 - alpha * matrix.apply_normalized(inner)


def default_max_iter(epsilon: float, alpha: float) -> int:
    settings = get_settings()
    if settings.max_iter is not None:
        return int(settings.max_iter)
    est = estimate_iterations(min(epsilon, 0.999999), alpha, 1.0)
    return max(1000, 10 * est.iterations)


def solve_counting(
    matrix: AttackMatrix,
    alpha: Optional[float] = None,
    epsilon: Optional[float] = None,
    max_iter: Optional[int] = None,
) -> StrengthVector:
    """Iterate from e until the infinity-norm change drops to epsilon."""
    settings = get_settings()
    alpha = _check_alpha(settings.alpha if alpha is None else alpha)
    epsilon = float(settings.epsilon if epsilon is None else epsilon)
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    if max_iter is None:
        max_iter = default_max_iter(epsilon, alpha)
    if max_iter < 1:
        raise ValueError("max_iter must be at least 1")

    v = _ones(matrix)
    changes: List[float] = []
    change = math.inf
    for k in range(1, max_iter + 1):
        nxt = 1.0 - alpha * matrix.apply_normalized(v)
        change = float(np.max(np.abs(nxt - v))) if matrix.n else 0.0
        changes.append(change)
        v = nxt
        if settings.events_verbose:
            log_event("solver", "iteration", level="debug", meta={"k": k, "change": change})
        if change <= epsilon:
            log_event("solver", "converged", meta={"iterations": k, "change": change, "alpha": alpha, "n": matrix.n})
            return StrengthVector(v, alpha, epsilon, k, tuple(changes))

    log_event("solver", "max_iter exceeded", level="warning", meta={"max_iter": max_iter, "change": change})
    raise ConvergenceError(
        f"counting iteration did not reach epsilon={epsilon} within {max_iter} iterations (last change {change:.3e})",
        last=v,
        change=change,
        iterations=max_iter,
    )


def solve_counting_direct(matrix: AttackMatrix, alpha: Optional[float] = None) -> StrengthVector:
    """Closed form of the fixpoint: solve (Id + αÃ)v = e."""
    settings = get_settings()
    alpha = _check_alpha(settings.alpha if alpha is None else alpha)
    n = matrix.n
    rhs = np.ones(n, dtype=float)
    if n == 0:
        values = rhs
    elif matrix.is_sparse:
        system = sparse.identity(n, format="csc") + alpha * sparse.csc_matrix(matrix.normalized_operator())
        values = np.asarray(spsolve(system, rhs), dtype=float)
    else:
        system = np.eye(n) + alpha * matrix.normalized
        values = np.linalg.solve(system, rhs)
    return StrengthVector(values, alpha, settings.epsilon, 0, (), method="direct")


def _block_radius(block, tol: float, max_iter: int) -> float:
    """ρ of one irreducible block from the Collatz–Wielandt bracket of B = (Id + Ã)/2."""
    x = np.ones(block.shape[0])
    lower, upper = 0.0, 1.0
    for _ in range(max_iter):
        y = 0.5 * (x + np.asarray(block @ x, dtype=float).ravel())
        ratios = y / x
        lower, upper = float(ratios.min()), float(ratios.max())
        # ρ = 2r − 1, so a bracket of width tol on r pins ρ to within tol
        if upper - lower <= tol:
            break
        x = y / float(y.max())
    else:
        log_event("spectral", "power iteration hit max_iter", level="warning", meta={"max_iter": max_iter, "gap": upper - lower, "size": int(block.shape[0])})
    return lower + upper - 1.0


def spectral_radius(
    matrix: AttackMatrix,
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
) -> float:
    """Power-iteration estimate of ρ(Ã).

    ρ of a nonnegative matrix is the largest ρ over the diagonal blocks of its
    strongly connected components. Each irreducible block is iterated with the
    shifted operator B = (Id + Ã)/2, which is primitive there, so the
    Collatz–Wielandt ratios min/max (Bx)_i / x_i close in on (1 + ρ)/2 from
    both sides. A single argument without a self-attack contributes 0; if no
    block has a cycle, Ã is nilpotent and the result is exactly 0.
    """
    settings = get_settings()
    tol = settings.power_tol if tol is None else tol
    max_iter = settings.power_max_iter if max_iter is None else max_iter
    n = matrix.n
    if n == 0 or matrix.norm == 0:
        return 0.0

    count, labels = connected_components(sparse.csr_matrix(matrix.entries), directed=True, connection="strong")
    op = matrix.normalized_operator()
    rho = 0.0
    for c in range(count):
        idx = np.flatnonzero(labels == c)
        if idx.size == 1:
            rho = max(rho, float(matrix.normalized[idx[0], idx[0]]))
            continue
        rho = max(rho, _block_radius(op[idx][:, idx], tol, max_iter))
    if rho == 0.0:
        log_event("spectral", "no cycle, matrix is nilpotent", meta={"n": n})
    return float(min(1.0, max(0.0, rho)))


def estimate_iterations(epsilon: float, alpha: float, rho: float) -> ConvergenceEstimate:
    """k_max = log10(ε) / log10(αρ)."""
    if not 0.0 < epsilon < 1.0:
        raise EstimateError(f"epsilon must lie in (0, 1), got {epsilon}")
    if not 0.0 < alpha < 1.0:
        raise EstimateError(f"alpha must lie in (0, 1), got {alpha}")
    if not 0.0 <= rho <= 1.0:
        raise EstimateError(f"spectral radius of the normalized matrix lies in [0, 1], got {rho}")
    if rho == 0.0:
        return ConvergenceEstimate(rho=0.0, alpha=alpha, epsilon=epsilon, k_max=1.0)
    if alpha * rho >= 1.0:
        raise EstimateError(f"alpha*rho = {alpha * rho} >= 1, the iteration need not contract")
    k_max = math.log10(epsilon) / math.log10(alpha * rho)
    return ConvergenceEstimate(rho=float(rho), alpha=float(alpha), epsilon=float(epsilon), k_max=k_max)


def iteration_curve(epsilon: float, alphas: Iterable[float], rho: float = 1.0) -> List[ConvergenceEstimate]:
    return [estimate_iterations(epsilon, a, rho) for a in alphas]


def max_alpha_for_budget(epsilon: float, budget: int, rho: float = 1.0) -> float:
    """Largest α whose predicted iteration count stays within budget."""
    if budget < 1:
        raise EstimateError("iteration budget must be at least 1")
    if not 0.0 < epsilon < 1.0:
        raise EstimateError(f"epsilon must lie in (0, 1), got {epsilon}")
    if rho > 1.0:
        raise EstimateError(f"spectral radius of the normalized matrix lies in [0, 1], got {rho}")
    if rho <= 0.0:
        return math.nextafter(1.0, 0.0)
    alpha = epsilon ** (1.0 / budget) / rho
    return float(min(alpha, math.nextafter(1.0, 0.0)))


def ranking_sweep(matrix: AttackMatrix, alphas: Iterable[float], direct: bool = True) -> Dict[float, StrengthVector]:
    out: Dict[float, StrengthVector] = {}
    for a in alphas:
        out[float(a)] = solve_counting_direct(matrix, a) if direct else solve_counting(matrix, a)
    return out


def categoriser_valuation(
    matrix: AttackMatrix,
    epsilon: Optional[float] = None,
    max_iter: Optional[int] = None,
) -> StrengthVector:
    """Fixpoint of v(x) = 1 / (1 + Σ_{y attacks x} v(y)) iterated from e."""
    settings = get_settings()
    epsilon = float(settings.epsilon if epsilon is None else epsilon)
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    max_iter = settings.categoriser_max_iter if max_iter is None else max_iter
    v = _ones(matrix)
    changes: List[float] = []
    change = math.inf
    for k in range(1, max_iter + 1):
        nxt = 1.0 / (1.0 + matrix.apply(v).astype(float))
        change = float(np.max(np.abs(nxt - v))) if matrix.n else 0.0
        changes.append(change)
        v = nxt
        if change <= epsilon:
            log_event("categoriser", "converged", meta={"iterations": k, "change": change, "n": matrix.n})
            return StrengthVector(v, None, epsilon, k, tuple(changes), method="categoriser")
    log_event("categoriser", "max_iter exceeded", level="warning", meta={"max_iter": max_iter, "change": change})
    raise ConvergenceError(
        f"categoriser iteration did not reach epsilon={epsilon} within {max_iter} iterations",
        last=v,
        change=change,
        iterations=max_iter,
    )


__all__ = [
    "CountVector",
    "StrengthVector",
    "ConvergenceEstimate",
    "graded_counts",
    "simple_counting",
    "damped_partial",
    "iterate_counting",
    "iterate_counting_two_step",
    "default_max_iter",
    "solve_counting",
    "solve_counting_direct",
    "spectral_radius",
    "estimate_iterations",
    "iteration_curve",
    "max_alpha_for_budget",
    "ranking_sweep",
    "categoriser_valuation",
]
