"""Rabi-frequency optimization of gate error budgets.

Every budget diverges at small Omega (spontaneous emission, 1/Omega) and
at large Omega (rotation errors, Omega^2), so an interior minimum exists.
The balance of the two dominant uniform-budget terms gives the analytic
optimum

    omega_opt = (2 pi)^(1/3) b^(2/3) / tau^(1/3)

with minimum error

    e_opt = 3 pi^(2/3)/2^(1/3) * k/(b tau)^(2/3)
          + pi^(4/3)/2^(8/3) * k^2/(b tau)^(4/3).

The numeric path scans a 64-point logarithmic grid and refines the best
bracket by golden-section search on log(Omega); budgets vary over decades,
so all bracketing is logarithmic.  Two-frequency budgets are minimized by
coordinate descent, reusing the same 1-D routine per axis.  Everything is
deterministic: identical inputs give bit-identical results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .units import TWO_PI

# 2 pi * (0.01 MHz .. 10 GHz)
DEFAULT_BRACKET = (TWO_PI * 1.0e4, TWO_PI * 1.0e10)

_GRID_POINTS = 64
_LOG_TOL = 1.0e-4
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
_MAX_ROUNDS_2D = 50
_ROUND_TOL_2D = 1.0e-3


@dataclass(frozen=True)
class OptimizationResult:
    argmin: tuple[float, ...]
    min_error: float
    evaluations: int
    converged: bool
    analytic_argmin: float | None = None


def omega_opt_analytic(b: float, tau: float) -> float:
    """Analytic optimal Rabi frequency, rad/s."""
    if not (b > 0.0) or not (tau > 0.0):
        raise ValueError("b and tau must be positive")
    return (TWO_PI) ** (1.0 / 3.0) * b ** (2.0 / 3.0) / tau ** (1.0 / 3.0)


def e_opt_analytic(b: float, tau: float, k: int) -> float:
    """Analytic minimum error for k controls at the analytic optimum."""
    if not (b > 0.0) or not (tau > 0.0):
        raise ValueError("b and tau must be positive")
    if k < 0:
        raise ValueError("k must be >= 0")
    bt = b * tau
    first = 3.0 * math.pi ** (2.0 / 3.0) / 2.0 ** (1.0 / 3.0) * k / bt ** (2.0 / 3.0)
    second = math.pi ** (4.0 / 3.0) / 2.0 ** (8.0 / 3.0) * k * k / bt ** (4.0 / 3.0)
    return first + second


class _CountedObjective:
    def __init__(self, fn: Callable[..., float]):
        self.fn = fn
        self.evaluations = 0

    def __call__(self, *args: float) -> float:
        self.evaluations += 1
        value = self.fn(*args)
        if not math.isfinite(value):
            raise ValueError(
                f"objective returned non-finite value {value!r} at {args!r}"
            )
        return float(value)


def _golden_section_log(
    f: Callable[[float], float], lo: float, hi: float
) -> tuple[float, float]:
    """Golden-section minimization of f(exp(u)) on [log lo, log hi]."""
    a, b = math.log(lo), math.log(hi)
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1, f2 = f(math.exp(x1)), f(math.exp(x2))
    while b - a > _LOG_TOL:
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN * (b - a)
            f1 = f(math.exp(x1))
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN * (b - a)
            f2 = f(math.exp(x2))
    if f1 <= f2:
        return math.exp(x1), f1
    return math.exp(x2), f2


def _minimize_1d(
    f: Callable[[float], float], lo: float, hi: float
) -> tuple[float, float, bool]:
    grid = np.logspace(math.log10(lo), math.log10(hi), _GRID_POINTS)
    values = [f(x) for x in grid]
    best = min(range(_GRID_POINTS), key=values.__getitem__)
    interior = 0 < best < _GRID_POINTS - 1
    a = grid[max(best - 1, 0)]
    b = grid[min(best + 1, _GRID_POINTS - 1)]
    x_ref, f_ref = _golden_section_log(f, a, b)
    # never report a point worse than the scanned grid
    if values[best] < f_ref:
        x_ref, f_ref = float(grid[best]), values[best]
    return x_ref, f_ref, interior


def _normalize_brackets(
    dims: int, bracket: Sequence[float] | Sequence[Sequence[float]]
) -> list[tuple[float, float]]:
    seq = list(bracket)
    if len(seq) == 2 and all(isinstance(v, (int, float)) for v in seq):
        pairs = [(float(seq[0]), float(seq[1]))] * dims
    else:
        pairs = [(float(lo), float(hi)) for (lo, hi) in seq]
        if len(pairs) != dims:
            raise ValueError("one bracket per dimension is required")
    for lo, hi in pairs:
        if not (0.0 < lo < hi):
            raise ValueError("brackets must satisfy 0 < lo < hi")
    return pairs


def minimize_error(
    budget_fn: Callable[..., float],
    dims: int = 1,
    bracket: Sequence[float] | Sequence[Sequence[float]] = DEFAULT_BRACKET,
    analytic_argmin: float | None = None,
) -> OptimizationResult:
    """Minimize a scalar error objective over 1 or 2 Rabi frequencies.

    ``budget_fn`` takes ``dims`` positional frequencies (rad/s) and
    returns the total error.  A minimum found at a bracket edge is
    returned with ``converged=False``.
    """
    if dims not in (1, 2):
        raise ValueError("dims must be 1 or 2")
    brackets = _normalize_brackets(dims, bracket)
    counted = _CountedObjective(budget_fn)

    if dims == 1:
        lo, hi = brackets[0]
        x, fx, interior = _minimize_1d(counted, lo, hi)
        return OptimizationResult(
            argmin=(x,),
            min_error=fx,
            evaluations=counted.evaluations,
            converged=interior,
            analytic_argmin=analytic_argmin,
        )

    point = [math.sqrt(lo * hi) for (lo, hi) in brackets]
    value = counted(*point)
    interior_flags = [True, True]
    converged = False
    for _ in range(_MAX_ROUNDS_2D):
        moved = 0.0
        for axis in (0, 1):
            lo, hi = brackets[axis]

            def along(x: float, axis: int = axis) -> float:
                trial = list(point)
                trial[axis] = x
                return counted(*trial)

            x, fx, interior = _minimize_1d(along, lo, hi)
            moved = max(moved, abs(x - point[axis]) / point[axis])
            point[axis] = x
            value = fx
            interior_flags[axis] = interior
        if moved < _ROUND_TOL_2D:
            converged = True
            break
    return OptimizationResult(
        argmin=tuple(point),
        min_error=value,
        evaluations=counted.evaluations,
        converged=converged and all(interior_flags),
        analytic_argmin=analytic_argmin,
    )
