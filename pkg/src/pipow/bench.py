"""Benchmark with built-in cross-checks.

Timing numbers are only reported after the competing methods have been
shown to agree: the three exact routes (sweep, enumeration, Newton
identities) must produce identical rationals, and the two sweep kernels
(compiled and pure Python) must produce bit-identical mantissa rows.
A disagreement anywhere turns the run into a failure; speed never
outranks correctness here.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

from . import _backend, _kernel_py
from .errors import InfeasibleError
from .exactnum import guard_digits
from .series import (
    NAIVE_ENUMERATION_CEILING,
    newton_cross_check,
    partial_sum,
    partial_sum_naive,
)

__all__ = ["BenchRow", "run_benchmark"]

# (depth, truncation) grids; small enough for the enumeration witness,
# large enough that the sweep's advantage is visible.
ORACLE_GRID = [(1, 35), (2, 35), (3, 35), (4, 35)]
SWEEP_GRID = [(1, 10**4), (1, 10**5), (2, 10**4), (4, 10**4)]
BACKEND_GRID = [(1, 10**5), (2, 10**4), (4, 10**3)]
REFUSAL_CASE = (5, 100)
SWEEP_DIGITS = 20


@dataclass(frozen=True)
class BenchRow:
    """One timed (or refused) benchmark measurement."""

    section: str
    method: str
    depth: int
    truncation: int
    operations: int
    seconds: float | None
    status: str


def _timed(fn):
    start = time.perf_counter()
    value = fn()
    return value, time.perf_counter() - start


def run_benchmark() -> tuple[list, bool]:
    """All benchmark rows plus an overall agreement verdict.

    Returns (rows, ok); ok is False as soon as any cross-check between
    methods or backends fails, and the offending row says so.
    """
    rows = []
    ok = True

    for depth, truncation in ORACLE_GRID:
        sweep, t_sweep = _timed(lambda: partial_sum(depth, truncation, "exact"))
        naive, t_naive = _timed(lambda: partial_sum_naive(depth, truncation))
        newton, t_newton = _timed(lambda: newton_cross_check(depth, truncation))
        agree = sweep == naive == newton
        if not agree:
            ok = False
        status = "agree" if agree else "MISMATCH"
        tuples = math.comb(truncation, depth)
        rows.append(
            BenchRow("oracles", "sweep-exact", depth, truncation,
                     depth * truncation, t_sweep, status)
        )
        rows.append(
            BenchRow("oracles", "enumeration", depth, truncation,
                     tuples, t_naive, status)
        )
        rows.append(
            BenchRow("oracles", "newton", depth, truncation,
                     depth * truncation, t_newton, status)
        )

    depth, truncation = REFUSAL_CASE
    try:
        partial_sum_naive(depth, truncation)
    except InfeasibleError as exc:
        rows.append(
            BenchRow("oracles", "enumeration", depth, truncation,
                     exc.required, None,
                     "refused: %d tuples > ceiling %d"
                     % (exc.required, NAIVE_ENUMERATION_CEILING))
        )
    else:
        ok = False
        rows.append(
            BenchRow("oracles", "enumeration", depth, truncation,
                     math.comb(truncation, depth), None,
                     "MISMATCH: expected refusal did not happen")
        )

    for depth, truncation in SWEEP_GRID:
        _, seconds = _timed(
            lambda: partial_sum(depth, truncation, "fixed", SWEEP_DIGITS)
        )
        rows.append(
            BenchRow("sweep-fixed", _backend.BACKEND, depth, truncation,
                     depth * truncation, seconds, "ok")
        )

    try:
        from . import _kernel as compiled
    except ImportError:
        compiled = None
    for depth, truncation in BACKEND_GRID:
        scale = SWEEP_DIGITS + guard_digits(depth * truncation)
        pure_row, t_pure = _timed(
            lambda: _kernel_py.dp_row_scaled(depth, truncation, scale)
        )
        rows.append(
            BenchRow("backends", "pure-python", depth, truncation,
                     depth * truncation, t_pure, "ok")
        )
        if compiled is None:
            continue
        fast_row, t_fast = _timed(
            lambda: compiled.dp_row_scaled(depth, truncation, scale)
        )
        identical = fast_row == pure_row
        if not identical:
            ok = False
        rows.append(
            BenchRow("backends", "compiled", depth, truncation,
                     depth * truncation, t_fast,
                     "bit-identical" if identical else "MISMATCH")
        )
    if compiled is None:
        rows.append(
            BenchRow("backends", "compiled", 0, 0, 0, None,
                     "not built; pure-python fallback active")
        )

    return rows, ok
