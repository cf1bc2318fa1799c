"""Deterministic compensated summation.

Every long sum in this package routes through :func:`comp_sum`, which uses
Neumaier's variant of Kahan summation over a fixed block partition of the
input. Worker threads only compute block partials; the partition and the
reduction order are fixed by the index, so results are byte-identical for
any worker count.

The returned ``bound`` is a first-order bound on the residual floating-point
error of the *compensated* result, ``2 * eps * sum(|terms|)``.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from numba import njit

#: Fixed block length of the deterministic partition. Changing this changes
#: rounding at the last-ulp level, so it is a constant, not a knob.
BLOCK = 1 << 16

_EPS = float(np.finfo(np.float64).eps)


@dataclass(frozen=True)
class CompensatedSum:
    """Sum value with an error bound and the number of terms."""

    value: float
    bound: float
    n_terms: int


@njit(cache=True, nogil=True)
def neumaier_block(values):  # pragma: no cover - exercised via comp_sum
    """Neumaier-compensated sum of a 1-D float64 array.

    Returns ``(compensated_total, sum_of_absolute_values)``.
    """
    s = 0.0
    c = 0.0
    a = 0.0
    for i in range(values.shape[0]):
        v = values[i]
        t = s + v
        if abs(s) >= abs(v):
            c += (s - t) + v
        else:
            c += (v - t) + s
        s = t
        a += abs(v)
    return s + c, a


def comp_sum(values: np.ndarray, workers: int = 1) -> CompensatedSum:
    """Deterministically sum ``values`` with compensation.

    ``workers`` parallelizes block computation only; the result is identical
    for any positive worker count.
    """
    values = np.ascontiguousarray(values, dtype=np.float64)
    n = values.shape[0]
    if n == 0:
        return CompensatedSum(0.0, 0.0, 0)
    starts = range(0, n, BLOCK)
    if workers > 1 and n > BLOCK:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            partials = list(
                pool.map(lambda i: neumaier_block(values[i : i + BLOCK]), starts)
            )
    else:
        partials = [neumaier_block(values[i : i + BLOCK]) for i in starts]
    block_sums = np.array([p[0] for p in partials], dtype=np.float64)
    abs_total = float(sum(p[1] for p in partials))
    total, _ = neumaier_block(block_sums)
    return CompensatedSum(float(total), 2.0 * _EPS * abs_total, n)


def comp_add(parts: list[CompensatedSum]) -> CompensatedSum:
    """Combine already-compensated partial sums in the given (index) order."""
    vals = np.array([p.value for p in parts], dtype=np.float64)
    total, _ = neumaier_block(vals)
    bound = float(sum(p.bound for p in parts)) + 2.0 * _EPS * float(
        np.sum(np.abs(vals))
    )
    return CompensatedSum(float(total), bound, sum(p.n_terms for p in parts))
