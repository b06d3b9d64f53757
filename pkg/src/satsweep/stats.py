"""Turn per-window sums into sum/mean/stddev results.

The integral and dp strategies both reduce a window to (sum, squared sum)
accumulators; this module owns the final arithmetic and its exactness
dispatch so the two strategies cannot drift apart.

Std dev is the population form sqrt(E[x^2] - E[x]^2) with divisor n = w*w.
For integer inputs it is computed from the exact integer numerator

    n * sq_sum - sum^2  =  n^2 * variance  >= 0

which avoids the catastrophic cancellation the one-pass float formula
suffers on near-constant windows. The numerator is evaluated in uint64
whenever the analytic peak bound w^4 * max_value^2 fits, else in unbounded
Python integers (exact, slower). Float inputs use the clamped one-pass
float64 formula.
"""

from __future__ import annotations

import numpy as np

from .grid import ElemKind, ResultGrid, StatKind

U64_MAX = 2**64 - 1


def exact_u64_numerator_ok(w: int, elem_kind: ElemKind) -> bool:
    """True when n*sq - sum^2 provably fits in uint64 for a w x w window."""
    if not elem_kind.is_integer:
        return False
    return w**4 * int(elem_kind.max_value) ** 2 <= U64_MAX


def finalize(
    stat: StatKind,
    sums: np.ndarray,
    sq_sums: np.ndarray | None,
    n: int,
    elem_kind: ElemKind,
    w: int,
) -> ResultGrid:
    """Build a ResultGrid from window accumulators.

    ``sums``/``sq_sums`` are uint64 (or object for oversized accumulators)
    for integer inputs and float64 for F32 inputs. ``sq_sums`` is required
    for STD only.
    """
    if stat is StatKind.SUM:
        if elem_kind.is_integer:
            # window sums always fit uint64: w^2 * 65535 < 2^64 for any in-core w
            return ResultGrid(stat, np.asarray(sums, dtype=np.uint64))
        return ResultGrid(stat, np.asarray(sums, dtype=np.float64))

    if stat is StatKind.MEAN:
        return ResultGrid(stat, np.asarray(sums, dtype=np.float64) / n)

    if sq_sums is None:
        raise ValueError("squared sums required for std dev")

    if elem_kind.is_integer:
        if sums.dtype == np.uint64 and exact_u64_numerator_ok(w, elem_kind):
            num = n * sq_sums - sums * sums
        else:
            s = np.asarray(sums).astype(object)
            num = n * np.asarray(sq_sums).astype(object) - s * s
        std = np.sqrt(num.astype(np.float64)) / n
        return ResultGrid(StatKind.STD, std)

    mean = np.asarray(sums, dtype=np.float64) / n
    var = np.asarray(sq_sums, dtype=np.float64) / n - mean * mean
    # one-pass float variance can dip infinitesimally below zero
    np.maximum(var, 0.0, out=var)
    return ResultGrid(StatKind.STD, np.sqrt(var))


def needs_squares(stat: StatKind) -> bool:
    return stat is StatKind.STD
