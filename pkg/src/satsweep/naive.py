"""Reference strategies: brute-force naive SWA and the dp strip-update baseline.

``naive_swa`` recomputes every window from scratch (O(out_r * out_c * w^2))
and serves as the ground-truth oracle in tests: integer sums are exact and
std dev uses the numerically trustworthy two-pass form. ``dp_naive_swa``
reuses the previous window by subtracting leaving column strips and adding
entering ones (O(w * stride) per step), which keeps it strictly between
naive and the integral method in cost.
"""

from __future__ import annotations

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from . import stats
from .grid import ElemKind, ImageGrid, ResultGrid, StatKind, WindowSpec, output_dims

# cap for temporary buffers in the chunked naive sweep
_CHUNK_BYTES = 64 * 2**20


def _acc_dtype(kind: ElemKind) -> np.dtype:
    return np.dtype(np.uint64) if kind.is_integer else np.dtype(np.float64)


def naive_swa(img: ImageGrid, win: WindowSpec, stat: StatKind) -> ResultGrid:
    """Apply ``stat`` to every w x w window by full recomputation."""
    out_r, out_c = output_dims(img.rows, img.cols, win)
    w, s = win.w, win.stride
    n = win.area
    acc = _acc_dtype(img.elem_kind)
    windows = sliding_window_view(img.values, (w, w))[::s, ::s]

    # chunk output rows so the per-chunk float temporaries stay bounded
    rows_per_chunk = max(1, _CHUNK_BYTES // max(1, out_c * w * w * 8))

    if stat is StatKind.SUM:
        out = np.empty((out_r, out_c), dtype=acc)
        for lo in range(0, out_r, rows_per_chunk):
            hi = min(lo + rows_per_chunk, out_r)
            out[lo:hi] = windows[lo:hi].sum(axis=(2, 3), dtype=acc)
        return ResultGrid(stat, out)

    if stat is StatKind.MEAN:
        out = np.empty((out_r, out_c), dtype=np.float64)
        for lo in range(0, out_r, rows_per_chunk):
            hi = min(lo + rows_per_chunk, out_r)
            out[lo:hi] = windows[lo:hi].sum(axis=(2, 3), dtype=acc).astype(np.float64) / n
        return ResultGrid(stat, out)

    # two-pass population std dev: per-window mean, then squared deviations
    out = np.empty((out_r, out_c), dtype=np.float64)
    for lo in range(0, out_r, rows_per_chunk):
        hi = min(lo + rows_per_chunk, out_r)
        block = windows[lo:hi]
        means = block.sum(axis=(2, 3), dtype=acc).astype(np.float64) / n
        dev = block.astype(np.float64) - means[:, :, None, None]
        out[lo:hi] = np.sqrt((dev * dev).sum(axis=(2, 3)) / n)
    return ResultGrid(StatKind.STD, out)


def _strip_sums(colwin, row_starts, col: int, squared: bool, acc: np.dtype) -> np.ndarray:
    """Sum (or sum of squares) of the w-tall strip at ``col`` for every output row."""
    strip = colwin[row_starts, col, :]
    if squared:
        sq = strip.astype(acc)
        return (sq * sq).sum(axis=1)
    return strip.sum(axis=1, dtype=acc)


def dp_naive_swa(img: ImageGrid, win: WindowSpec, stat: StatKind) -> ResultGrid:
    """Incremental-strip variant of naive SWA; output matches naive_swa.

    Sliding one stride right subtracts the strips that leave the window and
    adds the ones that enter. When stride >= w consecutive windows share no
    columns, so each position is summed fresh (same O(w * stride) budget).
    """
    out_r, out_c = output_dims(img.rows, img.cols, win)
    w, s = win.w, win.stride
    n = win.area
    acc = _acc_dtype(img.elem_kind)
    want_sq = stats.needs_squares(stat)

    colwin = sliding_window_view(img.values, w, axis=0)
    row_starts = np.arange(out_r) * s

    sums = np.empty((out_r, out_c), dtype=acc)
    sqs = np.empty((out_r, out_c), dtype=acc) if want_sq else None

    def full_window(col0: int, squared: bool) -> np.ndarray:
        block = colwin[row_starts, col0 : col0 + w, :]
        if squared:
            sq = block.astype(acc)
            return (sq * sq).sum(axis=(1, 2))
        return block.sum(axis=(1, 2), dtype=acc)

    if s >= w:
        for j in range(out_c):
            sums[:, j] = full_window(j * s, False)
            if want_sq:
                sqs[:, j] = full_window(j * s, True)
    else:
        running = full_window(0, False)
        running_sq = full_window(0, True) if want_sq else None
        sums[:, 0] = running
        if want_sq:
            sqs[:, 0] = running_sq
        for j in range(1, out_c):
            base = (j - 1) * s
            # subtract the leaving strips before adding the entering ones so
            # unsigned accumulators never dip below zero
            for k in range(s):
                running -= _strip_sums(colwin, row_starts, base + k, False, acc)
                if want_sq:
                    running_sq -= _strip_sums(colwin, row_starts, base + k, True, acc)
            for k in range(s):
                running += _strip_sums(colwin, row_starts, base + w + k, False, acc)
                if want_sq:
                    running_sq += _strip_sums(colwin, row_starts, base + w + k, True, acc)
            sums[:, j] = running
            if want_sq:
                sqs[:, j] = running_sq

    return stats.finalize(stat, sums, sqs, n, img.elem_kind, w)
