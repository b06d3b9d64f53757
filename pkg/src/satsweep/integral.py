"""Summed-area tables and O(1)-per-window statistic queries.

The table is zero-padded: entry (i, j) holds the sum of all pixels above
and to the left, i.e. rows < i and cols < j of the source, so corner
lookups need no boundary branches. Integer inputs get exact accumulators:
uint64 while the analytic peak bound fits, unbounded Python integers
(object dtype) beyond that; float inputs accumulate in float64.

The fill/scan kernels are written over row and column ranges so the
parallel module can run them on disjoint blocks and produce bit-identical
tables.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import stats
from .errors import InvalidWindowError, ResourceLimitError
from .grid import ElemKind, ImageGrid, ResultGrid, StatKind, WindowSpec, output_dims

U64_MAX = 2**64 - 1


class AccumKind(enum.Enum):
    """Accumulator width of a summed-area table."""

    U64 = "u64"    # exact, unsigned 64-bit
    U128 = "u128"  # exact, unbounded integers (object array); >= 128-bit semantics
    F64 = "f64"

    @property
    def dtype(self):
        if self is AccumKind.U64:
            return np.dtype(np.uint64)
        if self is AccumKind.F64:
            return np.dtype(np.float64)
        return np.dtype(object)


def select_accum(elem_kind: ElemKind, rows: int, cols: int, squared: bool) -> AccumKind:
    """Pick the narrowest accumulator that provably cannot overflow.

    The table peak is bounded by max_value^(1 or 2) * rows * cols. At U16
    max the plain sum table stays within uint64 up to ~2.8e14 pixels; the
    squared table overflows beyond ~4.29e9 pixels and falls back to exact
    unbounded integers.
    """
    if not elem_kind.is_integer:
        return AccumKind.F64
    peak = int(elem_kind.max_value) ** (2 if squared else 1) * rows * cols
    return AccumKind.U64 if peak <= U64_MAX else AccumKind.U128


@dataclass(frozen=True)
class IntegralImage:
    """Zero-padded (rows+1) x (cols+1) cumulative-sum table."""

    table: np.ndarray
    accum_kind: AccumKind
    source_dims: tuple[int, int]
    squared: bool = False

    @property
    def rows(self) -> int:
        return self.source_dims[0]

    @property
    def cols(self) -> int:
        return self.source_dims[1]


def allocate_table(elem_kind: ElemKind, rows: int, cols: int, squared: bool) -> tuple[np.ndarray, AccumKind]:
    kind = select_accum(elem_kind, rows, cols, squared)
    required = (rows + 1) * (cols + 1) * 8
    try:
        table = np.zeros((rows + 1, cols + 1), dtype=kind.dtype)
    except MemoryError:
        raise ResourceLimitError(required, f"a {rows + 1}x{cols + 1} integral table") from None
    return table, kind


def fill_rows(inner: np.ndarray, values: np.ndarray, squared: bool, lo: int, hi: int) -> None:
    """Copy source values (or their squares) into table rows [lo, hi)."""
    block = values[lo:hi]
    if inner.dtype == object:
        inner[lo:hi] = block.astype(object)
        if squared:
            np.multiply(inner[lo:hi], inner[lo:hi], out=inner[lo:hi])
    elif squared:
        np.multiply(block, block, out=inner[lo:hi], dtype=inner.dtype, casting="unsafe")
    else:
        np.copyto(inner[lo:hi], block, casting="unsafe")


def scan_rows(inner: np.ndarray, lo: int, hi: int) -> None:
    """In-place horizontal prefix sums over rows [lo, hi)."""
    np.cumsum(inner[lo:hi], axis=1, out=inner[lo:hi])


def scan_cols(inner: np.ndarray, lo: int, hi: int) -> None:
    """In-place vertical prefix sums over columns [lo, hi)."""
    np.cumsum(inner[:, lo:hi], axis=0, out=inner[:, lo:hi])


def build_sat(img: ImageGrid, squared: bool = False) -> IntegralImage:
    """Single-pass summed-area table of the image (or of its squared pixels)."""
    table, kind = allocate_table(img.elem_kind, img.rows, img.cols, squared)
    inner = table[1:, 1:]
    fill_rows(inner, img.values, squared, 0, img.rows)
    scan_rows(inner, 0, img.rows)
    scan_cols(inner, 0, img.cols)
    return IntegralImage(table, kind, (img.rows, img.cols), squared)


def window_sum(sat: IntegralImage, top: int, left: int, w: int):
    """Region sum of the w x w block at (top, left) via four corner lookups."""
    rows, cols = sat.source_dims
    if w < 1 or top < 0 or left < 0 or top + w > rows or left + w > cols:
        raise InvalidWindowError(
            f"{w}x{w} region at ({top}, {left}) does not lie within the {rows}x{cols} source"
        )
    t = sat.table
    # both partial differences are non-negative, keeping unsigned math safe
    right = t[top + w, left + w] - t[top, left + w]
    left_part = t[top + w, left] - t[top, left]
    return right - left_part


def corner_view(table: np.ndarray, row_off: int, col_off: int, out_r: int, out_c: int, stride: int) -> np.ndarray:
    """Strided view of one corner of every window placement."""
    return table[
        row_off : row_off + (out_r - 1) * stride + 1 : stride,
        col_off : col_off + (out_c - 1) * stride + 1 : stride,
    ]


def sweep_window_sums(
    table: np.ndarray,
    win: WindowSpec,
    out_r: int,
    out_c: int,
    out: np.ndarray,
    row_lo: int,
    row_hi: int,
) -> None:
    """Corner-lookup window sums for output rows [row_lo, row_hi) into ``out``.

    Evaluation order is fixed — (bottom-right - top-right) minus
    (bottom-left - top-left) — so unsigned accumulators never underflow and
    sequential and parallel sweeps agree bit for bit.
    """
    w, s = win.w, win.stride
    br = corner_view(table, w, w, out_r, out_c, s)[row_lo:row_hi]
    tr = corner_view(table, 0, w, out_r, out_c, s)[row_lo:row_hi]
    bl = corner_view(table, w, 0, out_r, out_c, s)[row_lo:row_hi]
    tl = corner_view(table, 0, 0, out_r, out_c, s)[row_lo:row_hi]
    block = out[row_lo:row_hi]
    np.subtract(br, tr, out=block)
    block -= bl - tl


def _sats_for_stat(img: ImageGrid, stat: StatKind, builder) -> tuple[IntegralImage, IntegralImage | None]:
    sum_sat = builder(img, False)
    sq_sat = builder(img, True) if stats.needs_squares(stat) else None
    return sum_sat, sq_sat


def _sweep_full(sat: IntegralImage, win: WindowSpec, out_r: int, out_c: int) -> np.ndarray:
    out = np.empty((out_r, out_c), dtype=sat.table.dtype)
    sweep_window_sums(sat.table, win, out_r, out_c, out, 0, out_r)
    return out


def _finalize_from_sats(
    img: ImageGrid,
    win: WindowSpec,
    stat: StatKind,
    sum_sat: IntegralImage,
    sq_sat: IntegralImage | None,
    sweep=_sweep_full,
) -> ResultGrid:
    out_r, out_c = output_dims(img.rows, img.cols, win)
    sums = sweep(sum_sat, win, out_r, out_c)
    sqs = sweep(sq_sat, win, out_r, out_c) if sq_sat is not None else None
    return stats.finalize(stat, sums, sqs, win.area, img.elem_kind, win.w)


def swa_integral(img: ImageGrid, win: WindowSpec, stat: StatKind) -> ResultGrid:
    """Sliding-window ``stat`` via summed-area tables: build once, O(1) per window."""
    win.validate_for(img.rows, img.cols)
    sum_sat, sq_sat = _sats_for_stat(img, stat, build_sat)
    return _finalize_from_sats(img, win, stat, sum_sat, sq_sat)


def swa_multi_window(img: ImageGrid, windows: list[WindowSpec], stat: StatKind) -> list[ResultGrid]:
    """Answer several window sizes from one set of tables.

    Every window is validated before any table is built; output i is
    bit-identical to ``swa_integral(img, windows[i], stat)``.
    """
    if not windows:
        raise ValueError("windows list must be non-empty")
    for win in windows:
        win.validate_for(img.rows, img.cols)
    sum_sat, sq_sat = _sats_for_stat(img, stat, build_sat)
    return [_finalize_from_sats(img, win, stat, sum_sat, sq_sat) for win in windows]
