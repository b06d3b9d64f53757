"""Shared data model: pixel grids, window geometry, statistic kinds, result grids.

Every strategy (naive, dp, integral, parallel) consumes and produces these
types, and all of them must agree on :func:`output_dims`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import GridValidationError, InvalidWindowError


class ElemKind(enum.Enum):
    """Pixel element kind of an input grid."""

    U8 = "u8"
    U16 = "u16"
    F32 = "f32"

    @property
    def dtype(self) -> np.dtype:
        return np.dtype({ElemKind.U8: np.uint8, ElemKind.U16: np.uint16, ElemKind.F32: np.float32}[self])

    @property
    def is_integer(self) -> bool:
        return self in (ElemKind.U8, ElemKind.U16)

    @property
    def max_value(self) -> int | float:
        """Largest representable pixel value; drives accumulator overflow bounds."""
        if self is ElemKind.U8:
            return 255
        if self is ElemKind.U16:
            return 65535
        return float(np.finfo(np.float32).max)

    @classmethod
    def from_dtype(cls, dtype: np.dtype) -> "ElemKind":
        for kind in cls:
            if kind.dtype == dtype:
                return kind
        raise TypeError(f"unsupported element dtype {dtype!r}; expected uint8, uint16, or float32")


class StatKind(enum.Enum):
    """Per-window statistic. STD is the population standard deviation (divisor w*w)."""

    SUM = "sum"
    MEAN = "mean"
    STD = "std"

    @classmethod
    def parse(cls, name: str) -> "StatKind":
        try:
            return cls(name.lower())
        except ValueError:
            raise ValueError(f"unknown stat {name!r}; expected one of sum, mean, std") from None


class ImageGrid:
    """Row-major 2-D pixel grid with a fixed element kind.

    Immutable after construction: the wrapped array view is marked read-only,
    so instances are safe to share across concurrent workers.
    """

    __slots__ = ("values", "elem_kind")

    def __init__(self, values: np.ndarray, elem_kind: ElemKind | None = None):
        arr = np.asarray(values)
        if arr.ndim != 2:
            raise GridValidationError(f"grid must be 2-D, got {arr.ndim} dimensions")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise GridValidationError(f"grid dims must be >= 1, got {arr.shape}")
        kind = elem_kind or ElemKind.from_dtype(arr.dtype)
        if arr.dtype != kind.dtype:
            raise GridValidationError(f"dtype {arr.dtype} does not match element kind {kind.value}")
        if kind is ElemKind.F32 and not np.isfinite(arr).all():
            raise GridValidationError("F32 grid contains NaN or Inf; only finite values are admitted")
        view = arr.view()
        view.flags.writeable = False
        self.values = view
        self.elem_kind = kind

    @classmethod
    def from_array(cls, array: np.ndarray) -> "ImageGrid":
        """Wrap a contiguous 2-D uint8/uint16/float32 array without copying.

        Non-contiguous input is copied once.
        """
        arr = np.ascontiguousarray(array)
        return cls(arr)

    @property
    def rows(self) -> int:
        return self.values.shape[0]

    @property
    def cols(self) -> int:
        return self.values.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape

    def crop(self, rows: int | None = None, cols: int | None = None) -> "ImageGrid":
        """View of the top-left rows x cols corner (used by the benchmark prober)."""
        rows = self.rows if rows is None else rows
        cols = self.cols if cols is None else cols
        if not (1 <= rows <= self.rows and 1 <= cols <= self.cols):
            raise GridValidationError(f"crop {rows}x{cols} outside {self.rows}x{self.cols}")
        return ImageGrid(self.values[:rows, :cols], self.elem_kind)

    def __repr__(self) -> str:
        return f"ImageGrid({self.rows}x{self.cols}, {self.elem_kind.value})"


@dataclass(frozen=True)
class WindowSpec:
    """Square analysis window: side length ``w`` and step ``stride``.

    Placements are "valid" only — every window lies fully inside the grid,
    no padding.
    """

    w: int
    stride: int = 1

    def __post_init__(self):
        if self.w < 1:
            raise InvalidWindowError(f"window size must be >= 1, got {self.w}")
        if self.stride < 1:
            raise InvalidWindowError(f"stride must be >= 1, got {self.stride}")

    def validate_for(self, rows: int, cols: int) -> None:
        if self.w > min(rows, cols):
            raise InvalidWindowError(
                f"window size {self.w} exceeds grid dims {rows}x{cols}; windows must fit fully inside the grid"
            )

    @property
    def area(self) -> int:
        return self.w * self.w


def output_dims(rows: int, cols: int, win: WindowSpec) -> tuple[int, int]:
    """Number of valid window placements per axis.

    out = floor((dim - w) / stride) + 1; for stride 1 this is (rows-w+1, cols-w+1).
    """
    win.validate_for(rows, cols)
    return (rows - win.w) // win.stride + 1, (cols - win.w) // win.stride + 1


@dataclass
class ResultGrid:
    """Dense grid of per-window statistics.

    ``values`` is uint64 (exact) when stat is SUM over an integer-kind input,
    float64 otherwise.
    """

    stat: StatKind
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.values.ndim != 2:
            raise GridValidationError("result values must be 2-D")

    @property
    def out_rows(self) -> int:
        return self.values.shape[0]

    @property
    def out_cols(self) -> int:
        return self.values.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape

    def __repr__(self) -> str:
        return f"ResultGrid({self.out_rows}x{self.out_cols}, {self.stat.value}, {self.values.dtype})"
