"""Array-in, array-out entry points over the engine.

These mirror the engine's in-memory contract: uint8/uint16/float32 input,
a freshly allocated uint64 (exact integer sums) or float64 result, and no
mutation of the caller's buffer. Contiguous input crosses without copying;
non-contiguous input is copied once. The heavy kernels are numpy
operations that release the interpreter lock, so concurrent calls from
multiple threads are safe.
"""

from __future__ import annotations

import numpy as np

from .grid import ImageGrid, StatKind, WindowSpec
from .integral import swa_integral, swa_multi_window
from .naive import dp_naive_swa, naive_swa
from .parallel import ParallelConfig, swa_parallel


def _as_grid(array) -> ImageGrid:
    arr = np.asarray(array)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D array, got {arr.ndim} dimensions")
    return ImageGrid.from_array(arr)


def swa(
    array,
    window: int,
    stat: str = "sum",
    method: str = "parallel",
    stride: int = 1,
    threads: int = 0,
) -> np.ndarray:
    """Sliding-window statistic over a 2-D array.

    ``stat`` is one of sum/mean/std, ``method`` one of
    naive/dp/integral/parallel; ``threads=0`` means the library default
    (detected hardware parallelism).
    """
    img = _as_grid(array)
    win = WindowSpec(window, stride)
    kind = StatKind.parse(stat)
    if method == "naive":
        result = naive_swa(img, win, kind)
    elif method == "dp":
        result = dp_naive_swa(img, win, kind)
    elif method == "integral":
        result = swa_integral(img, win, kind)
    elif method == "parallel":
        result = swa_parallel(img, win, kind, ParallelConfig(workers=threads))
    else:
        raise ValueError(f"unknown method {method!r}; expected naive, dp, integral, or parallel")
    return result.values


def multi_window(array, windows: list[int], stat: str = "sum") -> list[np.ndarray]:
    """Statistics for several window sizes from a single set of tables.

    Elementwise equal to mapping :func:`swa` with method="integral" over
    ``windows``, but the tables are built once.
    """
    img = _as_grid(array)
    specs = [WindowSpec(w) for w in windows]
    results = swa_multi_window(img, specs, StatKind.parse(stat))
    return [r.values for r in results]
