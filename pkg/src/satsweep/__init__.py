"""Sliding-window sum/mean/stddev over 2-D grids via summed-area tables.

Four interchangeable strategies — naive, dp (incremental strips),
integral (summed-area table), and parallel (multi-worker integral) — that
agree exactly on integer sums and to float64 precision otherwise.
"""

from .api import multi_window, swa
from .bench import BenchPlan, BenchReport, run_bench, run_timed
from .errors import (
    GridValidationError,
    ImageFormatError,
    InvalidWindowError,
    ResourceLimitError,
    SatsweepError,
    UnsupportedFormatError,
)
from .grid import ElemKind, ImageGrid, ResultGrid, StatKind, WindowSpec, output_dims
from .imgio import RawSidecar, generate, read_pgm, read_raw, read_raw_result, write_pgm, write_raw
from .integral import AccumKind, IntegralImage, build_sat, select_accum, swa_integral, swa_multi_window, window_sum
from .naive import dp_naive_swa, naive_swa
from .parallel import ParallelConfig, WriteCensus, build_sat_parallel, swa_parallel

__version__ = "0.1.0"

__all__ = [
    "AccumKind",
    "BenchPlan",
    "BenchReport",
    "ElemKind",
    "GridValidationError",
    "ImageFormatError",
    "ImageGrid",
    "IntegralImage",
    "InvalidWindowError",
    "ParallelConfig",
    "RawSidecar",
    "ResourceLimitError",
    "ResultGrid",
    "SatsweepError",
    "StatKind",
    "UnsupportedFormatError",
    "WindowSpec",
    "WriteCensus",
    "build_sat",
    "build_sat_parallel",
    "dp_naive_swa",
    "generate",
    "multi_window",
    "naive_swa",
    "output_dims",
    "read_pgm",
    "read_raw",
    "read_raw_result",
    "run_bench",
    "run_timed",
    "select_accum",
    "swa",
    "swa_integral",
    "swa_multi_window",
    "swa_parallel",
    "window_sum",
    "write_pgm",
    "write_raw",
    "__version__",
]
