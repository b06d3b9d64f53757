"""Multi-worker integral-image SWA with deterministic output.

Table construction runs in two phases: row blocks get the fill plus
horizontal prefix sums, then (after a barrier) column blocks get vertical
prefix sums. The query sweep partitions output rows. Blocks are disjoint
and there are no cross-worker reductions, so every worker count produces
bit-identical results to the sequential path.

Workers are threads: the heavy kernels are large numpy operations that
release the interpreter lock.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .grid import ImageGrid, ResultGrid, StatKind, WindowSpec
from .integral import (
    IntegralImage,
    _finalize_from_sats,
    _sats_for_stat,
    allocate_table,
    fill_rows,
    scan_cols,
    scan_rows,
    swa_integral,
    sweep_window_sums,
)


@dataclass
class WriteCensus:
    """Debug record of which index ranges each phase's workers wrote."""

    ranges: dict[str, list[tuple[int, int]]] = field(default_factory=dict)

    def record(self, phase: str, lo: int, hi: int) -> None:
        self.ranges.setdefault(phase, []).append((lo, hi))

    def assert_disjoint_cover(self, phase: str, total: int) -> None:
        """Every index in [0, total) written by exactly one worker."""
        hits = np.zeros(total, dtype=np.int64)
        for lo, hi in self.ranges.get(phase, []):
            hits[lo:hi] += 1
        if not (hits == 1).all():
            bad = int(np.flatnonzero(hits != 1)[0])
            raise AssertionError(f"phase {phase!r}: index {bad} written {int(hits[bad])} times")


@dataclass(frozen=True)
class ParallelConfig:
    """Worker count and the size threshold below which execution stays sequential.

    ``workers=0`` means detected hardware parallelism.
    """

    workers: int = 0
    min_parallel_elems: int = 2**20
    census: WriteCensus | None = None

    def __post_init__(self):
        if self.workers < 0:
            raise ValueError(f"workers must be >= 0 (0 = auto), got {self.workers}")
        if self.min_parallel_elems < 0:
            raise ValueError("min_parallel_elems must be >= 0")

    def resolved_workers(self) -> int:
        return self.workers if self.workers >= 1 else (os.cpu_count() or 1)

    def effective_workers(self, total_elems: int) -> int:
        if total_elems < self.min_parallel_elems:
            return 1
        return self.resolved_workers()


def partition(n: int, p: int) -> list[tuple[int, int]]:
    """Split [0, n) into at most p contiguous, non-empty, balanced blocks."""
    p = max(1, min(p, n))
    base, rem = divmod(n, p)
    blocks = []
    lo = 0
    for i in range(p):
        hi = lo + base + (1 if i < rem else 0)
        blocks.append((lo, hi))
        lo = hi
    return blocks


def _run_phase(fn, blocks: list[tuple[int, int]], census: WriteCensus | None, phase: str) -> None:
    if census is not None:
        for lo, hi in blocks:
            census.record(phase, lo, hi)
    if len(blocks) == 1:
        fn(*blocks[0])
        return
    with ThreadPoolExecutor(max_workers=len(blocks)) as pool:
        futures = [pool.submit(fn, lo, hi) for lo, hi in blocks]
        for fut in futures:
            fut.result()


def build_sat_parallel(img: ImageGrid, squared: bool = False, cfg: ParallelConfig | None = None) -> IntegralImage:
    """Blocked two-phase table construction; bit-identical to ``build_sat``."""
    cfg = cfg or ParallelConfig()
    p = cfg.effective_workers(img.rows * img.cols)
    table, kind = allocate_table(img.elem_kind, img.rows, img.cols, squared)
    inner = table[1:, 1:]
    values = img.values

    def row_phase(lo: int, hi: int) -> None:
        fill_rows(inner, values, squared, lo, hi)
        scan_rows(inner, lo, hi)

    suffix = "sq" if squared else "sum"
    _run_phase(row_phase, partition(img.rows, p), cfg.census, f"rows/{suffix}")
    _run_phase(lambda lo, hi: scan_cols(inner, lo, hi), partition(img.cols, p), cfg.census, f"cols/{suffix}")
    return IntegralImage(table, kind, (img.rows, img.cols), squared)


def parallel_sweep(sat: IntegralImage, win: WindowSpec, out_r: int, out_c: int, cfg: ParallelConfig) -> np.ndarray:
    """Corner-lookup sweep with output rows partitioned across workers."""
    p = cfg.effective_workers(sat.rows * sat.cols)
    out = np.empty((out_r, out_c), dtype=sat.table.dtype)
    _run_phase(
        lambda lo, hi: sweep_window_sums(sat.table, win, out_r, out_c, out, lo, hi),
        partition(out_r, p),
        cfg.census,
        "query/sq" if sat.squared else "query/sum",
    )
    return out


def swa_parallel(img: ImageGrid, win: WindowSpec, stat: StatKind, cfg: ParallelConfig | None = None) -> ResultGrid:
    """Parallel table build plus parallel query sweep.

    Degenerates to the sequential implementation for one effective worker;
    results are bit-identical to ``swa_integral`` for every worker count.
    """
    cfg = cfg or ParallelConfig()
    win.validate_for(img.rows, img.cols)
    if cfg.effective_workers(img.rows * img.cols) == 1:
        return swa_integral(img, win, stat)
    sum_sat, sq_sat = _sats_for_stat(img, stat, lambda image, squared: build_sat_parallel(image, squared, cfg))
    sweep = lambda sat, w, r, c: parallel_sweep(sat, w, r, c, cfg)
    return _finalize_from_sats(img, win, stat, sum_sat, sq_sat, sweep=sweep)
