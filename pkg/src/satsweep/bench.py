"""Benchmark harness: timed strategy runs and CSV timing reports.

Timings are split into a build phase (table construction; zero for the
naive paths) and a query phase, which makes the two-term cost model of the
integral method checkable rather than just total speedups. Methods whose
projected runtime exceeds the timeout are skipped with a "skipped" row;
the projection times a small cropped probe and scales it by the method's
cost model.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from . import imgio
from .grid import ElemKind, ImageGrid, ResultGrid, StatKind, WindowSpec, output_dims
from .integral import _finalize_from_sats, _sats_for_stat, build_sat
from .naive import dp_naive_swa, naive_swa
from .parallel import ParallelConfig, build_sat_parallel, parallel_sweep

CSV_HEADER = "method,rows,cols,window,stride,stat,workers,build_ms,query_ms,total_ms,repeat_index"

#: CLI method tokens mapped to report method names
METHOD_NAMES = {"naive": "naive", "dp": "dp_naive", "integral": "integral", "parallel": "parallel"}

_PROBE_OUT_ROWS = 3
_PROBE_OUT_COLS = 64


@dataclass(frozen=True)
class BenchReport:
    """One timing record; serialized as one CSV row."""

    method: str
    rows: int
    cols: int
    window: int
    stride: int
    stat: str
    workers: int
    build_ms: float | None
    query_ms: float | None
    total_ms: float | None
    repeat_index: int
    skipped: bool = False

    def csv_row(self) -> str:
        if self.skipped:
            times = ["skipped", "skipped", "skipped"]
        else:
            times = [f"{self.build_ms:.3f}", f"{self.query_ms:.3f}", f"{self.total_ms:.3f}"]
        fields = [
            self.method,
            str(self.rows),
            str(self.cols),
            str(self.window),
            str(self.stride),
            self.stat,
            str(self.workers),
            *times,
            str(self.repeat_index),
        ]
        return ",".join(fields)


@dataclass(frozen=True)
class TimedRun:
    result: ResultGrid
    build_s: float
    query_s: float
    workers: int

    @property
    def total_s(self) -> float:
        return self.build_s + self.query_s


def run_timed(method: str, img: ImageGrid, win: WindowSpec, stat: StatKind, threads: int = 0) -> TimedRun:
    """Execute one strategy with per-phase wall timings (monotonic clock)."""
    win.validate_for(img.rows, img.cols)
    if method == "naive":
        t0 = time.perf_counter()
        result = naive_swa(img, win, stat)
        return TimedRun(result, 0.0, time.perf_counter() - t0, 1)
    if method == "dp":
        t0 = time.perf_counter()
        result = dp_naive_swa(img, win, stat)
        return TimedRun(result, 0.0, time.perf_counter() - t0, 1)
    if method == "integral":
        t0 = time.perf_counter()
        sum_sat, sq_sat = _sats_for_stat(img, stat, build_sat)
        t1 = time.perf_counter()
        result = _finalize_from_sats(img, win, stat, sum_sat, sq_sat)
        return TimedRun(result, t1 - t0, time.perf_counter() - t1, 1)
    if method == "parallel":
        cfg = ParallelConfig(workers=threads)
        workers = cfg.effective_workers(img.rows * img.cols)
        t0 = time.perf_counter()
        sum_sat, sq_sat = _sats_for_stat(img, stat, lambda image, squared: build_sat_parallel(image, squared, cfg))
        t1 = time.perf_counter()
        sweep = lambda sat, w, r, c: parallel_sweep(sat, w, r, c, cfg)
        result = _finalize_from_sats(img, win, stat, sum_sat, sq_sat, sweep=sweep)
        return TimedRun(result, t1 - t0, time.perf_counter() - t1, workers)
    raise ValueError(f"unknown method {method!r}; expected one of {sorted(METHOD_NAMES)}")


def _model_cost(method: str, out_r: int, out_c: int, w: int, stride: int, rows: int, cols: int) -> float:
    if method == "naive":
        return out_r * out_c * w * w
    if method == "dp":
        # per output row: one full window plus strip updates across the row
        return out_r * (w * w + 2 * w * stride * max(0, out_c - 1))
    # integral and parallel: two build passes dominate, plus the sweep
    return rows * cols * 2 + out_r * out_c


def project_runtime(method: str, img: ImageGrid, win: WindowSpec, stat: StatKind, threads: int = 0) -> float:
    """Projected seconds for a full run, from a small timed probe."""
    out_r, out_c = output_dims(img.rows, img.cols, win)
    w, s = win.w, win.stride
    if method in ("naive", "dp"):
        pr = min(out_r, _PROBE_OUT_ROWS)
        pc = min(out_c, _PROBE_OUT_COLS)
        probe = img.crop(w + (pr - 1) * s, w + (pc - 1) * s)
    else:
        rows = min(img.rows, max(w, 256))
        pr, pc = output_dims(rows, img.cols, win)
        probe = img.crop(rows, None)
    timing = run_timed(method, probe, win, stat, threads)
    scale = _model_cost(method, out_r, out_c, w, s, img.rows, img.cols) / _model_cost(
        method, pr, pc, w, s, probe.rows, probe.cols
    )
    return timing.total_s * scale


@dataclass(frozen=True)
class BenchPlan:
    sizes: list[tuple[int, int]]
    windows: list[int]
    methods: list[str]
    stat: StatKind = StatKind.SUM
    threads: int = 0
    repeats: int = 3
    seed: int = 1
    stride: int = 1
    timeout_s: float = 600.0


#: preset exercising all four methods at desk scale
PRESETS = {
    "paper-desk": {
        "sizes": [(1024, 1024), (2048, 2048), (4096, 4096)],
        "windows": [50, 500, 1000],
        "methods": ["naive", "dp", "integral", "parallel"],
    }
}


def run_bench(plan: BenchPlan, emit=None) -> list[BenchReport]:
    """Run the full plan; rows stream to ``emit`` as they complete."""
    reports: list[BenchReport] = []

    def publish(report: BenchReport) -> None:
        reports.append(report)
        if emit is not None:
            emit(report)

    for rows, cols in plan.sizes:
        img = imgio.generate("random", rows, cols, ElemKind.U16, seed=plan.seed)
        for w in plan.windows:
            win = WindowSpec(w, plan.stride)
            win.validate_for(rows, cols)
            for method in plan.methods:
                name = METHOD_NAMES[method]
                projected = project_runtime(method, img, win, plan.stat, plan.threads)
                if projected > plan.timeout_s:
                    publish(
                        BenchReport(name, rows, cols, w, plan.stride, plan.stat.value, 1, None, None, None, 0, True)
                    )
                    continue
                for rep in range(plan.repeats):
                    t = run_timed(method, img, win, plan.stat, plan.threads)
                    publish(
                        BenchReport(
                            name,
                            rows,
                            cols,
                            w,
                            plan.stride,
                            plan.stat.value,
                            t.workers,
                            t.build_s * 1e3,
                            t.query_s * 1e3,
                            t.total_s * 1e3,
                            rep,
                        )
                    )
    return reports
