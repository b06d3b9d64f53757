"""Command-line front end: run analyses, generate inputs, run benchmarks.

Exit codes: 0 success, 1 I/O or file-format errors, 2 flag/validation
errors (argparse's own convention). Raw inputs and outputs use a JSON
sidecar stored at ``<raw path>.json``.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import bench
from .errors import ImageFormatError, InvalidWindowError, SatsweepError, UnsupportedFormatError
from .grid import ElemKind, ImageGrid, StatKind, WindowSpec
from .imgio import generate, read_pgm, read_raw, write_pgm, write_raw


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def _fail(flag: str, message: str) -> "NoReturn":  # noqa: F821
    print(f"error: {flag}: {message}", file=sys.stderr)
    raise SystemExit(2)


def _parse_sizes(text: str) -> list[tuple[int, int]]:
    sizes = []
    for part in text.split(","):
        try:
            r, c = part.lower().split("x")
            sizes.append((int(r), int(c)))
        except ValueError:
            _fail("--sizes", f"expected RxC[,RxC...], got {part!r}")
        if sizes[-1][0] < 1 or sizes[-1][1] < 1:
            _fail("--sizes", f"dims must be >= 1, got {part!r}")
    return sizes


def _parse_int_list(flag: str, text: str) -> list[int]:
    out = []
    for part in text.split(","):
        try:
            out.append(int(part))
        except ValueError:
            _fail(flag, f"expected a comma-separated integer list, got {part!r}")
        if out[-1] < 1:
            _fail(flag, f"entries must be >= 1, got {out[-1]}")
    return out


def _read_input(path: str, fmt: str) -> ImageGrid:
    if fmt == "pgm":
        return read_pgm(path)
    return read_raw(path, path + ".json")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="satsweep", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run one sliding-window analysis on an image file")
    run.add_argument("--input", required=True)
    run.add_argument("--format", required=True, choices=["pgm", "raw"])
    run.add_argument("--window", required=True, type=_positive_int)
    run.add_argument("--stride", type=_positive_int, default=1)
    run.add_argument("--stat", required=True, choices=["sum", "mean", "std"])
    run.add_argument("--method", required=True, choices=["naive", "dp", "integral", "parallel"])
    run.add_argument("--threads", type=_nonneg_int, default=0)
    run.add_argument("--output", required=True)
    run.add_argument("--output-format", choices=["raw", "csv"], default="raw")

    bench_p = sub.add_parser("bench", help="benchmark the strategies and emit CSV timings")
    bench_p.add_argument("--sizes")
    bench_p.add_argument("--windows")
    bench_p.add_argument("--methods")
    bench_p.add_argument("--stat", choices=["sum", "mean", "std"], default="sum")
    bench_p.add_argument("--threads", type=_nonneg_int, default=0)
    bench_p.add_argument("--repeats", type=_positive_int, default=3)
    bench_p.add_argument("--seed", type=int, default=1)
    bench_p.add_argument("--stride", type=_positive_int, default=1)
    bench_p.add_argument("--preset", choices=sorted(bench.PRESETS))
    bench_p.add_argument("--timeout", type=float, default=600.0, help="per-run budget in seconds")
    bench_p.add_argument("--output", help="CSV file (default: standard output)")

    gen = sub.add_parser("gen", help="write a deterministic synthetic image")
    gen.add_argument("--kind", required=True, choices=["random", "constant", "checkerboard"])
    gen.add_argument("--rows", required=True, type=_positive_int)
    gen.add_argument("--cols", required=True, type=_positive_int)
    gen.add_argument("--dtype", required=True, choices=["u8", "u16", "f32"])
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--value", type=float, default=1)
    gen.add_argument("--tile", type=_positive_int, default=1)
    gen.add_argument("--output", required=True)
    gen.add_argument("--format", required=True, choices=["pgm", "raw"])
    return parser


def _cmd_run(args) -> int:
    img = _read_input(args.input, args.format)
    if args.window > min(img.rows, img.cols):
        _fail("--window", f"window size {args.window} exceeds grid dims {img.rows}x{img.cols}")
    if args.stride > max(img.rows, img.cols):
        _fail("--stride", f"stride {args.stride} exceeds grid dims {img.rows}x{img.cols}")
    win = WindowSpec(args.window, args.stride)
    stat = StatKind(args.stat)
    timing = bench.run_timed(args.method, img, win, stat, args.threads)
    result = timing.result
    if args.output_format == "raw":
        write_raw(result, args.output, args.output + ".json")
    else:
        fmt = "%d" if result.values.dtype == np.uint64 else "%.17g"
        np.savetxt(args.output, result.values, fmt=fmt, delimiter=",")
    print(
        f"in={img.rows}x{img.cols} out={result.out_rows}x{result.out_cols} "
        f"method={args.method} stat={args.stat} elapsed_ms={timing.total_s * 1e3:.3f}"
    )
    return 0


def _cmd_bench(args) -> int:
    preset = bench.PRESETS[args.preset] if args.preset else None
    sizes = _parse_sizes(args.sizes) if args.sizes else (preset or {}).get("sizes")
    windows = _parse_int_list("--windows", args.windows) if args.windows else (preset or {}).get("windows")
    methods = args.methods.split(",") if args.methods else (preset or {}).get("methods")
    if not sizes:
        _fail("--sizes", "required unless --preset is given")
    if not windows:
        _fail("--windows", "required unless --preset is given")
    if not methods:
        _fail("--methods", "required unless --preset is given")
    for m in methods:
        if m not in bench.METHOD_NAMES:
            _fail("--methods", f"unknown method {m!r}; expected naive, dp, integral, or parallel")
    for rows, cols in sizes:
        for w in windows:
            if w > min(rows, cols):
                _fail("--windows", f"window {w} exceeds grid dims {rows}x{cols}")
            if args.stride > max(rows, cols):
                _fail("--stride", f"stride {args.stride} exceeds grid dims {rows}x{cols}")

    plan = bench.BenchPlan(
        sizes=sizes,
        windows=windows,
        methods=methods,
        stat=StatKind(args.stat),
        threads=args.threads,
        repeats=args.repeats,
        seed=args.seed,
        stride=args.stride,
        timeout_s=args.timeout,
    )
    sink = open(args.output, "w", encoding="utf-8", newline="") if args.output else sys.stdout
    try:
        print(bench.CSV_HEADER, file=sink, flush=True)
        bench.run_bench(plan, emit=lambda row: print(row.csv_row(), file=sink, flush=True))
    finally:
        if args.output:
            sink.close()
    return 0


def _cmd_gen(args) -> int:
    kind = ElemKind(args.dtype)
    if args.format == "pgm" and kind is ElemKind.F32:
        _fail("--format", "pgm cannot represent f32 grids; use --format raw")
    try:
        img = generate(args.kind, args.rows, args.cols, kind, seed=args.seed, value=args.value, tile=args.tile)
    except SatsweepError as exc:
        _fail("--value" if args.kind == "constant" else "--kind", str(exc))
    if args.format == "pgm":
        write_pgm(img, args.output)
    else:
        write_raw(img, args.output, args.output + ".json")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "bench":
            return _cmd_bench(args)
        return _cmd_gen(args)
    except InvalidWindowError as exc:
        _fail("--window", str(exc))
    except (ImageFormatError, UnsupportedFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
