"""Shared helpers: seeded grids and the oracle-comparison tolerance model."""

from __future__ import annotations

import numpy as np
import pytest

import satsweep as ss

EPS = float(np.finfo(np.float64).eps)

KINDS = (ss.ElemKind.U8, ss.ElemKind.U16, ss.ElemKind.F32)


def random_grid(rng: np.random.Generator, rows: int, cols: int, kind: ss.ElemKind) -> ss.ImageGrid:
    if kind.is_integer:
        values = rng.integers(0, int(kind.max_value) + 1, size=(rows, cols), dtype=kind.dtype)
    else:
        values = rng.random(size=(rows, cols), dtype=np.float32)
    return ss.ImageGrid(values)


def stat_atol(stat: ss.StatKind, img: ss.ImageGrid, n: int) -> float:
    """Absolute noise floor for float-accumulated table paths.

    Integer inputs use exact accumulators on every path, so 0. For F32 the
    tables accumulate in float64 and a corner difference inherits the
    rounding of prefix sums whose magnitude scales with the whole-image
    total: bounded by C * rows * cols * eps * M^k with M = max(1, max|x|)
    and k = 1 (sum table) or 2 (squared table). Dividing by n = w^2 gives
    the mean floor; the std floor is the square root of the variance
    floor. Relative-only comparison is degenerate wherever the true
    statistic is zero (e.g. any w=1 std), which is why this floor exists.
    """
    if img.elem_kind.is_integer:
        return 0.0
    scale = max(1.0, float(np.abs(img.values).max()))
    rc = img.rows * img.cols
    if stat is ss.StatKind.SUM:
        return 4.0 * rc * EPS * scale
    if stat is ss.StatKind.MEAN:
        return 4.0 * rc * EPS * scale / n
    return float(np.sqrt(8.0 * rc * EPS)) * scale


def assert_matches_oracle(
    actual: ss.ResultGrid,
    oracle: ss.ResultGrid,
    img: ss.ImageGrid,
    stat: ss.StatKind,
    rtol: float,
    n: int,
) -> None:
    """Exact for integer sums; rtol plus the derived atol floor otherwise."""
    assert actual.shape == oracle.shape
    if stat is ss.StatKind.SUM and img.elem_kind.is_integer:
        assert actual.values.dtype == np.uint64
        assert oracle.values.dtype == np.uint64
        np.testing.assert_array_equal(actual.values, oracle.values)
        return
    a = np.asarray(actual.values, dtype=np.float64)
    b = np.asarray(oracle.values, dtype=np.float64)
    np.testing.assert_allclose(a, b, rtol=rtol, atol=stat_atol(stat, img, n))


def rtol_for(kind: ss.ElemKind) -> float:
    return 1e-9 if kind.is_integer else 1e-6


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(0xC0FFEE)
