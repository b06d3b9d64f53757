import numpy as np
import pytest

import satsweep as ss
from conftest import KINDS, assert_matches_oracle, random_grid


class TestNaiveExamples:
    def test_zero_image(self):
        img = ss.ImageGrid(np.zeros((3, 3), dtype=np.uint8))
        out = ss.naive_swa(img, ss.WindowSpec(2), ss.StatKind.SUM)
        np.testing.assert_array_equal(out.values, np.zeros((2, 2), dtype=np.uint64))

    def test_hand_summation(self):
        img = ss.ImageGrid(np.array([[1, 2], [3, 4]], dtype=np.uint8))
        out = ss.naive_swa(img, ss.WindowSpec(2), ss.StatKind.SUM)
        np.testing.assert_array_equal(out.values, [[10]])

    def test_constant_mean(self):
        img = ss.ImageGrid(np.ones((3, 3), dtype=np.uint8))
        out = ss.naive_swa(img, ss.WindowSpec(2), ss.StatKind.MEAN)
        np.testing.assert_array_equal(out.values, np.ones((2, 2)))
        assert out.values.dtype == np.float64

    def test_window_too_large(self):
        img = ss.ImageGrid(np.ones((3, 3), dtype=np.uint8))
        with pytest.raises(ss.InvalidWindowError):
            ss.naive_swa(img, ss.WindowSpec(4), ss.StatKind.SUM)


class TestDpExamples:
    def test_strided_constant(self):
        img = ss.ImageGrid(np.full((4, 4), 2, dtype=np.uint8))
        out = ss.dp_naive_swa(img, ss.WindowSpec(2, 2), ss.StatKind.SUM)
        np.testing.assert_array_equal(out.values, np.full((2, 2), 8, dtype=np.uint64))

    def test_population_std(self):
        # window {0, 2, 0, 2}: mean 1, population variance 1
        img = ss.ImageGrid(np.array([[0, 2], [0, 2]], dtype=np.uint8))
        out = ss.dp_naive_swa(img, ss.WindowSpec(2), ss.StatKind.STD)
        np.testing.assert_array_equal(out.values, [[1.0]])


@pytest.mark.parametrize("kind", KINDS, ids=lambda k: k.value)
@pytest.mark.parametrize("stat", list(ss.StatKind), ids=lambda s: s.value)
def test_dp_equals_naive(rng, kind, stat):
    """Definitional equivalence, including stride > w (disjoint windows)."""
    for rows, cols, w, stride in [
        (9, 9, 1, 1),
        (16, 20, 3, 1),
        (33, 17, 5, 2),
        (24, 24, 4, 7),  # stride > w: no shared columns
        (40, 31, 16, 16),
        (21, 64, 21, 1),
    ]:
        img = random_grid(rng, rows, cols, kind)
        win = ss.WindowSpec(w, stride)
        naive = ss.naive_swa(img, win, stat)
        dp = ss.dp_naive_swa(img, win, stat)
        if stat is ss.StatKind.SUM and kind.is_integer:
            np.testing.assert_array_equal(dp.values, naive.values)
        else:
            assert_matches_oracle(dp, naive, img, stat, rtol=1e-12, n=win.area)


def test_dp_exact_integer_sums_bit_equal(rng):
    img = random_grid(rng, 64, 64, ss.ElemKind.U16)
    win = ss.WindowSpec(13, 3)
    a = ss.naive_swa(img, win, ss.StatKind.SUM).values
    b = ss.dp_naive_swa(img, win, ss.StatKind.SUM).values
    assert a.dtype == b.dtype == np.uint64
    np.testing.assert_array_equal(a, b)


def test_naive_std_constant_window_is_exactly_zero():
    img = ss.ImageGrid(np.full((8, 8), 7, dtype=np.uint16))
    for fn in (ss.naive_swa, ss.dp_naive_swa):
        out = fn(img, ss.WindowSpec(3), ss.StatKind.STD)
        np.testing.assert_array_equal(out.values, np.zeros((6, 6)))
