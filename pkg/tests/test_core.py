import math

import pytest
from hypothesis import given, strategies as st

from meanlab import (
    DyadicRational,
    EvalCounter,
    Interval,
    ToleranceConfig,
    TwoPlaceFunction,
    dyadic_midpoint,
    dyadic_to_real,
    interval_grid,
)


def dyadics(max_exp=20):
    return st.integers(0, max_exp).flatmap(
        lambda e: st.integers(0, 2**e).map(lambda n: DyadicRational(n, e))
    )


class TestDyadics:
    def test_midpoint_examples(self):
        assert dyadic_midpoint(DyadicRational(0, 0), DyadicRational(1, 0)) == DyadicRational(1, 1)
        assert dyadic_midpoint(DyadicRational(1, 1), DyadicRational(1, 0)) == DyadicRational(3, 2)
        assert dyadic_midpoint(DyadicRational(1, 2), DyadicRational(3, 3)) == DyadicRational(5, 4)

    def test_reduction_is_canonical(self):
        assert DyadicRational(2, 2) == DyadicRational(1, 1)
        assert DyadicRational(0, 7) == DyadicRational(0, 0)
        assert DyadicRational(4, 4).num == 1
        assert DyadicRational(4, 4).exp == 2

    def test_invalid(self):
        with pytest.raises(ValueError):
            DyadicRational(3, 1)  # 3/2 > 1
        with pytest.raises(ValueError):
            DyadicRational(-1, 1)

    def test_to_real(self):
        assert dyadic_to_real(DyadicRational(1, 1)) == 0.5
        assert dyadic_to_real(DyadicRational(3, 3)) == 0.375
        assert dyadic_to_real(DyadicRational(5, 4)) == 0.3125
        with pytest.raises(ValueError):
            dyadic_to_real(DyadicRational(1, 53))

    @given(dyadics(), dyadics())
    def test_midpoint_is_exact(self, d1, d2):
        m = dyadic_midpoint(d1, d2)
        assert 2.0 * m.value - d1.value - d2.value == 0.0

    @given(dyadics(), dyadics())
    def test_equal_value_equal_representation(self, d1, d2):
        if d1.value == d2.value:
            assert (d1.num, d1.exp) == (d2.num, d2.exp)

    @given(dyadics(), dyadics())
    def test_order_matches_value(self, d1, d2):
        assert (d1 < d2) == (d1.value < d2.value)


class TestInterval:
    def test_validation(self):
        with pytest.raises(ValueError):
            Interval(1.0, 1.0)
        with pytest.raises(ValueError):
            Interval(2.0, 1.0)
        with pytest.raises(ValueError):
            Interval(0.0, math.inf)

    def test_contains(self):
        iv = Interval(1.0, 2.0)
        assert iv.contains(1.0) and iv.contains(2.0)
        assert not iv.contains(2.0 + 1e-6)
        assert iv.contains(2.0 + 1e-12, slack=1e-9)


class TestIntervalGrid:
    def test_examples(self):
        assert interval_grid(Interval(0, 1), 3) == [0.0, 0.5, 1.0]
        assert interval_grid(Interval(1, 16), 2) == [1.0, 16.0]
        assert interval_grid(Interval(1, 2), 5) == [1.0, 1.25, 1.5, 1.75, 2.0]

    def test_too_small(self):
        with pytest.raises(ValueError):
            interval_grid(Interval(0, 1), 1)

    @given(
        st.floats(-1e6, 1e6),
        st.floats(1e-3, 1e6),
        st.integers(2, 200),
    )
    def test_reflection_symmetry(self, lo, width, n):
        iv = Interval(lo, lo + width)
        grid = interval_grid(iv, n)
        # mirror construction keeps the reflected grid within one rounding
        tol = 8 * math.ulp(max(abs(iv.lo), abs(iv.hi), iv.width))
        reflected = [iv.lo + iv.hi - t for t in reversed(grid)]
        assert all(abs(r - g) <= tol for r, g in zip(reflected, grid))

    @given(st.integers(2, 500))
    def test_strictly_increasing_with_exact_endpoints(self, n):
        iv = Interval(-3.0, 7.0)
        grid = interval_grid(iv, n)
        assert grid[0] == iv.lo and grid[-1] == iv.hi
        assert all(a < b for a, b in zip(grid, grid[1:]))


class TestToleranceConfig:
    def test_defaults(self):
        cfg = ToleranceConfig()
        assert cfg.eq_tol == 1e-9
        assert cfg.strict_margin == 0.0
        assert cfg.grid_n >= 2

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"eq_tol": 0.0},
            {"eq_tol": -1.0},
            {"strict_margin": -0.1},
            {"grid_n": 1},
            {"samples": 0},
        ],
    )
    def test_validation(self, kwargs):
        with pytest.raises(ValueError):
            ToleranceConfig(**kwargs)


class TestTwoPlaceFunction:
    def test_purity(self):
        F = TwoPlaceFunction(Interval(0, 1), lambda x, y: (x + y) / 2, "a")
        assert F(0.2, 0.6) == F(0.2, 0.6) == 0.4

    def test_closure_witness(self):
        ok = TwoPlaceFunction(Interval(0, 1), lambda x, y: (x + y) / 2, "a")
        assert ok.closure_witness() is None
        bad = TwoPlaceFunction(Interval(1, 2), lambda x, y: x + y - x * y, "psum")
        w = bad.closure_witness()
        assert w is not None
        x, y, v = w
        assert v == x + y - x * y
        assert not (1.0 <= v <= 2.0)

    def test_eval_counter(self):
        F = TwoPlaceFunction(Interval(0, 1), lambda x, y: (x + y) / 2, "a")
        counter = EvalCounter(F)
        counter.function(0.0, 1.0)
        counter.function(0.5, 0.5)
        assert counter.count == 2
