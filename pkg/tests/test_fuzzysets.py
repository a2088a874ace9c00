import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from evofuzz import (
    DegenerateSetError,
    DiscretizedFuzzySet,
    DomainError,
    Type2FuzzySet,
    UniverseGrid,
    ZSlice,
)

GRID = UniverseGrid(0.0, 10.0, 101)
UNIT = UniverseGrid(0.0, 1.0, 2)


def triangular(grid, peak_index):
    xs = grid.xs
    peak = xs[peak_index]
    half = (grid.hi - grid.lo) / 2.0
    mu = np.clip(1.0 - np.abs(xs - peak) / half, 0.0, 1.0)
    return DiscretizedFuzzySet(grid, mu)


membership_arrays = st.integers(min_value=0, max_value=10**12).map(
    lambda seed: np.random.default_rng(seed).random(GRID.n_points))


class TestUniverseGrid:
    def test_defaults_shape(self):
        assert GRID.spacing == pytest.approx(0.1)
        assert GRID.xs[0] == 0.0 and GRID.xs[-1] == 10.0

    def test_invalid(self):
        with pytest.raises(DomainError):
            UniverseGrid(1.0, 1.0, 11)
        with pytest.raises(DomainError):
            UniverseGrid(0.0, 1.0, 1)


class TestEvaluate:
    def test_constant_function(self):
        s = DiscretizedFuzzySet(GRID, np.full(101, 0.5))
        assert s.evaluate(3.14) == pytest.approx(0.5)

    def test_outside_support_is_zero(self):
        s = DiscretizedFuzzySet(GRID, np.full(101, 0.5))
        assert s.evaluate(GRID.hi + 1.0) == 0.0
        assert s.evaluate(GRID.lo - 0.5) == 0.0

    def test_hand_linear_interpolation(self):
        s = DiscretizedFuzzySet(UNIT, np.array([0.0, 1.0]))
        assert s.evaluate(0.25) == pytest.approx(0.25)

    @given(membership_arrays, st.floats(-2.0, 12.0))
    def test_always_in_unit_interval(self, mu, x):
        s = DiscretizedFuzzySet(GRID, mu)
        assert 0.0 <= s.evaluate(x) <= 1.0


class TestAlphaCut:
    def test_full_support(self):
        s = DiscretizedFuzzySet(GRID, np.ones(101))
        cut = s.alpha_cut(0.5)
        assert cut.intervals == [(GRID.lo, GRID.hi)]

    def test_empty_cut(self):
        s = DiscretizedFuzzySet(GRID, np.zeros(101))
        assert s.alpha_cut(0.5).intervals == []

    def test_peak_degenerate_interval(self):
        s = triangular(GRID, 50)
        cut = s.alpha_cut(1.0)
        assert len(cut.intervals) == 1
        left, right = cut.intervals[0]
        assert left == pytest.approx(5.0)
        assert right == pytest.approx(5.0)

    def test_crossing_refinement(self):
        # Triangle peaking at 5 with slope 1/5: the 0.5 cut crosses at 2.5
        # and 7.5 exactly, even though neither is special on the grid.
        s = triangular(GRID, 50)
        cut = s.alpha_cut(0.5)
        (left, right), = cut.intervals
        assert left == pytest.approx(2.5)
        assert right == pytest.approx(7.5)

    def test_invalid_alpha(self):
        s = triangular(GRID, 50)
        for alpha in (0.0, -0.1, 1.1):
            with pytest.raises(DomainError):
                s.alpha_cut(alpha)

    @given(membership_arrays,
           st.floats(0.05, 1.0), st.floats(0.05, 1.0))
    def test_antitone_in_alpha(self, mu, a1, a2):
        lo_alpha, hi_alpha = sorted((a1, a2))
        s = DiscretizedFuzzySet(GRID, mu)
        outer = s.alpha_cut(lo_alpha).intervals
        inner = s.alpha_cut(hi_alpha).intervals
        tol = 1e-12
        for left, right in inner:
            assert any(ol - tol <= left and right <= orr + tol
                       for ol, orr in outer)


class TestNormalize:
    def test_scales_to_peak_one(self):
        s = DiscretizedFuzzySet(GRID, np.full(101, 0.5))
        n = s.normalize()
        assert n.memberships.max() == pytest.approx(1.0)
        assert n.normalized

    def test_idempotent(self):
        s = triangular(GRID, 50).normalize()
        again = s.normalize()
        assert np.allclose(s.memberships, again.memberships, atol=1e-12)

    def test_division_by_max(self):
        g = UniverseGrid(0.0, 1.0, 3)
        s = DiscretizedFuzzySet(g, np.array([0.1, 0.2, 0.4]))
        n = s.normalize()
        assert np.allclose(n.memberships, [0.25, 0.5, 1.0])

    def test_all_zero_fails(self):
        s = DiscretizedFuzzySet(GRID, np.zeros(101))
        with pytest.raises(DegenerateSetError):
            s.normalize()

    @given(membership_arrays)
    def test_preserves_argmax(self, mu):
        mu = mu + 0.01  # keep it normalizable
        mu = np.clip(mu, 0.0, 1.0)
        s = DiscretizedFuzzySet(GRID, mu)
        assert np.argmax(s.normalize().memberships) == np.argmax(mu)


class TestType2Invariants:
    def test_lower_must_not_exceed_upper(self):
        lo = DiscretizedFuzzySet(GRID, np.full(101, 0.8))
        up = DiscretizedFuzzySet(GRID, np.full(101, 0.3))
        with pytest.raises(DomainError):
            Type2FuzzySet(lo, up)

    def test_slices_must_nest(self):
        lo = DiscretizedFuzzySet(GRID, np.full(101, 0.2))
        up = DiscretizedFuzzySet(GRID, np.full(101, 0.8))
        bad = ZSlice(1.0, DiscretizedFuzzySet(GRID, np.full(101, 0.1)),
                     DiscretizedFuzzySet(GRID, np.full(101, 0.5)))
        with pytest.raises(DomainError):
            Type2FuzzySet(lo, up, [bad])

    def test_last_z_must_be_one(self):
        lo = DiscretizedFuzzySet(GRID, np.full(101, 0.2))
        up = DiscretizedFuzzySet(GRID, np.full(101, 0.8))
        half = ZSlice(0.5, lo, up)
        with pytest.raises(DomainError):
            Type2FuzzySet(lo, up, [half])
