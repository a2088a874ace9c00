"""Discretized fuzzy sets on a shared universe grid.

Membership functions are stored as sampled degrees on a uniform grid.
Between samples the membership is defined by linear interpolation, which is
also how alpha-cut endpoints are refined, so every set is fully determined
by its grid and its vector of sampled degrees.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DegenerateSetError, DomainError, GridMismatchError

_MEMBERSHIP_TOL = 1e-12
_NORMAL_TOL = 1e-9


@dataclass(frozen=True)
class UniverseGrid:
    """Uniform discretization of a universe of discourse [lo, hi]."""

    lo: float
    hi: float
    n_points: int

    def __post_init__(self):
        if not self.lo < self.hi:
            raise DomainError(f"grid needs lo < hi, got [{self.lo}, {self.hi}]")
        if self.n_points < 2:
            raise DomainError("grid needs at least 2 points")

    @property
    def spacing(self) -> float:
        return (self.hi - self.lo) / (self.n_points - 1)

    @cached_property
    def xs(self) -> np.ndarray:
        pts = np.linspace(self.lo, self.hi, self.n_points)
        pts.flags.writeable = False
        return pts


#: Default universe and discretization count used when nothing else is given.
DEFAULT_GRID = UniverseGrid(0.0, 10.0, 101)


class DiscretizedFuzzySet:
    """A type-1 membership function sampled on a :class:`UniverseGrid`."""

    __slots__ = ("grid", "memberships", "normalized")

    def __init__(self, grid: UniverseGrid, memberships, normalized: bool = False):
        mu = np.ascontiguousarray(memberships, dtype=float)
        if mu.shape != (grid.n_points,):
            raise DomainError(
                f"memberships must have shape ({grid.n_points},), got {mu.shape}"
            )
        if not np.isfinite(mu).all():
            raise DomainError("memberships must be finite")
        if mu.min() < -_MEMBERSHIP_TOL or mu.max() > 1.0 + _MEMBERSHIP_TOL:
            raise DomainError("memberships must lie in [0, 1]")
        mu = np.clip(mu, 0.0, 1.0)
        if normalized and mu.max() > 0.0 and abs(mu.max() - 1.0) > _NORMAL_TOL:
            raise DomainError("a normalized set must peak at 1")
        mu.flags.writeable = False
        self.grid = grid
        self.memberships = mu
        self.normalized = normalized

    @classmethod
    def _trusted(cls, grid, memberships, normalized=False):
        # Builders construct memberships that satisfy the invariants by
        # construction; skipping validation there keeps the per-sample
        # training path cheap. External inputs must use the constructor.
        obj = object.__new__(cls)
        memberships.flags.writeable = False
        obj.grid = grid
        obj.memberships = memberships
        obj.normalized = normalized
        return obj

    @property
    def is_empty(self) -> bool:
        return self.memberships.max() == 0.0

    def evaluate(self, x: float) -> float:
        """Membership at an arbitrary point; 0 outside the universe."""
        g = self.grid
        if x < g.lo or x > g.hi:
            return 0.0
        return float(np.interp(x, g.xs, self.memberships))

    def alpha_cut(self, alpha: float) -> "AlphaCut":
        """Maximal intervals where membership >= alpha.

        Interval endpoints are refined by interpolating the crossing between
        the two bracketing samples instead of snapping to grid points.
        """
        if not 0.0 < alpha <= 1.0:
            raise DomainError(f"alpha must be in (0, 1], got {alpha}")
        mu = self.memberships
        xs = self.grid.xs
        mask = mu >= alpha
        if not mask.any():
            return AlphaCut(alpha, [])
        idx = np.flatnonzero(mask)
        breaks = np.flatnonzero(np.diff(idx) > 1)
        intervals = []
        for run in np.split(idx, breaks + 1):
            i0, i1 = int(run[0]), int(run[-1])
            left = xs[i0]
            if i0 > 0:
                left = _crossing(xs[i0], mu[i0], xs[i0 - 1], mu[i0 - 1], alpha)
            right = xs[i1]
            if i1 < len(xs) - 1:
                right = _crossing(xs[i1], mu[i1], xs[i1 + 1], mu[i1 + 1], alpha)
            intervals.append((float(left), float(right)))
        return AlphaCut(alpha, intervals)

    def normalize(self) -> "DiscretizedFuzzySet":
        """Scale so the largest membership is exactly 1."""
        peak = self.memberships.max()
        if peak <= 0.0:
            raise DegenerateSetError("cannot normalize an all-zero set")
        if abs(peak - 1.0) <= _MEMBERSHIP_TOL:
            if self.normalized:
                return self
            return DiscretizedFuzzySet._trusted(self.grid, self.memberships,
                                                normalized=True)
        return DiscretizedFuzzySet._trusted(self.grid, self.memberships / peak,
                                            normalized=True)

    def __repr__(self):
        g = self.grid
        return (
            f"DiscretizedFuzzySet([{g.lo}, {g.hi}]x{g.n_points}, "
            f"peak={self.memberships.max():.4g})"
        )


def _crossing(x_in, mu_in, x_out, mu_out, alpha):
    # Point on the segment between an inside sample (mu >= alpha) and an
    # outside sample (mu < alpha) where the interpolant equals alpha.
    t = (mu_in - alpha) / (mu_in - mu_out)
    return x_in + t * (x_out - x_in)


@dataclass(frozen=True)
class AlphaCut:
    """Membership-≥-level region of a set: a disjoint union of intervals."""

    level: float
    intervals: list

    def __post_init__(self):
        prev_right = None
        for left, right in self.intervals:
            if left > right:
                raise DomainError("alpha-cut interval with left > right")
            if prev_right is not None and left <= prev_right:
                raise DomainError("alpha-cut intervals must be sorted and disjoint")
            prev_right = right

    @property
    def is_empty(self) -> bool:
        return not self.intervals


@dataclass(frozen=True)
class ZSlice:
    """One horizontal slice of a general type-2 set at secondary level z."""

    z: float
    lower: DiscretizedFuzzySet
    upper: DiscretizedFuzzySet


class Type2FuzzySet:
    """Lower/upper membership pair, optionally carrying zSlice levels.

    Without slices the set is interval type-2: the footprint of uncertainty
    between the two bounding functions carries no grading. With slices it is
    general type-2 in the zSlices representation, each slice a nested
    lower/upper pair inside the footprint.
    """

    __slots__ = ("lower", "upper", "zslices", "__dict__")

    def __init__(self, lower: DiscretizedFuzzySet, upper: DiscretizedFuzzySet,
                 zslices=None):
        if lower.grid != upper.grid:
            raise GridMismatchError("lower and upper must share a grid")
        if np.any(lower.memberships > upper.memberships + _MEMBERSHIP_TOL):
            raise DomainError("lower membership must not exceed upper membership")
        if zslices is not None:
            zslices = list(zslices)
            if not zslices:
                raise DomainError("zslices, when given, must be non-empty")
            prev_z = 0.0
            for s in zslices:
                if not prev_z < s.z <= 1.0:
                    raise DomainError("z levels must be strictly increasing in (0, 1]")
                if s.lower.grid != lower.grid or s.upper.grid != lower.grid:
                    raise GridMismatchError("slices must share the base grid")
                if (np.any(s.lower.memberships < lower.memberships - _MEMBERSHIP_TOL)
                        or np.any(s.upper.memberships > upper.memberships + _MEMBERSHIP_TOL)
                        or np.any(s.lower.memberships > s.upper.memberships + _MEMBERSHIP_TOL)):
                    raise DomainError("each slice must nest inside the footprint")
                prev_z = s.z
            if abs(zslices[-1].z - 1.0) > _MEMBERSHIP_TOL:
                raise DomainError("the last z level must be 1")
        self.lower = lower
        self.upper = upper
        self.zslices = zslices

    @classmethod
    def _trusted(cls, lower, upper, zslices=None):
        obj = object.__new__(cls)
        obj.lower = lower
        obj.upper = upper
        obj.zslices = zslices
        return obj

    @property
    def grid(self) -> UniverseGrid:
        return self.lower.grid

    @property
    def has_slices(self) -> bool:
        return self.zslices is not None

    @cached_property
    def slice_matrices(self):
        """(z levels, stacked slice lowers, stacked slice uppers) as arrays."""
        if self.zslices is None:
            raise DomainError("set carries no zslices")
        z = np.array([s.z for s in self.zslices])
        lo = np.stack([s.lower.memberships for s in self.zslices])
        up = np.stack([s.upper.memberships for s in self.zslices])
        return z, lo, up

    def __repr__(self):
        tag = f", zslices={len(self.zslices)}" if self.zslices else ""
        return f"Type2FuzzySet({self.lower!r}, {self.upper!r}{tag})"


def require_same_grid(a, b):
    if a.grid != b.grid:
        raise GridMismatchError("sets must share the same universe grid")
