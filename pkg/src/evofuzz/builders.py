"""Construct type-1 and type-2 fuzzy sets from windows of raw data.

Four generation methods are supported: a Gaussian fit to the window's mean
and spread, a histogram ("singleton polling") with linear or Lagrange
interpolation between occupied bins, coverage counting over interval-valued
data, and direct statement of (point, membership) pairs. A type-2 set is
built by splitting the window in two, building a type-1 set per half, and
taking the pointwise min/max as lower/upper bounds.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import DegenerateSetError, DomainError
from .fuzzysets import DiscretizedFuzzySet, Type2FuzzySet, UniverseGrid, ZSlice

_STD_FLOOR_SCALE = 1e-6


@dataclass(frozen=True)
class GenerationMethod:
    """Selector for how a data window becomes a fuzzy set.

    kind: "gaussian", "singleton", "interval" or "discrete".
    interpolation: "linear" or "lagrange" (singleton polling only).
    normalize_coverage: interval polling's own scaling switch; True divides
    coverage counts by the maximum, False by the number of intervals.
    """

    kind: str
    interpolation: str = "linear"
    normalize_coverage: bool = True

    _KINDS = ("gaussian", "singleton", "interval", "discrete")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise DomainError(f"unknown generation method {self.kind!r}")
        if self.interpolation not in ("linear", "lagrange"):
            raise DomainError(f"unknown interpolation {self.interpolation!r}")

    @classmethod
    def gaussian(cls):
        return cls("gaussian")

    @classmethod
    def singleton_polling(cls, interpolation="linear"):
        return cls("singleton", interpolation=interpolation)

    @classmethod
    def interval_polling(cls, normalize=True):
        return cls("interval", normalize_coverage=normalize)

    @classmethod
    def discrete(cls):
        return cls("discrete")


def build_gaussian(window, grid: UniverseGrid, normalize: bool = True) -> DiscretizedFuzzySet:
    """Gaussian membership from the window's mean and sample spread.

    A constant window would have zero spread; it is floored so the result
    behaves as a near-singleton at the mean instead of failing.
    """
    vals = np.asarray(window, dtype=float).ravel()
    if vals.size == 0:
        raise DomainError("cannot build a Gaussian set from an empty window")
    if not np.isfinite(vals).all():
        raise DomainError("window values must be finite")
    mean = float(vals.mean())
    std = float(vals.std(ddof=1)) if vals.size > 1 else 0.0
    if not std > 0.0:
        std = _STD_FLOOR_SCALE * max(1.0, abs(mean))
    mu = _backend.active.gaussian_samples(grid.xs.copy(), mean, std)
    if mu.max() <= 0.0:
        # Support narrower than the grid spacing: keep a singleton at the
        # sample nearest the mean rather than an unusable all-zero set.
        mu = np.zeros(grid.n_points)
        mu[int(np.argmin(np.abs(grid.xs - mean)))] = 1.0
    out = DiscretizedFuzzySet._trusted(grid, mu)
    return out.normalize() if normalize else out


def build_singleton_polling(window, grid: UniverseGrid, interpolation="linear",
                            normalize: bool = True) -> DiscretizedFuzzySet:
    """Histogram-based membership over the grid's bins.

    Bins are the gaps between consecutive grid samples and each bin is
    represented by its left sample, so interpolation knots stay on the grid
    lattice. Counts are scaled so the fullest bin has membership 1.
    """
    vals = np.asarray(window, dtype=float).ravel()
    if vals.size == 0:
        raise DegenerateSetError("cannot poll an empty window")
    if not np.isfinite(vals).all():
        raise DomainError("window values must be finite")
    counts, _ = np.histogram(vals, bins=grid.xs)
    occupied = counts > 0
    if not occupied.any():
        raise DegenerateSetError("no window value falls inside the universe")
    knots_x = grid.xs[:-1][occupied]
    knots_y = counts[occupied] / counts.max()
    if interpolation == "linear":
        mu = np.interp(grid.xs, knots_x, knots_y, left=0.0, right=0.0)
        # np.interp clamps outside the knot span; zero it out explicitly.
        mu[(grid.xs < knots_x[0]) | (grid.xs > knots_x[-1])] = 0.0
    elif interpolation == "lagrange":
        mu = np.clip(_lagrange(knots_x, knots_y, grid.xs), 0.0, 1.0)
        mu[(grid.xs < knots_x[0]) | (grid.xs > knots_x[-1])] = 0.0
    else:
        raise DomainError(f"unknown interpolation {interpolation!r}")
    out = DiscretizedFuzzySet(grid, mu)
    return out.normalize() if normalize else out


def _lagrange(knots_x, knots_y, xs):
    out = np.zeros_like(xs)
    for xi, yi in zip(knots_x, knots_y):
        term = np.full_like(xs, yi)
        for xj in knots_x:
            if xj != xi:
                term *= (xs - xj) / (xi - xj)
        out += term
    return out


def build_interval_polling(intervals, grid: UniverseGrid,
                           normalize: bool = True) -> DiscretizedFuzzySet:
    """Interval-agreement membership: how many intervals cover each point."""
    arr = np.asarray(intervals, dtype=float)
    if arr.size == 0:
        raise DomainError("interval polling needs at least one interval")
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise DomainError("intervals must be [left, right] pairs")
    if np.any(arr[:, 0] > arr[:, 1]):
        raise DomainError("interval with left > right")
    xs = grid.xs
    coverage = (
        (xs >= arr[:, 0][:, None]) & (xs <= arr[:, 1][:, None])
    ).sum(axis=0).astype(float)
    if normalize:
        peak = coverage.max()
        if peak <= 0.0:
            raise DegenerateSetError("no interval overlaps the universe")
        mu = coverage / peak
        return DiscretizedFuzzySet(grid, mu, normalized=True)
    mu = coverage / arr.shape[0]
    return DiscretizedFuzzySet(grid, mu)


def build_discrete(pairs, grid: UniverseGrid) -> DiscretizedFuzzySet:
    """Explicitly stated memberships, snapped to the nearest grid sample.

    Duplicate points keep the largest stated membership. An empty list gives
    the all-zero set.
    """
    mu = np.zeros(grid.n_points)
    for point, degree in pairs:
        if not 0.0 <= degree <= 1.0:
            raise DomainError(f"membership {degree} outside [0, 1]")
        if not grid.lo <= point <= grid.hi:
            raise DomainError(f"point {point} outside the universe")
        idx = int(round((point - grid.lo) / grid.spacing))
        mu[idx] = max(mu[idx], degree)
    return DiscretizedFuzzySet(grid, mu)


def split_window(window):
    """Split a window into two halves; an odd window shares its middle value."""
    vals = list(window)
    m = len(vals)
    if m < 2:
        raise DomainError("cannot split a window of fewer than 2 values")
    half = m // 2
    if m % 2 == 0:
        return vals[:half], vals[half:]
    return vals[: half + 1], vals[half:]


def build_t1(data, method: GenerationMethod, grid: UniverseGrid,
             normalize: bool = True) -> DiscretizedFuzzySet:
    """Build a type-1 set from data using the selected generation method."""
    if method.kind == "gaussian":
        return build_gaussian(data, grid, normalize=normalize)
    if method.kind == "singleton":
        return build_singleton_polling(data, grid, interpolation=method.interpolation,
                                       normalize=normalize)
    if method.kind == "interval":
        return build_interval_polling(data, grid, normalize=method.normalize_coverage)
    if method.kind == "discrete":
        return build_discrete(data, grid)
    raise DomainError(f"unknown generation method {method.kind!r}")


def build_type2(data, method: GenerationMethod, grid: UniverseGrid,
                kind: str = "gt2", n_zslices: int = 4,
                normalize: bool = True) -> Type2FuzzySet:
    """Aggregate the two window halves into a type-2 set.

    The halves' type-1 sets give the footprint bounds (pointwise min and
    max). For a general type-2 set, n_zslices nested pairs are materialized
    whose footprint shrinks linearly toward the footprint center as the
    level rises; the z=1 slice sits exactly at the center.
    """
    if kind not in ("it2", "gt2"):
        raise DomainError(f"type-2 kind must be 'it2' or 'gt2', got {kind!r}")
    first, second = split_window(data)
    set1 = build_t1(first, method, grid, normalize=normalize)
    set2 = build_t1(second, method, grid, normalize=normalize)
    lo = np.minimum(set1.memberships, set2.memberships)
    up = np.maximum(set1.memberships, set2.memberships)
    trusted = DiscretizedFuzzySet._trusted
    lower = trusted(grid, lo, normalized=abs(lo.max() - 1.0) <= 1e-9)
    upper = trusted(grid, up, normalized=abs(up.max() - 1.0) <= 1e-9)
    if kind == "it2":
        return Type2FuzzySet._trusted(lower, upper)
    if n_zslices < 1:
        raise DomainError("n_zslices must be at least 1")
    center = 0.5 * (lo + up)
    slices = []
    for j in range(1, n_zslices + 1):
        z = j / n_zslices
        slices.append(ZSlice(z, trusted(grid, lo + z * (center - lo)),
                             trusted(grid, up - z * (up - center))))
    return Type2FuzzySet._trusted(lower, upper, slices)
