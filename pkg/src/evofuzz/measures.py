"""Catalog of fuzzy set comparison measures.

Every registered measure yields a compatibility value in [0, 1] between the
fuzzy representations of two data windows: seven type-2 similarity measures,
plus one type-1 directional distance whose magnitude is mapped through
1/(1+|d|). The registry is keyed by the measure names used on the command
line and accepts third-party additions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import _backend
from .builders import GenerationMethod, build_t1, build_type2
from .errors import DegenerateSetError, DomainError
from .fuzzysets import DiscretizedFuzzySet, Type2FuzzySet, require_same_grid

#: Alpha ladder used by the directional distance when none is configured.
DEFAULT_MCCULLOCH_LEVELS = 20

#: Samples drawn per slice interval when walking secondary grades.
DEFAULT_SECONDARY_SAMPLES = 11


def jaccard_it2(a: Type2FuzzySet, b: Type2FuzzySet) -> float:
    """Interval type-2 Jaccard similarity: mean of the two bound ratios."""
    require_same_grid(a, b)
    return _backend.active.jaccard_it2_value(
        a.lower.memberships, a.upper.memberships,
        b.lower.memberships, b.upper.memberships,
    )


def zeng_li(a: Type2FuzzySet, b: Type2FuzzySet) -> float:
    """One minus the mean absolute gap between corresponding bounds."""
    require_same_grid(a, b)
    return _backend.active.zeng_li_value(
        a.lower.memberships, a.upper.memberships,
        b.lower.memberships, b.upper.memberships,
    )


def _matched_slices(a: Type2FuzzySet, b: Type2FuzzySet):
    require_same_grid(a, b)
    if not a.has_slices or not b.has_slices:
        raise DomainError("measure needs zslices on both sets")
    za, lo_a, up_a = a.slice_matrices
    zb, lo_b, up_b = b.slice_matrices
    if za.shape != zb.shape or not np.allclose(za, zb, atol=1e-12):
        raise DomainError("sets carry mismatched z levels")
    return za, lo_a, up_a, lo_b, up_b


def jaccard_gt2(a: Type2FuzzySet, b: Type2FuzzySet) -> float:
    """Level-weighted mean of per-slice interval type-2 Jaccard values."""
    z, lo_a, up_a, lo_b, up_b = _matched_slices(a, b)
    kern = _backend.active
    total = sum(
        zk * kern.jaccard_it2_value(lo_a[j], up_a[j], lo_b[j], up_b[j])
        for j, zk in enumerate(z)
    )
    return total / z.sum()


def zhao_crisp(a: Type2FuzzySet, b: Type2FuzzySet, delta: int = 4) -> float:
    """Unweighted mean of Jaccard values over delta+1 evenly spaced planes.

    The plane at level alpha is the carried slice with the nearest level at
    or above alpha; alpha = 0 maps to the full footprint.
    """
    if delta < 1:
        raise DomainError("delta must be at least 1")
    z, lo_a, up_a, lo_b, up_b = _matched_slices(a, b)
    kern = _backend.active
    total = 0.0
    for step in range(delta + 1):
        alpha = step / delta
        if alpha == 0.0:
            total += kern.jaccard_it2_value(
                a.lower.memberships, a.upper.memberships,
                b.lower.memberships, b.upper.memberships,
            )
        else:
            j = int(np.searchsorted(z, alpha - 1e-12))
            j = min(j, len(z) - 1)
            total += kern.jaccard_it2_value(lo_a[j], up_a[j], lo_b[j], up_b[j])
    return total / (delta + 1)


def hao_crisp(a: Type2FuzzySet, b: Type2FuzzySet) -> float:
    """Centroid of the per-slice similarities viewed as a discrete set.

    Equal similarity values collapse to a single point keeping the largest
    level before the centroid is taken.
    """
    z, lo_a, up_a, lo_b, up_b = _matched_slices(a, b)
    kern = _backend.active
    points: dict[float, float] = {}
    for j, zk in enumerate(z):
        s = kern.jaccard_it2_value(lo_a[j], up_a[j], lo_b[j], up_b[j])
        points[s] = max(points.get(s, 0.0), zk)
    weight = sum(points.values())
    return sum(s * zk for s, zk in points.items()) / weight


def yang_lin(a: Type2FuzzySet, b: Type2FuzzySet,
             samples_per_interval: int = DEFAULT_SECONDARY_SAMPLES) -> float:
    """Mean over the universe of min/max ratios of graded primary samples."""
    z, lo_a, up_a, lo_b, up_b = _matched_slices(a, b)
    return _backend.active.yang_lin_value(lo_a, up_a, lo_b, up_b, z,
                                          samples_per_interval)


def mohamed_abdaala(a: Type2FuzzySet, b: Type2FuzzySet,
                    samples_per_interval: int = DEFAULT_SECONDARY_SAMPLES) -> float:
    """Mean over the universe of min/max ratios of complement-grade sums."""
    z, lo_a, up_a, lo_b, up_b = _matched_slices(a, b)
    return _backend.active.mohamed_abdaala_value(lo_a, up_a, lo_b, up_b, z,
                                                 samples_per_interval)


def hung_yang(a: Type2FuzzySet, b: Type2FuzzySet) -> float:
    """One minus the mean level-weighted Hausdorff gap between slices."""
    z, lo_a, up_a, lo_b, up_b = _matched_slices(a, b)
    return _backend.active.hung_yang_value(lo_a, up_a, lo_b, up_b, z)


def _alpha_ladder(n_levels: int) -> np.ndarray:
    return np.arange(1, n_levels + 1) / n_levels


def mcculloch_distance(a: DiscretizedFuzzySet, b: DiscretizedFuzzySet,
                       levels=None) -> float:
    """Signed directional distance between two type-1 sets.

    Positive when ``a`` sits below ``b`` on the universe. The value is the
    level-weighted average of mean pairwise midpoint differences between
    alpha-cut intervals; a level where one set's cut is empty substitutes
    that set's highest nonempty cut.
    """
    require_same_grid(a, b)
    if levels is None:
        levels = _alpha_ladder(DEFAULT_MCCULLOCH_LEVELS)
    cuts_a = [a.alpha_cut(float(alpha)).intervals for alpha in levels]
    cuts_b = [b.alpha_cut(float(alpha)).intervals for alpha in levels]
    top_a = _highest_nonempty(cuts_a)
    top_b = _highest_nonempty(cuts_b)
    if top_a is None and top_b is None:
        raise DegenerateSetError("both sets have empty cuts at every level")
    if top_a is None or top_b is None:
        raise DegenerateSetError(
            "one set has no nonempty alpha-cut; distance undefined")
    lam_idx = max(
        max((j for j, c in enumerate(cuts_a) if c), default=-1),
        max((j for j, c in enumerate(cuts_b) if c), default=-1),
    )
    num = 0.0
    den = 0.0
    for j in range(lam_idx + 1):
        alpha = float(levels[j])
        ia = cuts_a[j] or top_a
        ib = cuts_b[j] or top_b
        num += alpha * _mean_pairwise_distance(ia, ib)
        den += alpha
    return num / den


def _highest_nonempty(cuts):
    for intervals in reversed(cuts):
        if intervals:
            return intervals
    return None


def _mean_pairwise_distance(intervals_a, intervals_b):
    mids_a = np.array([0.5 * (l + r) for l, r in intervals_a])
    mids_b = np.array([0.5 * (l + r) for l, r in intervals_b])
    return float(mids_b.mean() - mids_a.mean())


def distance_to_compatibility(d: float) -> float:
    """Monotone bounded map from a distance magnitude to [0, 1]."""
    return 1.0 / (1.0 + abs(d))


@dataclass(frozen=True)
class MeasureSpec:
    """Registry entry: the set kind a measure consumes and how to call it.

    set_kind is "t1" for measures over type-1 pairs, "it2" for measures that
    only need the footprint bounds, and "gt2" for measures that need
    zslices.
    """

    name: str
    set_kind: str
    compare: Callable


_REGISTRY: dict[str, MeasureSpec] = {}


def register_measure(spec: MeasureSpec):
    _REGISTRY[spec.name] = spec


def get_measure(name: str) -> MeasureSpec:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise DomainError(
            f"unknown measure {name!r}; registered: {', '.join(sorted(_REGISTRY))}"
        ) from None


def measure_names():
    return sorted(_REGISTRY)


def _c_mcculloch(a, b, cfg):
    levels = _alpha_ladder(getattr(cfg, "mcculloch_levels", DEFAULT_MCCULLOCH_LEVELS))
    return distance_to_compatibility(mcculloch_distance(a, b, levels=levels))


def _c_zhao(a, b, cfg):
    delta = getattr(cfg, "zhao_delta", None) or getattr(cfg, "n_zslices", 4)
    return zhao_crisp(a, b, delta=delta)


def _c_sampled(fn):
    def call(a, b, cfg):
        return fn(a, b, samples_per_interval=getattr(
            cfg, "secondary_samples", DEFAULT_SECONDARY_SAMPLES))
    return call


register_measure(MeasureSpec("mcculloch", "t1", _c_mcculloch))
register_measure(MeasureSpec("zeng_li", "it2", lambda a, b, cfg: zeng_li(a, b)))
register_measure(MeasureSpec("jaccard_gt2", "gt2", lambda a, b, cfg: jaccard_gt2(a, b)))
register_measure(MeasureSpec("zhao_crisp", "gt2", _c_zhao))
register_measure(MeasureSpec("hao_crisp", "gt2", lambda a, b, cfg: hao_crisp(a, b)))
register_measure(MeasureSpec("yang_lin", "gt2", _c_sampled(yang_lin)))
register_measure(MeasureSpec("mohamed_abdaala", "gt2", _c_sampled(mohamed_abdaala)))
register_measure(MeasureSpec("hung_yang", "gt2", lambda a, b, cfg: hung_yang(a, b)))

_KIND_RANK = {"t1": 0, "it2": 1, "gt2": 2}


def build_for_config(window, cfg):
    """Build the fuzzy representation of a window per the model config."""
    method = cfg.fs_method
    if not isinstance(method, GenerationMethod):
        raise DomainError("config fs_method must be a GenerationMethod")
    if cfg.fs_type == "t1":
        return build_t1(window, method, cfg.grid, normalize=cfg.normalize_sets)
    return build_type2(window, method, cfg.grid, kind=cfg.fs_type,
                       n_zslices=cfg.n_zslices, normalize=cfg.normalize_sets)


def measure_sets(a, b, cfg) -> float:
    """Apply the configured measure to two already-built representations."""
    spec = get_measure(cfg.measure)
    want_t1 = spec.set_kind == "t1"
    got_t1 = isinstance(a, DiscretizedFuzzySet)
    if want_t1 != got_t1:
        raise DomainError(
            f"measure {spec.name!r} applies to "
            f"{'type-1' if want_t1 else 'type-2'} sets")
    if _KIND_RANK[spec.set_kind] >= 2 and not (a.has_slices and b.has_slices):
        raise DomainError(f"measure {spec.name!r} needs general type-2 sets")
    return spec.compare(a, b, cfg)


def compatibility(a_window, b_window, cfg) -> float:
    """Compatibility in [0, 1] between two equal-length data windows.

    Builds the configured representation of both windows and applies the
    configured measure; the directional distance is mapped through
    1/(1+|d|), the similarity measures already land in [0, 1].
    """
    a_vals = np.asarray(a_window, dtype=float)
    b_vals = np.asarray(b_window, dtype=float)
    if a_vals.shape != b_vals.shape:
        raise DomainError("windows must have equal length")
    a_set = build_for_config(a_vals, cfg)
    b_set = build_for_config(b_vals, cfg)
    return measure_sets(a_set, b_set, cfg)
