"""Numpy implementations of the hot comparison kernels.

Mirrors the compiled module built from ``_kernels.pyx``; ``_backend`` picks
whichever is importable. All functions take plain float64 arrays so they can
be swapped without touching the fuzzy-set object layer.
"""

import numpy as np

NAME = "python"


def gaussian_samples(xs, mean, std):
    """Bell curve exp(-0.5 ((x-mean)/std)^2), zero beyond four spreads."""
    z = (xs - mean) / std
    mu = np.exp(-0.5 * z * z)
    mu[np.abs(xs - mean) > 4.0 * std] = 0.0
    return mu


def jaccard_it2_value(lower_a, upper_a, lower_b, upper_b):
    """Mean of the upper and lower Jaccard ratios of two interval pairs."""
    return 0.5 * (
        _ratio(np.minimum(upper_a, upper_b).sum(), np.maximum(upper_a, upper_b).sum())
        + _ratio(np.minimum(lower_a, lower_b).sum(), np.maximum(lower_a, lower_b).sum())
    )


def _ratio(num, den):
    # den == 0 forces num == 0 (min <= max pointwise): two empty sets agree.
    if den == 0.0:
        return 1.0
    return num / den


def zeng_li_value(lower_a, upper_a, lower_b, upper_b):
    n = lower_a.shape[0]
    total = np.abs(lower_a - lower_b).sum() + np.abs(upper_a - upper_b).sum()
    return 1.0 - total / (2.0 * n)


def hung_yang_value(slo_a, sup_a, slo_b, sup_b, z):
    """1 minus the grid mean of level-weighted interval Hausdorff distances.

    slo_*/sup_* have shape (n_slices, n_points); row j holds the slice
    bounds at level z[j].
    """
    h = np.maximum(np.abs(slo_a - slo_b), np.abs(sup_a - sup_b))
    hf = (z[:, None] * h).sum(axis=0) / z.sum()
    return min(1.0, max(0.0, 1.0 - hf.mean()))


def _u_samples(slo_a, sup_a, slo_b, sup_b, per_interval):
    # Sample the primary-membership axis inside every slice interval of both
    # sets; shape (n_points, 2 * n_slices * per_interval).
    t = np.linspace(0.0, 1.0, per_interval)
    ua = slo_a[:, :, None] + (sup_a - slo_a)[:, :, None] * t
    ub = slo_b[:, :, None] + (sup_b - slo_b)[:, :, None] * t
    u = np.concatenate([ua, ub], axis=0)
    n_points = slo_a.shape[1]
    return np.moveaxis(u, 1, 0).reshape(n_points, -1)


def _secondary_grades(u, slo, sup, z):
    # Staircase grade induced by the slices: the largest z whose interval
    # contains u, or 0 when u lies outside every slice.
    inside = (u[None, :, :] >= slo[:, :, None]) & (u[None, :, :] <= sup[:, :, None])
    return np.where(inside, z[:, None, None], 0.0).max(axis=0)


def yang_lin_value(slo_a, sup_a, slo_b, sup_b, z, per_interval):
    u = _u_samples(slo_a, sup_a, slo_b, sup_b, per_interval)
    uf = u * _secondary_grades(u, slo_a, sup_a, z)
    ug = u * _secondary_grades(u, slo_b, sup_b, z)
    num = np.minimum(uf, ug).sum(axis=1)
    den = np.maximum(uf, ug).sum(axis=1)
    ratios = np.where(den == 0.0, 1.0, num / np.where(den == 0.0, 1.0, den))
    return float(ratios.mean())


def mohamed_abdaala_value(slo_a, sup_a, slo_b, sup_b, z, per_interval):
    u = _u_samples(slo_a, sup_a, slo_b, sup_b, per_interval)
    sf = (1.0 - u * _secondary_grades(u, slo_a, sup_a, z)).sum(axis=1)
    sg = (1.0 - u * _secondary_grades(u, slo_b, sup_b, z)).sum(axis=1)
    num = np.minimum(sf, sg)
    den = np.maximum(sf, sg)
    ratios = np.where(den == 0.0, 1.0, num / np.where(den == 0.0, 1.0, den))
    return float(ratios.mean())
