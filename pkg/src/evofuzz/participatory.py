"""Participatory-learning update rules for rule antecedents.

Centers move toward new inputs proportionally to compatibility, damped by
the arousal index; the arousal index accumulates incompatibility and
triggers rule creation; time-averaged normalized activation is the utility
that prunes underused rules.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError

_UNIT_TOL = 1e-9


def _check_unit(value: float, name: str) -> float:
    if not -_UNIT_TOL <= value <= 1.0 + _UNIT_TOL:
        raise DomainError(f"{name} must lie in [0, 1], got {value}")
    return min(1.0, max(0.0, value))


def update_arousal(a_prev: float, c: float, beta: float) -> float:
    """One arousal step: a + beta * (1 - c - a), clamped to [0, 1]."""
    a_prev = _check_unit(a_prev, "arousal")
    c = _check_unit(c, "compatibility")
    beta = _check_unit(beta, "beta")
    return min(1.0, max(0.0, a_prev + beta * (1.0 - c - a_prev)))


def update_center(center, x, c: float, a: float, alpha: float):
    """Move the center toward x by alpha * c^(1-a) of the gap.

    c = 0 with a = 1 is taken as gain alpha (0^0 := 1), the maximal-arousal
    limit where the update is most aggressive.
    """
    center = np.asarray(center, dtype=float)
    x = np.asarray(x, dtype=float)
    if center.shape != x.shape:
        raise DomainError("center and input must have equal length")
    c = _check_unit(c, "compatibility")
    a = _check_unit(a, "arousal")
    alpha = _check_unit(alpha, "alpha")
    gain = alpha * c ** (1.0 - a)
    return center + gain * (x - center)


def activation_level(x, center, sigma: float) -> float:
    """Product over attributes of exp(-|x_j - v_j|) / (2 sigma^2)."""
    if sigma <= 0.0:
        raise DomainError("sigma must be positive")
    x = np.asarray(x, dtype=float)
    center = np.asarray(center, dtype=float)
    if x.shape != center.shape:
        raise DomainError("input and center must have equal length")
    factors = np.exp(-np.abs(x - center)) / (2.0 * sigma * sigma)
    return float(np.prod(factors))


def normalized_activations(taus):
    """Activation levels scaled to sum to 1."""
    t = np.asarray(taus, dtype=float)
    if t.size == 0 or np.any(t < 0.0):
        raise DomainError("activations must be nonnegative and non-empty")
    total = t.sum()
    if total <= 0.0:
        raise DomainError("at least one activation must be positive")
    return t / total


def utility(activation_sum: float, k: int, created_at: int) -> float:
    """Time-averaged normalized activation since the rule was created.

    A rule is immune on its creation step: zero age yields +inf.
    """
    if k < created_at:
        raise DomainError("current iteration predates the rule's creation")
    if k == created_at:
        return math.inf
    return activation_sum / (k - created_at)
