"""Kernel recursive least squares consequent learning, one state per rule.

The dictionary stores the inputs admitted by the sparsification rule; theta
holds the kernel-expansion weights; Q tracks the inverse of the regularized
Gram matrix over the dictionary and P the covariance used by the
non-admission update. With every input admitted, the recursion reproduces
the dense regularized solve (K + lambda I)^-1 y exactly.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError, SingularUpdateError

KERNEL_SIZE_FLOOR = 1e-6


def gaussian_kernel(x, y, sigma: float) -> float:
    """exp(-||x - y||^2 / (2 sigma^2))."""
    if sigma <= 0.0:
        raise DomainError("sigma must be positive")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise DomainError("kernel arguments must have equal length")
    diff = x - y
    return float(np.exp(-(diff @ diff) / (2.0 * sigma * sigma)))


class ConsequentState:
    """Dictionary, weights and update matrices of one rule's consequent."""

    __slots__ = ("dictionary", "theta", "Q", "P", "kernel_size")

    def __init__(self, x, y: float, lambda_reg: float, sigma: float,
                 kernel_size: float | None = None):
        if not 0.0 <= lambda_reg <= 1.0:
            raise DomainError("lambda_reg must lie in [0, 1]")
        x = np.asarray(x, dtype=float).reshape(1, -1)
        self.dictionary = x.copy()
        self.theta = np.array([y / (lambda_reg + 1.0)])
        self.Q = np.array([[1.0 / (lambda_reg + 1.0)]])
        self.P = np.array([[1.0]])
        self.kernel_size = sigma if kernel_size is None else kernel_size
        if self.kernel_size <= 0.0:
            raise DomainError("kernel size must be positive")

    @property
    def size(self) -> int:
        return self.dictionary.shape[0]

    def kernel_row(self, x, sigma: float) -> np.ndarray:
        """Kernel evaluations of x against every dictionary element."""
        if sigma <= 0.0:
            raise DomainError("sigma must be positive")
        diff = self.dictionary - np.asarray(x, dtype=float)
        sq = np.einsum("ij,ij->i", diff, diff)
        return np.exp(-sq / (2.0 * sigma * sigma))

    def nearest_distance(self, x):
        """Euclidean distance to, and index of, the nearest dictionary element."""
        if self.size == 0:
            raise DomainError("dictionary is empty")
        diff = self.dictionary - np.asarray(x, dtype=float)
        dists = np.sqrt(np.einsum("ij,ij->i", diff, diff))
        idx = int(np.argmin(dists))
        return float(dists[idx]), idx

    def admit(self, x, y: float, lambda_reg: float, sigma: float, g=None):
        """Grow the dictionary by x and update theta, Q and P accordingly."""
        x = np.asarray(x, dtype=float)
        if g is None:
            g = self.kernel_row(x, sigma)
        z = self.Q @ g
        r = lambda_reg + 1.0 - z @ g
        if r == 0.0:
            raise SingularUpdateError("degenerate regularization: r == 0")
        err = y - g @ self.theta
        n = self.size
        grown = np.empty((n + 1, n + 1))
        grown[:n, :n] = self.Q * r + np.outer(z, z)
        grown[:n, n] = -z
        grown[n, :n] = -z
        grown[n, n] = 1.0
        self.Q = grown / r
        self.theta = np.concatenate([self.theta - z * (err / r), [err / r]])
        padded = np.zeros((n + 1, n + 1))
        padded[:n, :n] = self.P
        padded[n, n] = 1.0
        self.P = padded
        self.dictionary = np.vstack([self.dictionary, x])
        self._check_finite()

    def update(self, x, y: float, lambda_reg: float, sigma: float, g=None):
        """Refine theta and P without touching the dictionary or Q."""
        x = np.asarray(x, dtype=float)
        if g is None:
            g = self.kernel_row(x, sigma)
        z = self.Q @ g
        err = y - g @ self.theta
        pz = self.P @ z
        denom = 1.0 + z @ pz
        q = pz / denom
        self.P -= np.outer(pz, pz / denom)
        self.theta = self.theta + (self.Q @ q) * err
        if not np.isfinite(self.theta).all():
            raise SingularUpdateError("consequent state became non-finite")

    def predict(self, x, sigma: float) -> float:
        """Kernel expansion sum_j theta_j * k(x, d_j)."""
        if self.size == 0:
            raise DomainError("cannot predict with an empty dictionary")
        return float(self.kernel_row(x, sigma) @ self.theta)

    def gram_inverse_drift(self, lambda_reg: float, sigma: float) -> float:
        """Max-norm of Q (K + lambda I) - I; a numerical-hygiene probe."""
        d = self.dictionary
        diff = d[:, None, :] - d[None, :, :]
        gram = np.exp(-np.einsum("ijk,ijk->ij", diff, diff) / (2.0 * sigma * sigma))
        gram = gram + lambda_reg * np.eye(self.size)
        return float(np.abs(self.Q @ gram - np.eye(self.size)).max())

    def _check_finite(self):
        if not (np.isfinite(self.theta).all() and np.isfinite(self.Q).all()
                and np.isfinite(self.P).all()):
            raise SingularUpdateError("consequent state became non-finite")


class ErrorTracker:
    """Smoothed prediction error and the running maximum of its squashing."""

    __slots__ = ("e_hat", "eta_max")

    def __init__(self, e_hat: float = 0.0, eta_max: float = 0.0):
        self.e_hat = e_hat
        self.eta_max = eta_max

    def update(self, y: float, y_hat: float):
        self.e_hat = 0.8 * self.e_hat + abs(y - y_hat)
        eta = math.exp(-0.5) * (2.0 / (1.0 + math.exp(-self.e_hat)) - 1.0)
        if eta > self.eta_max:
            self.eta_max = eta
        return self


def init_kernel_size(x, nearest_center, tracker: ErrorTracker, sigma: float) -> float:
    """Kernel size for a freshly created rule.

    The squashed error never exceeds exp(-0.5), so the log in the stated
    ratio is nonpositive and the width falls back to sigma, matching the
    first rule's initialization.
    """
    if tracker.eta_max <= 1.0:
        return sigma
    x = np.asarray(x, dtype=float)
    nearest_center = np.asarray(nearest_center, dtype=float)
    denom = math.sqrt(2.0 * math.log(tracker.eta_max))
    if denom == 0.0:
        return sigma
    return float(np.linalg.norm(x - nearest_center)) / denom


def update_kernel_size(nu_prev: float, x, center_new, center_old,
                       support_count: int) -> float:
    """Recursive spread estimate after a rule absorbs an input.

    nu^2 moves toward the squared distance of the new input from the center
    at rate 1/N, inflated by the center's own motion; the result is floored
    so the admission threshold stays positive.
    """
    if support_count < 1:
        raise DomainError("support count must be at least 1")
    if nu_prev <= 0.0:
        raise DomainError("previous kernel size must be positive")
    x = np.asarray(x, dtype=float)
    center_new = np.asarray(center_new, dtype=float)
    center_old = np.asarray(center_old, dtype=float)
    d2 = float(np.sum((x - center_new) ** 2))
    shift2 = float(np.sum((center_new - center_old) ** 2))
    n = support_count
    nu2 = nu_prev**2 + (d2 - nu_prev**2) / n + (n - 1) * shift2 / n
    return max(KERNEL_SIZE_FLOOR, math.sqrt(max(0.0, nu2)))
