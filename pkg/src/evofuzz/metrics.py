"""Forecast error metrics and runtime statistics."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError


def _pair(y, y_hat):
    y = np.asarray(y, dtype=float).ravel()
    y_hat = np.asarray(y_hat, dtype=float).ravel()
    if y.size == 0 or y.size != y_hat.size:
        raise DomainError("need equal-length, non-empty vectors")
    return y, y_hat


def rmse(y, y_hat) -> float:
    y, y_hat = _pair(y, y_hat)
    return float(np.sqrt(np.mean((y - y_hat) ** 2)))


def ndei(y, y_hat) -> float:
    """Root-mean-square error over the population spread of the actuals."""
    y, y_hat = _pair(y, y_hat)
    spread = float(np.std(y))
    if spread == 0.0:
        raise DomainError("actuals are constant; spread is zero")
    return rmse(y, y_hat) / spread


def mae(y, y_hat) -> float:
    y, y_hat = _pair(y, y_hat)
    return float(np.mean(np.abs(y - y_hat)))


def er2(y, y_hat) -> float:
    """Squared-error total relative to the spread around the actuals' mean."""
    y, y_hat = _pair(y, y_hat)
    denom = float(np.sum((y - y.mean()) ** 2))
    if denom == 0.0:
        raise DomainError("actuals are constant; spread is zero")
    return float(np.sum((y - y_hat) ** 2)) / denom


def mape(y, y_hat, eps: float = 1e-8) -> float:
    """Mean absolute error relative to the prediction magnitude.

    The denominator is |prediction| guarded below by eps, not the actual.
    """
    if eps <= 0.0:
        raise DomainError("eps must be strictly positive")
    y, y_hat = _pair(y, y_hat)
    return float(np.mean(np.abs(y - y_hat) / np.maximum(eps, np.abs(y_hat))))


def runtime_stats(durations):
    """Sample mean and sample standard deviation of run times."""
    d = np.asarray(durations, dtype=float).ravel()
    if d.size < 2:
        raise DomainError("need at least two durations")
    return float(d.mean()), float(d.std(ddof=1))


@dataclass
class MetricReport:
    """Per-run evaluation summary."""

    rmse: float
    ndei: float
    mae: float
    er2: float
    mape: float
    final_rules: int
    runtime_mean_s: float
    runtime_std_s: float

    def as_dict(self) -> dict:
        return {
            "rmse": self.rmse,
            "ndei": self.ndei,
            "mae": self.mae,
            "er2": self.er2,
            "mape": self.mape,
            "final_rules": self.final_rules,
            "runtime_mean_s": self.runtime_mean_s,
            "runtime_std_s": self.runtime_std_s,
        }


def evaluate(y, y_hat, final_rules: int, runtime_mean_s: float = 0.0,
             runtime_std_s: float = 0.0) -> MetricReport:
    return MetricReport(
        rmse=rmse(y, y_hat),
        ndei=ndei(y, y_hat),
        mae=mae(y, y_hat),
        er2=er2(y, y_hat),
        mape=mape(y, y_hat),
        final_rules=final_rules,
        runtime_mean_s=runtime_mean_s,
        runtime_std_s=runtime_std_s,
    )
