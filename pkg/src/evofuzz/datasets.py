"""Benchmark data: chaotic series generation, CSV ingestion, lag embedding.

The delay differential generator integrates with fourth-order Runge-Kutta on
a fixed step and reads delayed terms from the stored trajectory by linear
interpolation, returning one sample per integer time unit.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, IngestionError


@dataclass(frozen=True)
class SeriesSpec:
    """Parameters of the delay differential benchmark series."""

    theta: float
    length: int = 5586
    phi: float = 0.2
    rho: float = 10.0
    varsigma: float = 0.1
    dt: float = 0.1
    x0: float = 1.2

    def __post_init__(self):
        if self.theta <= 0.0:
            raise DomainError("delay theta must be positive")
        if self.length < 1:
            raise DomainError("length must be at least 1")
        if self.dt <= 0.0 or abs(round(1.0 / self.dt) - 1.0 / self.dt) > 1e-9:
            raise DomainError("dt must evenly divide one time unit")
        if self.theta < self.dt:
            raise DomainError("delay must be at least one integration step")


def generate_mackey_glass(spec: SeriesSpec) -> np.ndarray:
    """Integrate dx/dt = phi x(t-theta) / (1 + x(t-theta)^rho) - varsigma x(t).

    The history is the constant x0 for t <= 0. Samples are returned at
    integer t, starting at t = 0. Delayed terms between stored steps are
    read by cubic Hermite interpolation (the stored slopes come for free);
    plain linear interpolation of the delay leaves an O(dt^2) error that
    dominates the integrator and breaks step-halving convergence.
    """
    dt = spec.dt
    steps_per_unit = round(1.0 / dt)
    total_steps = (spec.length - 1) * steps_per_unit
    traj = np.empty(total_steps + 1)
    slope = np.empty(total_steps + 1)
    traj[0] = spec.x0
    phi, rho, sig = spec.phi, spec.rho, spec.varsigma
    theta = spec.theta

    def delayed(t: float) -> float:
        s = t - theta
        if s <= 0.0:
            return spec.x0
        pos = s / dt
        i = int(pos)
        if i >= total_steps:
            return traj[total_steps]
        frac = pos - i
        if frac == 0.0:
            return traj[i]
        f2 = frac * frac
        f3 = f2 * frac
        return ((2.0 * f3 - 3.0 * f2 + 1.0) * traj[i]
                + (f3 - 2.0 * f2 + frac) * dt * slope[i]
                + (-2.0 * f3 + 3.0 * f2) * traj[i + 1]
                + (f3 - f2) * dt * slope[i + 1])

    def deriv(x: float, x_delayed: float) -> float:
        return phi * x_delayed / (1.0 + x_delayed**rho) - sig * x

    slope[0] = deriv(traj[0], spec.x0)
    for step in range(total_steps):
        t = step * dt
        x = traj[step]
        d0 = delayed(t)
        d_half = delayed(t + 0.5 * dt)
        d1 = delayed(t + dt)
        k1 = deriv(x, d0)
        k2 = deriv(x + 0.5 * dt * k1, d_half)
        k3 = deriv(x + 0.5 * dt * k2, d_half)
        k4 = deriv(x + dt * k3, d1)
        traj[step + 1] = x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        slope[step + 1] = deriv(traj[step + 1], d1)

    return traj[::steps_per_unit][: spec.length].copy()


@dataclass
class EmbeddedDataset:
    """Lag-embedded inputs/targets with a train/test split.

    The split holds (start, stop) row ranges into the stacked arrays,
    train rows first.
    """

    inputs: np.ndarray
    targets: np.ndarray
    train_range: tuple
    test_range: tuple
    scale: tuple | None = None  # (lo, hi) of the normalization, when applied

    @property
    def x_train(self):
        return self.inputs[self.train_range[0]:self.train_range[1]]

    @property
    def y_train(self):
        return self.targets[self.train_range[0]:self.train_range[1]]

    @property
    def x_test(self):
        return self.inputs[self.test_range[0]:self.test_range[1]]

    @property
    def y_test(self):
        return self.targets[self.test_range[0]:self.test_range[1]]


MG_TRAIN_KS = (201, 3200)
MG_TEST_KS = (5001, 5500)
MG_LAGS = (0, 6, 12, 18)
MG_LEAD = 85

STOCK_TRAIN_KS = (1, 3200)
STOCK_TEST_KS = (3201, 3500)
STOCK_LAGS = (0, 2, 3)
STOCK_LEAD = 4


def _embed(series, lags, lead, train_ks, test_ks, index_base):
    series = np.asarray(series, dtype=float)
    needed = test_ks[1] + lead - index_base + 1
    if series.size < needed:
        raise DomainError(
            f"series too short: need at least {needed} samples, got {series.size}")
    ks = list(range(train_ks[0], train_ks[1] + 1)) + \
        list(range(test_ks[0], test_ks[1] + 1))
    rows = np.array(ks) - index_base
    inputs = np.stack([series[rows + lag] for lag in lags], axis=1)
    targets = series[rows + lead]
    n_train = train_ks[1] - train_ks[0] + 1
    n_total = len(ks)
    return EmbeddedDataset(inputs, targets, (0, n_train), (n_train, n_total))


def embed_mackey_glass(series) -> EmbeddedDataset:
    """Inputs [x_k, x_k+6, x_k+12, x_k+18], target x_k+85.

    Training rows cover k in [201, 3200], test rows k in [5001, 5500]; k
    indexes the integer-time samples directly (t = k).
    """
    return _embed(series, MG_LAGS, MG_LEAD, MG_TRAIN_KS, MG_TEST_KS,
                  index_base=0)


def embed_stock(series) -> EmbeddedDataset:
    """Inputs [y_k, y_k+2, y_k+3], target y_k+4, with 1-based k.

    Training rows cover k in [1, 3200], test rows k in [3201, 3500].
    """
    return _embed(series, STOCK_LAGS, STOCK_LEAD, STOCK_TRAIN_KS,
                  STOCK_TEST_KS, index_base=1)


def load_close_series(path, column: str = "Close") -> np.ndarray:
    """Read one numeric column from a CSV file, skipping empty cells."""
    values = []
    try:
        handle = open(path, newline="", encoding="utf-8")
    except OSError as exc:
        raise IngestionError(f"cannot open {path}: {exc}") from exc
    with handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames is None or column not in reader.fieldnames:
            raise IngestionError(
                f"column {column!r} not found in {path}; "
                f"header: {reader.fieldnames}")
        for row_number, row in enumerate(reader, start=2):
            cell = (row.get(column) or "").strip()
            if not cell:
                continue
            try:
                values.append(float(cell))
            except ValueError:
                raise IngestionError(
                    f"{path}:{row_number}: non-numeric value {cell!r} "
                    f"in column {column!r}") from None
    return np.array(values)


def min_max_normalize(series, stats_range=None):
    """Affine map of the series onto [0, 1].

    When stats_range = (start, stop) is given, the min and max are computed
    over series[start:stop] only and applied everywhere, so test data never
    leaks into the scaling. Returns (normalized, lo, hi).
    """
    series = np.asarray(series, dtype=float)
    window = series if stats_range is None else series[stats_range[0]:stats_range[1]]
    if window.size == 0:
        raise DomainError("empty statistics range")
    lo = float(window.min())
    hi = float(window.max())
    if hi == lo:
        raise DomainError("cannot normalize a constant series")
    return (series - lo) / (hi - lo), lo, hi


def denormalize(values, lo: float, hi: float):
    return np.asarray(values, dtype=float) * (hi - lo) + lo


def synthetic_close_series(n: int = 3600, seed: int = 7) -> np.ndarray:
    """Deterministic random-walk price series for fixtures and demos."""
    if n < 1:
        raise DomainError("need at least one sample")
    rng = np.random.default_rng(seed)
    steps = rng.normal(loc=0.0002, scale=0.012, size=n - 1)
    return 5000.0 * np.exp(np.concatenate([[0.0], np.cumsum(steps)]))


def export_series_csv(series, path, column: str = "x"):
    """Write a series as a single-column CSV with a header row."""
    series = np.asarray(series, dtype=float)
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow([column])
        for value in series:
            writer.writerow([repr(float(value))])
