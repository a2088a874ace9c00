#!/usr/bin/env python3
"""Benchmark the compiled kernels against the numpy fallback.

Times each hot kernel on representative inputs (101-point grids, 4 slice
levels) and a short end-to-end training run per backend, printing a table
with the speedup. Run from the repository root:

    python benchmarks/bench_backends.py [--samples 400]
"""

import argparse
import time

import numpy as np

from evofuzz import EvolvingModel, ModelConfig, UniverseGrid, _backend


def slice_stack(rng, n_slices=4, n_points=101):
    a = rng.random(n_points)
    b = rng.random(n_points)
    lo = np.minimum(a, b)
    up = np.maximum(a, b)
    center = 0.5 * (lo + up)
    z = np.arange(1, n_slices + 1) / n_slices
    slo = lo + z[:, None] * (center - lo)
    sup = up - z[:, None] * (up - center)
    return lo, up, z, slo, sup


def time_call(fn, repeat=2000):
    best = float("inf")
    for _ in range(3):
        start = time.perf_counter()
        for _ in range(repeat):
            fn()
        best = min(best, (time.perf_counter() - start) / repeat)
    return best


def kernel_benchmarks(rng):
    xs = np.linspace(0.0, 1.0, 101)
    la, ua, z, slo_a, sup_a = slice_stack(rng)
    lb, ub, _, slo_b, sup_b = slice_stack(rng)
    return {
        "gaussian_samples": lambda k: k.gaussian_samples(xs.copy(), 0.4, 0.07),
        "jaccard_it2_value": lambda k: k.jaccard_it2_value(la, ua, lb, ub),
        "zeng_li_value": lambda k: k.zeng_li_value(la, ua, lb, ub),
        "hung_yang_value": lambda k: k.hung_yang_value(slo_a, sup_a, slo_b,
                                                       sup_b, z),
        "yang_lin_value": lambda k: k.yang_lin_value(slo_a, sup_a, slo_b,
                                                     sup_b, z, 11),
        "mohamed_abdaala_value": lambda k: k.mohamed_abdaala_value(
            slo_a, sup_a, slo_b, sup_b, z, 11),
    }


def end_to_end(samples, rng):
    X = rng.random((samples, 4))
    y = rng.random(samples)
    cfg = ModelConfig(beta=0.1, grid=UniverseGrid(0.0, 1.0, 101))
    start = time.perf_counter()
    EvolvingModel(cfg).fit(X, y)
    return time.perf_counter() - start


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--samples", type=int, default=400,
                        help="training samples for the end-to-end run")
    args = parser.parse_args()

    backends = _backend.available_backends()
    if "compiled" not in backends:
        print("compiled kernels not built; showing the numpy fallback only")

    rng = np.random.default_rng(42)
    benches = kernel_benchmarks(rng)
    repeats = {"gaussian_samples": 20000, "jaccard_it2_value": 20000,
               "zeng_li_value": 20000, "hung_yang_value": 5000,
               "yang_lin_value": 500, "mohamed_abdaala_value": 500}

    rows = []
    for name, bench in benches.items():
        row = {"kernel": name}
        for backend_name, module in backends.items():
            row[backend_name] = time_call(lambda: bench(module),
                                          repeat=repeats[name])
        rows.append(row)

    print(f"{'kernel':<24}", end="")
    for backend_name in backends:
        print(f"{backend_name + ' (us)':>16}", end="")
    if len(backends) > 1:
        print(f"{'speedup':>10}", end="")
    print()
    for row in rows:
        print(f"{row['kernel']:<24}", end="")
        for backend_name in backends:
            print(f"{row[backend_name] * 1e6:>16.2f}", end="")
        if len(backends) > 1:
            print(f"{row['python'] / row['compiled']:>10.1f}x", end="")
        print()

    print()
    for backend_name in backends:
        previous = _backend.set_backend(backend_name)
        try:
            rng2 = np.random.default_rng(7)
            elapsed = end_to_end(args.samples, rng2)
        finally:
            _backend.set_backend(previous)
        print(f"end-to-end fit, {args.samples} samples, {backend_name}: "
              f"{elapsed:.3f}s")


if __name__ == "__main__":
    main()
