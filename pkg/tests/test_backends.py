import numpy as np
import pytest

from evofuzz import _backend
from evofuzz._kernels_py import (
    gaussian_samples,
    hung_yang_value,
    jaccard_it2_value,
    mohamed_abdaala_value,
    yang_lin_value,
    zeng_li_value,
)

compiled = _backend.available_backends().get("compiled")

needs_compiled = pytest.mark.skipif(compiled is None,
                                    reason="compiled kernels not built")


def random_slice_stack(rng, n_slices=4, n_points=51):
    a = rng.random(n_points)
    b = rng.random(n_points)
    lo = np.minimum(a, b)
    up = np.maximum(a, b)
    center = 0.5 * (lo + up)
    z = np.arange(1, n_slices + 1) / n_slices
    slo = lo + z[:, None] * (center - lo)
    sup = up - z[:, None] * (up - center)
    return lo, up, z, slo, sup


def test_python_backend_always_available():
    assert "python" in _backend.available_backends()


def test_set_backend_rejects_unknown():
    with pytest.raises(ValueError):
        _backend.set_backend("gpu")


@needs_compiled
class TestCompiledMatchesPython:
    def test_gaussian_samples(self, rng):
        xs = np.linspace(0.0, 1.0, 101)
        for _ in range(20):
            mean = float(rng.random())
            std = float(rng.random() * 0.3 + 1e-3)
            a = gaussian_samples(xs.copy(), mean, std)
            b = compiled.gaussian_samples(xs.copy(), mean, std)
            assert np.allclose(a, b, atol=1e-15)

    def test_pairwise_kernels(self, rng):
        for _ in range(20):
            la, ua, *_ = random_slice_stack(rng)
            lb, ub, *_ = random_slice_stack(rng)
            assert jaccard_it2_value(la, ua, lb, ub) == pytest.approx(
                compiled.jaccard_it2_value(la, ua, lb, ub), abs=1e-12)
            assert zeng_li_value(la, ua, lb, ub) == pytest.approx(
                compiled.zeng_li_value(la, ua, lb, ub), abs=1e-12)

    def test_slice_kernels(self, rng):
        for _ in range(10):
            _, _, z, slo_a, sup_a = random_slice_stack(rng)
            _, _, _, slo_b, sup_b = random_slice_stack(rng)
            assert hung_yang_value(slo_a, sup_a, slo_b, sup_b, z) == pytest.approx(
                compiled.hung_yang_value(slo_a, sup_a, slo_b, sup_b, z),
                abs=1e-12)
            assert yang_lin_value(slo_a, sup_a, slo_b, sup_b, z, 11) == pytest.approx(
                compiled.yang_lin_value(slo_a, sup_a, slo_b, sup_b, z, 11),
                abs=1e-12)
            assert mohamed_abdaala_value(
                slo_a, sup_a, slo_b, sup_b, z, 11) == pytest.approx(
                compiled.mohamed_abdaala_value(slo_a, sup_a, slo_b, sup_b, z, 11),
                abs=1e-12)


class TestMeasuresPerBackend:
    def test_identity_and_bounds(self, each_backend, rng):
        from evofuzz import ModelConfig, UniverseGrid, compatibility
        cfg = ModelConfig(measure="hung_yang", fs_type="gt2",
                          grid=UniverseGrid(0.0, 1.0, 41))
        w = rng.random(4)
        assert compatibility(w, w, cfg) == pytest.approx(1.0, abs=1e-9)
        c = compatibility(rng.random(4), rng.random(4), cfg)
        assert 0.0 <= c <= 1.0

    def test_model_trajectory_matches_across_backends(self, rng):
        # The two kernel implementations may differ only in summation
        # order; the resulting rule trajectories must agree.
        from evofuzz import EvolvingModel, ModelConfig, UniverseGrid
        X = rng.random((60, 4))
        y = rng.random(60)
        counts = {}
        preds = {}
        for name in _backend.available_backends():
            previous = _backend.set_backend(name)
            try:
                cfg = ModelConfig(beta=0.2, grid=UniverseGrid(0.0, 1.0, 101))
                report = EvolvingModel(cfg).fit(X, y)
                counts[name] = report.rule_counts.copy()
                preds[name] = report.predictions.copy()
            finally:
                _backend.set_backend(previous)
        baselines = list(counts)
        for name in baselines[1:]:
            assert np.array_equal(counts[baselines[0]], counts[name])
            assert np.allclose(preds[baselines[0]], preds[name], atol=1e-9)
