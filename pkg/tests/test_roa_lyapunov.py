"""Sampling-based sublevel-set estimator and its ellipse bookkeeping."""

import numpy as np
import pytest

import pendroa as pr
from pendroa.errors import ConfigError
from pendroa.integrate import IntegrationConfig
from pendroa.roa_lyapunov import LyapunovRegion

# regression pins for the default estimator at a fixed seed
PINNED_RHO = {
    ("normal", 0.5): 1.232768,
    ("short", 0.125): 0.051990,
}


@pytest.fixture(scope="module")
def lyap_half(params, solution, half_limit):
    return pr.estimate_region(params, half_limit, solution, seed=0)


class TestLyapunovRegion:
    def test_value_matches_quadratic_form(self, solution):
        region = LyapunovRegion(S=solution.S, rho=1.0)
        rng = np.random.default_rng(10)
        for _ in range(20):
            x = rng.uniform(-3, 3, 2)
            assert region.value(x[0], x[1]) == pytest.approx(
                x @ solution.S @ x, rel=1e-12)

    def test_contains_is_sublevel(self, lyap_half):
        rng = np.random.default_rng(11)
        theta = rng.uniform(-np.pi, np.pi, 200)
        omega = rng.uniform(-10, 10, 200)
        inside = lyap_half.contains(theta, omega)
        np.testing.assert_array_equal(
            inside, lyap_half.value(theta, omega) <= lyap_half.rho)
        assert lyap_half.contains(0.0, 0.0) is True

    def test_area_against_grid_count(self, lyap_half):
        # count membership on a uniform grid over a box around the ellipse
        span_t = np.sqrt(lyap_half.rho * np.linalg.inv(lyap_half.S)[0, 0])
        span_o = np.sqrt(lyap_half.rho * np.linalg.inv(lyap_half.S)[1, 1])
        n = 801
        tt = np.linspace(-1.05 * span_t, 1.05 * span_t, n)
        oo = np.linspace(-1.05 * span_o, 1.05 * span_o, n)
        T, O = np.meshgrid(tt, oo)
        frac = np.mean(lyap_half.contains(T.ravel(), O.ravel()))
        box = (tt[-1] - tt[0]) * (oo[-1] - oo[0])
        assert box * frac == pytest.approx(lyap_half.area, rel=0.02)


class TestEstimateRegion:
    def test_deterministic(self, params, solution, half_limit):
        a = pr.estimate_region(params, half_limit, solution,
                               sample_count=120, seed=4)
        b = pr.estimate_region(params, half_limit, solution,
                               sample_count=120, seed=4)
        assert a.rho == b.rho
        np.testing.assert_array_equal(a.S, b.S)

    def test_seed_changes_result(self, params, solution, half_limit):
        rhos = {pr.estimate_region(params, half_limit, solution,
                                   sample_count=120, seed=s).rho
                for s in (0, 1, 2)}
        assert len(rhos) > 1

    def test_sample_prefix_only_shrinks(self, params, solution, half_limit):
        # the stream consumes two draws per sample, so a longer run sees
        # the short run's samples first and can only shrink further
        short = pr.estimate_region(params, half_limit, solution,
                                   sample_count=150, seed=6)
        full = pr.estimate_region(params, half_limit, solution,
                                  sample_count=400, seed=6)
        assert full.rho <= short.rho

    def test_rho_bounded_by_corner_value(self, params, solution, lyap_half):
        corner = np.array([np.pi, 10.0])
        assert 0 < lyap_half.rho <= corner @ solution.S @ corner

    def test_pinned_values(self):
        for (name, frac), expected in PINNED_RHO.items():
            p = pr.preset(name)
            region = pr.estimate_region(p, frac * p.gravity_torque,
                                        seed=1000)
            assert region.rho == pytest.approx(expected, abs=1e-5)

    def test_members_mostly_converge(self, params, solution, half_limit,
                                     lyap_half):
        # the ellipse is a sampling estimate, not a certificate, so allow
        # a small miss rate under a fine-step ground-truth check
        rng = np.random.default_rng(12)
        L = np.linalg.cholesky(lyap_half.S)
        phi = rng.uniform(0, 2 * np.pi, 300)
        r = np.sqrt(rng.uniform(0, 1, 300))
        y = np.sqrt(lyap_half.rho) * np.vstack([r * np.cos(phi),
                                                r * np.sin(phi)])
        x = np.linalg.solve(L.T, y)
        _, _, _, conv = pr.simulate_batch(params, solution.K, half_limit,
                                          x[0], x[1],
                                          IntegrationConfig(dt=0.01))
        assert np.mean(conv) >= 0.98

    def test_invalid_limit_rejected(self, params, solution):
        with pytest.raises(ConfigError):
            pr.estimate_region(params, 0.0, solution, sample_count=10)


class TestVdot:
    def test_negative_near_origin(self, params, solution, half_limit,
                                  lyap_half):
        # strict pointwise decrease on the inner part of the ellipse
        rng = np.random.default_rng(13)
        L = np.linalg.cholesky(lyap_half.S)
        phi = rng.uniform(0, 2 * np.pi, 2000)
        r = np.sqrt(rng.uniform(0, 1, 2000))
        y = np.sqrt(0.05 * lyap_half.rho) * np.vstack([r * np.cos(phi),
                                                       r * np.sin(phi)])
        x = np.linalg.solve(L.T, y)
        keep = np.hypot(x[0], x[1]) >= 1e-3
        vd = pr.vdot(params, solution, half_limit, x[0][keep], x[1][keep])
        assert np.all(vd < 0)
