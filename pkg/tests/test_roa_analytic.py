"""Closed-form torque trajectory and the three-condition membership test."""

import numpy as np
import pytest

import pendroa as pr
from pendroa.errors import ConfigError, NumericError
from pendroa.roa_analytic import (
    closed_loop_spectrum,
    in_linear_region,
    linear_region_margin,
    mode_coefficients,
)


class TestSpectrum:
    def test_matches_eigenvalue_oracle(self, params, solution):
        modes = closed_loop_spectrum(params, solution.K)
        A_cl = solution.A - solution.B @ solution.K[None, :]
        eigs = np.sort(np.linalg.eigvals(A_cl).real)
        np.testing.assert_allclose([modes.kappa1, modes.kappa0], eigs,
                                   rtol=1e-9)

    def test_vieta_relations(self, params, solution):
        modes = closed_loop_spectrum(params, solution.K)
        k0, k1 = solution.K
        p = (k1 + params.damping) / params.inertia
        q = k0 / params.inertia - params.gravity / params.length
        assert modes.kappa0 + modes.kappa1 == pytest.approx(-p, rel=1e-12)
        assert modes.kappa0 * modes.kappa1 == pytest.approx(q, rel=1e-12)

    def test_ordering_and_spread(self, params, solution):
        modes = closed_loop_spectrum(params, solution.K)
        assert modes.kappa1 < modes.kappa0 < 0
        assert modes.spread == pytest.approx(modes.kappa0 - modes.kappa1)

    def test_complex_pair_rejected(self, params):
        # heavy position weight with almost-free velocity gives an
        # underdamped loop, which the mode split cannot represent
        sol = pr.lqr_gain(params, Q=np.diag([100.0, 1e-4]))
        with pytest.raises(NumericError):
            closed_loop_spectrum(params, sol.K)

    def test_unstable_gain_rejected(self, params):
        with pytest.raises(NumericError):
            closed_loop_spectrum(params, np.array([0.0, 0.0]))


class TestModeCoefficients:
    def test_reconstruct_initial_state(self, params, solution):
        modes = closed_loop_spectrum(params, solution.K)
        rng = np.random.default_rng(1)
        theta = rng.uniform(-np.pi, np.pi, 50)
        omega = rng.uniform(-10, 10, 50)
        c0, c1 = mode_coefficients(modes, theta, omega)
        np.testing.assert_allclose(c0 + c1, theta, atol=1e-12)
        np.testing.assert_allclose(modes.kappa0 * c0 + modes.kappa1 * c1,
                                   omega, atol=1e-11)


class TestTorqueTrajectory:
    def test_initial_value_is_feedback(self, params, solution, analytic_half):
        rng = np.random.default_rng(2)
        for _ in range(20):
            x0 = rng.uniform(-3, 3, 2)
            traj = analytic_half.torque_trajectory(*x0)
            assert traj.initial == pytest.approx(-solution.K @ x0, rel=1e-12)
            assert traj.value(0.0) == pytest.approx(traj.initial, rel=1e-12)

    def test_tracks_feedback_along_modal_state(self, params, solution,
                                               analytic_half):
        # u(t) must equal -K x(t) where x(t) is the two-mode state solution
        modes = analytic_half.modes
        rng = np.random.default_rng(3)
        t = rng.uniform(0, 5, 40)
        theta0, omega0 = 1.1, -2.4
        c0, c1 = mode_coefficients(modes, theta0, omega0)
        e0 = np.exp(modes.kappa0 * t)
        e1 = np.exp(modes.kappa1 * t)
        theta_t = c0 * e0 + c1 * e1
        omega_t = modes.kappa0 * c0 * e0 + modes.kappa1 * c1 * e1
        expected = -solution.K[0] * theta_t - solution.K[1] * omega_t
        traj = analytic_half.torque_trajectory(theta0, omega0)
        np.testing.assert_allclose(traj.value(t), expected, rtol=1e-12)

    def test_extremum_is_stationary(self, analytic_half):
        rng = np.random.default_rng(4)
        seen = 0
        for _ in range(100):
            traj = analytic_half.torque_trajectory(rng.uniform(-np.pi, np.pi),
                                                   rng.uniform(-10, 10))
            ts = traj.extremum_time()
            if ts is None or ts <= 0:
                continue
            seen += 1
            h = 1e-6
            fd = (traj.value(ts + h) - traj.value(ts - h)) / (2 * h)
            scale = max(abs(traj.a0), abs(traj.a1))
            assert abs(fd) < 1e-9 * scale
        assert seen > 0

    def test_no_extremum_means_monotone(self, analytic_half):
        rng = np.random.default_rng(5)
        t = np.linspace(0.0, 8.0, 400)
        seen = 0
        for _ in range(100):
            traj = analytic_half.torque_trajectory(rng.uniform(-np.pi, np.pi),
                                                   rng.uniform(-10, 10))
            if traj.extremum_time() is not None:
                continue
            seen += 1
            du = np.diff(traj.value(t))
            assert np.all(du <= 1e-15) or np.all(du >= -1e-15)
        assert seen > 0

    def test_pure_mode_has_no_extremum(self, analytic_half):
        # starting on the slow eigenvector leaves a single decaying mode
        modes = analytic_half.modes
        traj = analytic_half.torque_trajectory(1.0, modes.kappa0)
        assert traj.extremum_time() is None


class TestLinearRegionMargin:
    def test_zero_at_origin(self, params):
        assert linear_region_margin(params, 0.0) == 0.0

    def test_even_and_growing(self, params):
        theta = np.linspace(0.0, np.pi, 50)
        m = linear_region_margin(params, theta)
        np.testing.assert_allclose(linear_region_margin(params, -theta), m)
        assert np.all(np.diff(m) >= 0)

    def test_boundary_is_inside(self, params):
        # membership uses a non-strict comparison
        margin = float(linear_region_margin(params, 1.0))
        assert in_linear_region(params, 1.0, margin)
        assert not in_linear_region(params, 1.0, margin * (1 - 1e-9))


class TestMembership:
    def test_origin_inside(self, params, solution):
        for frac in (0.5, 0.25, 0.125):
            region = pr.AnalyticRegion.build(params, frac * params.gravity_torque,
                                             solution)
            assert region.contains(0.0, 0.0)

    def test_odd_symmetry(self, analytic_half):
        rng = np.random.default_rng(6)
        theta = rng.uniform(-np.pi, np.pi, 300)
        omega = rng.uniform(-10, 10, 300)
        np.testing.assert_array_equal(analytic_half.contains(theta, omega),
                                      analytic_half.contains(-theta, -omega))

    def test_nested_in_torque_limit(self, params, solution):
        tight = pr.AnalyticRegion.build(params, 0.25 * params.gravity_torque,
                                        solution)
        loose = pr.AnalyticRegion.build(params, 0.5 * params.gravity_torque,
                                        solution)
        rng = np.random.default_rng(7)
        theta = rng.uniform(-np.pi, np.pi, 2000)
        omega = rng.uniform(-10, 10, 2000)
        inside_tight = tight.contains(theta, omega)
        inside_loose = loose.contains(theta, omega)
        assert not np.any(inside_tight & ~inside_loose)

    def test_unbounded_is_superset(self, analytic_half):
        rng = np.random.default_rng(8)
        theta = rng.uniform(-np.pi, np.pi, 2000)
        omega = rng.uniform(-10, 10, 2000)
        inside = analytic_half.contains(theta, omega)
        unbounded = analytic_half.contains_unbounded(theta, omega)
        assert not np.any(inside & ~unbounded)

    def test_conditions_compose(self, analytic_half):
        theta, omega = pr.sample_states(500, seed=9)
        linear_ok, initial_ok, extremum_ok = analytic_half.conditions(theta,
                                                                     omega)
        np.testing.assert_array_equal(
            analytic_half.contains(theta, omega),
            linear_ok & initial_ok & extremum_ok)
        np.testing.assert_array_equal(
            analytic_half.contains_unbounded(theta, omega),
            initial_ok & extremum_ok)

    def test_linear_guard_binds_for_long_pendulum(self):
        # the long rig is where dropping the small-angle guard admits
        # states that the full test rejects
        p = pr.preset("long")
        region = pr.AnalyticRegion.build(p, 0.5 * p.gravity_torque)
        theta, omega = pr.sample_states(20000, seed=0)
        gap = region.contains_unbounded(theta, omega) & ~region.contains(theta,
                                                                         omega)
        assert np.count_nonzero(gap) > 0

    def test_scalar_matches_vector(self, analytic_half):
        theta = np.array([0.0, 0.4, 1.307, -2.0])
        omega = np.array([0.0, -1.0, -4.4, 5.0])
        vec = analytic_half.contains(theta, omega)
        for i in range(theta.size):
            scalar = analytic_half.contains(float(theta[i]), float(omega[i]))
            assert isinstance(scalar, bool)
            assert scalar == vec[i]

    def test_fast_downswing_boundary(self):
        # at theta = 0.416 pi the normal rig needs slightly more than
        # -4.4 rad/s of downswing before the torque peak fits the bound
        p = pr.preset("normal")
        region = pr.AnalyticRegion.build(p, 0.5 * p.gravity_torque)
        assert not region.contains(0.416 * np.pi, -4.4)
        assert region.contains(0.416 * np.pi, -5.0)

    def test_build_solves_lqr_when_missing(self, params, solution, half_limit):
        region = pr.AnalyticRegion.build(params, half_limit)
        np.testing.assert_allclose(region.K, solution.K, rtol=1e-12)

    def test_invalid_limit_rejected(self, params):
        with pytest.raises(ConfigError):
            pr.AnalyticRegion.build(params, -1.0)
        with pytest.raises(ConfigError):
            pr.AnalyticRegion.build(params, 0.0)
