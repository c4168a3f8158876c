"""Energy-shaping swing-up with the latched hand-off to LQR."""

import numpy as np
import pytest

import pendroa as pr
from pendroa.integrate import IntegrationConfig
from pendroa.swingup import SwingupConfig


@pytest.fixture(scope="module")
def result(params, half_limit, analytic_half, solution):
    return pr.run_swingup(params, half_limit, region=analytic_half,
                          lqr_solution=solution)


class TestSwingupFromHanging:
    def test_reaches_upright(self, result):
        assert result.switched
        assert result.converged

    def test_switch_inside_closed_form_region(self, result, analytic_half):
        assert 0.0 < result.switch_time < 20.0
        theta_s, omega_s = result.switch_state
        assert abs(theta_s) <= np.pi
        assert analytic_half.contains(theta_s, omega_s)

    def test_latch_is_one_way(self, result):
        active = result.lqr_active.astype(int)
        assert np.all(np.diff(active) >= 0)
        assert active[-1] == 1

    def test_no_saturation_after_switch(self, result):
        assert not result.limited_after_switch

    def test_torque_respects_bound(self, result, half_limit):
        assert np.abs(result.u_applied).max() <= half_limit + 1e-12

    def test_energy_recovered_by_switch(self, params, result):
        # pumping must close most of the two-unit energy deficit before
        # the controller ever hands over
        i_switch = int(round(result.switch_time / 0.1))
        start = pr.energy_error(params, result.theta[0], result.omega[0])
        at_switch = pr.energy_error(params, result.theta[i_switch],
                                    result.omega[i_switch])
        assert at_switch > start + params.gravity_torque

    def test_final_state_wrapped_near_upright(self, result):
        assert abs(pr.wrap_angle(result.theta[-1])) < 1e-5
        assert abs(result.omega[-1]) < 1e-5


class TestSwingupEdges:
    def test_kick_at_dead_hang(self, params, half_limit):
        # exactly at the hanging rest point the energy law is zero, so the
        # controller must inject a kick to get moving at all
        res = pr.run_swingup(params, half_limit, x0=(np.pi, 0.0))
        assert res.u_requested[0] == pytest.approx(half_limit)

    def test_start_inside_region_switches_immediately(self, params,
                                                      half_limit):
        res = pr.run_swingup(params, half_limit, x0=(0.1, 0.0))
        assert res.switch_time == 0.0
        assert res.converged
        assert np.all(res.lqr_active)

    def test_weak_pumping_never_switches(self, params, half_limit):
        res = pr.run_swingup(params, half_limit,
                             config=SwingupConfig(pump_gain=0.01),
                             integration=IntegrationConfig(t_final=5.0))
        assert not res.switched
        assert res.switch_time is None
        assert res.switch_state is None
        assert not res.converged
        assert not res.limited_after_switch

    def test_switched_property(self, params, half_limit):
        res = pr.run_swingup(params, half_limit)
        assert res.switched == (res.switch_time is not None)

    def test_quarter_limit_still_works_on_normal_rig(self):
        # tighter bound: pumping takes longer but the hand-off still lands
        p = pr.preset("normal")
        res = pr.run_swingup(p, 0.25 * p.gravity_torque)
        assert res.switched
        assert res.converged

    def test_grid_shape(self, result):
        assert result.t.size == 201
        assert result.lqr_active.shape == result.t.shape
        assert result.u_applied.shape == result.t.shape
