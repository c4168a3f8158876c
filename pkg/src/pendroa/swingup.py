"""Energy-shaping swing-up with handover to LQR tracking.

Away from the upright region the torque regulates total energy toward the
upright level, u = -c omega dE + b omega; the damping term cancels the
physical damping so the pumping acts on an undamped pendulum. Once the
wrapped state enters the closed-form attraction region the controller
latches onto u = -K x and the latch never releases. At the hanging rest
state both energy terms vanish, so a constant kick torque breaks the
deadlock.

The branch latch is updated at the integration grid points; within a step
the stage evaluations re-evaluate the feedback of whichever branch rule is
latched, so the feedback itself stays continuous.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .integrate import IntegrationConfig
from .lqr import LqrSolution, lqr_gain
from .model import PendulumParams, wrap_angle
from .roa_analytic import AnalyticRegion


@dataclass(frozen=True)
class SwingupConfig:
    pump_gain: float = 2.0  # c in u = -c omega dE; presets tolerate roughly 1..2
    dead_tol: float = 1e-6


@dataclass(eq=False)
class SwingupResult:
    t: np.ndarray
    theta: np.ndarray  # unwrapped
    omega: np.ndarray
    u_applied: np.ndarray
    u_requested: np.ndarray
    lqr_active: np.ndarray  # branch latched at each grid point
    switch_time: float | None
    switch_state: tuple | None  # wrapped state at the handover grid point
    converged: bool
    limited_after_switch: bool

    @property
    def switched(self) -> bool:
        return self.switch_time is not None


def run_swingup(params: PendulumParams, torque_limit, x0=(math.pi, 0.0),
                region: AnalyticRegion | None = None,
                lqr_solution: LqrSolution | None = None,
                config: SwingupConfig = SwingupConfig(),
                integration: IntegrationConfig = IntegrationConfig(t_final=20.0)
                ) -> SwingupResult:
    """Swing up from x0 (default: hanging at rest) and stabilize upright.

    Convergence is judged on the wrapped final state against the settle
    tolerance, so ending upright after any number of full turns counts.
    """
    if region is None:
        if lqr_solution is None:
            lqr_solution = lqr_gain(params)
        region = AnalyticRegion.build(params, torque_limit, lqr_solution)
    K0, K1 = float(region.K[0]), float(region.K[1])
    mgl, b, ml2 = params.gravity_torque, params.damping, params.inertia
    ub = float(torque_limit)
    c = config.pump_gain
    dead = config.dead_tol
    dt = integration.dt
    n = int(round(integration.t_final / dt))

    def torque(th, om, latched):
        """Requested torque and whether the LQR rule produced it."""
        tw = float(wrap_angle(th))
        if latched or region.contains(tw, om):
            return -K0 * tw - K1 * om, True
        de = mgl * (math.cos(tw) - 1.0) + 0.5 * ml2 * om * om
        u = -c * om * de + b * om
        if abs(u) < dead and abs(om) < dead:
            u = ub  # kick out of the hanging dead state
        return u, False

    t = np.arange(n + 1) * dt
    theta = np.empty(n + 1)
    omega = np.empty(n + 1)
    u_req = np.empty(n + 1)
    u_app = np.empty(n + 1)
    active = np.zeros(n + 1, dtype=bool)
    th, om = float(x0[0]), float(x0[1])
    switched = False
    switch_time = None
    switch_state = None
    limited_after = False

    for k in range(n + 1):
        u0, lqr_now = torque(th, om, switched)
        if lqr_now and not switched:
            switched = True
            switch_time = k * dt
            switch_state = (float(wrap_angle(th)), om)
        theta[k], omega[k] = th, om
        u_req[k] = u0
        u_app[k] = min(max(u0, -ub), ub)
        active[k] = switched
        if k == n:
            break

        def f(tv, ov):
            u, _ = torque(tv, ov, switched)
            usat = min(max(u, -ub), ub)
            return ov, (mgl * math.sin(tv) - b * ov + usat) / ml2, abs(u) > ub

        k1t, k1o, l1 = f(th, om)
        k2t, k2o, l2 = f(th + 0.5 * dt * k1t, om + 0.5 * dt * k1o)
        k3t, k3o, l3 = f(th + 0.5 * dt * k2t, om + 0.5 * dt * k2o)
        k4t, k4o, l4 = f(th + dt * k3t, om + dt * k3o)
        if switched and (l1 or l2 or l3 or l4):
            limited_after = True
        th += (dt / 6) * (k1t + 2 * k2t + 2 * k3t + k4t)
        om += (dt / 6) * (k1o + 2 * k2o + 2 * k3o + k4o)

    tol = integration.settle_tol
    converged = bool(abs(float(wrap_angle(th))) < tol and abs(om) < tol)
    return SwingupResult(t=t, theta=theta, omega=omega, u_applied=u_app,
                         u_requested=u_req, lqr_active=active,
                         switch_time=switch_time, switch_state=switch_state,
                         converged=converged, limited_after_switch=limited_after)
