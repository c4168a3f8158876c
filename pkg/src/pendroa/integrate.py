"""Fixed-step RK4 simulation of the torque-limited closed loop.

The controller is evaluated inside every RK4 stage, so the feedback is
continuous rather than held over a step, and the saturation applies per
stage evaluation. A trajectory counts as converged when both state
components are below the settle tolerance at the final time; there is no
angle wrapping here, a full extra revolution does not count as upright.

The default step of 0.1 s matches the sampling estimator's budget. It is
close to the RK4 stability boundary for the stiffest preset, so
classification-grade ground truth should use a finer step (0.01 s is
enough); see IntegrationConfig.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .model import PendulumParams


@dataclass(frozen=True)
class IntegrationConfig:
    dt: float = 0.1
    t_final: float = 10.0
    settle_tol: float = 1e-5
    blowup: float = 1e6  # states are clamped here to keep arithmetic finite

    def with_dt(self, dt: float) -> "IntegrationConfig":
        return replace(self, dt=dt)


def rk4_step(f, x, dt):
    """One classical Runge-Kutta step of xdot = f(x)."""
    k1 = f(x)
    k2 = f(x + 0.5 * dt * k1)
    k3 = f(x + 0.5 * dt * k2)
    k4 = f(x + dt * k3)
    return x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def lqr_controller(K):
    """State feedback u = -K x as a plain callable."""
    k0, k1 = float(K[0]), float(K[1])

    def control(x):
        return -k0 * x[0] - k1 * x[1]

    return control


@dataclass(eq=False)
class Trajectory:
    """Simulation record sampled at the integration grid points."""

    t: np.ndarray
    theta: np.ndarray
    omega: np.ndarray
    u_applied: np.ndarray
    u_requested: np.ndarray
    limited: bool
    converged: bool

    @property
    def final_state(self):
        return float(self.theta[-1]), float(self.omega[-1])


def simulate(params: PendulumParams, controller, x0, torque_limit,
             config: IntegrationConfig = IntegrationConfig()) -> Trajectory:
    """Integrate the closed loop from one start state.

    controller maps a state array to a requested torque; the plant clips it
    to +-torque_limit. The limited flag is set from every stage evaluation,
    not just the recorded grid samples. Pass torque_limit = inf for an
    unconstrained actuator.
    """
    ub = float(torque_limit)
    mgl, b, ml2 = params.gravity_torque, params.damping, params.inertia
    n = int(round(config.t_final / config.dt))
    t = np.arange(n + 1) * config.dt
    theta = np.empty(n + 1)
    omega = np.empty(n + 1)
    u_req = np.empty(n + 1)
    u_app = np.empty(n + 1)
    limited = False
    x = np.asarray(x0, dtype=float).copy()

    def rhs(xv):
        nonlocal limited
        u = float(controller(xv))
        ua = min(max(u, -ub), ub)
        if abs(u) > ub:
            limited = True
        return np.array([xv[1], (mgl * math.sin(xv[0]) - b * xv[1] + ua) / ml2])

    for i in range(n + 1):
        theta[i], omega[i] = x[0], x[1]
        u = float(controller(x))
        u_req[i] = u
        u_app[i] = min(max(u, -ub), ub)
        if i == n:
            break
        x = rk4_step(rhs, x, config.dt)
        x = np.clip(x, -config.blowup, config.blowup)

    converged = bool(
        abs(theta[-1]) < config.settle_tol and abs(omega[-1]) < config.settle_tol
    )
    return Trajectory(t=t, theta=theta, omega=omega, u_applied=u_app,
                      u_requested=u_req, limited=limited, converged=converged)


def simulate_batch(params: PendulumParams, K, torque_limit, theta0, omega0,
                   config: IntegrationConfig = IntegrationConfig()):
    """Vectorized RK4 of the saturated LQR loop over many start states.

    Stage-for-stage the same scheme as simulate() with an LQR controller.
    Returns (theta_final, omega_final, limited, converged) arrays; only the
    final states are kept, which is what ground-truth classification needs.
    """
    th = np.array(theta0, dtype=float, copy=True)
    om = np.array(omega0, dtype=float, copy=True)
    limited = np.zeros(th.shape, dtype=bool)
    k0, k1 = float(K[0]), float(K[1])
    mgl, b, ml2 = params.gravity_torque, params.damping, params.inertia
    ub = float(torque_limit)
    dt = config.dt
    n = int(round(config.t_final / dt))

    def stage(thv, omv):
        u = -k0 * thv - k1 * omv
        np.logical_or(limited, np.abs(u) > ub, out=limited)
        ua = np.clip(u, -ub, ub)
        return omv, (mgl * np.sin(thv) - b * omv + ua) / ml2

    for _ in range(n):
        d1t, d1o = stage(th, om)
        d2t, d2o = stage(th + 0.5 * dt * d1t, om + 0.5 * dt * d1o)
        d3t, d3o = stage(th + 0.5 * dt * d2t, om + 0.5 * dt * d2o)
        d4t, d4o = stage(th + dt * d3t, om + dt * d3o)
        th = th + (dt / 6.0) * (d1t + 2.0 * d2t + 2.0 * d3t + d4t)
        om = om + (dt / 6.0) * (d1o + 2.0 * d2o + 2.0 * d3o + d4o)
        np.clip(th, -config.blowup, config.blowup, out=th)
        np.clip(om, -config.blowup, config.blowup, out=om)

    with np.errstate(invalid="ignore"):
        converged = (np.abs(th) < config.settle_tol) & (np.abs(om) < config.settle_tol)
    return th, om, limited, converged
