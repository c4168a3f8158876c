"""Closed-form region-of-attraction test for the saturated LQR loop.

Where gravity is well approximated by its linearization, the closed loop
is a damped second-order linear system, so the torque the controller asks
for is a sum of two decaying real exponentials and can be checked against
the actuator limit without simulating anything. A start state passes when

  1. the torque covering the gravity linearization error at the start
     angle, m g l |sin(theta) - theta|, is within the limit,
  2. the initial torque |u(0)| = |K x0| is within the limit,
  3. the interior extremum of u(t), when one exists at positive time, is
     within the limit.

All comparisons are non-strict and no angle wrapping is applied; the test
treats the state as given. Dropping condition 1 gives the unbounded
variant, which overshoots the true region and exists to show why the
linear-region guard is needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, NumericError
from .lqr import LqrSolution, lqr_gain
from .model import PendulumParams


@dataclass(frozen=True)
class ModePair:
    """Distinct real stable eigenvalues of the linearized closed loop.

    kappa0 is the slow mode (closer to zero), kappa1 the fast one.
    """

    kappa0: float
    kappa1: float
    disc: float

    @property
    def spread(self) -> float:
        """kappa0 - kappa1 = sqrt(disc)."""
        return math.sqrt(self.disc)


def closed_loop_spectrum(params: PendulumParams, K) -> ModePair:
    """Roots of the closed-loop characteristic polynomial.

    kappa^2 + (K1 + b)/(m l^2) kappa + (K0/(m l^2) - g/l) = 0. The
    closed-form construction needs two distinct real stable roots;
    anything else raises NumericError.
    """
    ml2 = params.inertia
    p = (float(K[1]) + params.damping) / ml2
    q = float(K[0]) / ml2 - params.gravity / params.length
    disc = p * p - 4.0 * q
    if disc <= 0.0:
        raise NumericError("closed-loop spectrum is not real and distinct")
    root = math.sqrt(disc)
    kappa0 = 0.5 * (-p + root)
    kappa1 = 0.5 * (-p - root)
    if kappa0 >= 0.0:
        raise NumericError("closed-loop spectrum is not stable")
    return ModePair(kappa0=kappa0, kappa1=kappa1, disc=disc)


def mode_coefficients(modes: ModePair, theta0, omega0):
    """Weights (C0, C1) of the two modes for the start state.

    theta(t) = C0 e^(kappa0 t) + C1 e^(kappa1 t); C0 + C1 = theta0 and
    kappa0 C0 + kappa1 C1 = omega0.
    """
    s = modes.spread
    c0 = (-modes.kappa1 * theta0 + omega0) / s
    c1 = (modes.kappa0 * theta0 - omega0) / s
    return c0, c1


@dataclass(frozen=True)
class TorqueTrajectory:
    """Requested torque of the linearized loop from one start state.

    u(t) = g0 e^(kappa0 t) + g1 e^(kappa1 t) with gi = -(K0 + K1 kappa_i) Ci.
    a0, a1 are the weights of u'(t) on the same exponentials; their signs
    decide whether u has an interior stationary point.
    """

    modes: ModePair
    g0: float
    g1: float
    a0: float
    a1: float

    def value(self, t):
        t = np.asarray(t, dtype=float)
        return self.g0 * np.exp(self.modes.kappa0 * t) + self.g1 * np.exp(
            self.modes.kappa1 * t
        )

    @property
    def initial(self) -> float:
        """u(0), identical to -K x0."""
        return self.g0 + self.g1

    def extremum_time(self):
        """Time of the stationary point of u, or None when u is monotone.

        u'(t) = a0 e^(kappa0 t) + a1 e^(kappa1 t) has a root only when a0
        and a1 have opposite signs; then t* = -ln(-a0/a1) / (kappa0 - kappa1).
        The root may be negative, which callers treat as no constraint.
        """
        if self.a1 == 0.0:
            return None
        r = -self.a0 / self.a1
        if r <= 0.0:
            return None
        return -math.log(r) / self.modes.spread


def linear_region_margin(params: PendulumParams, theta):
    """Torque needed to cover the gravity linearization error at theta."""
    th = np.asarray(theta, dtype=float)
    return params.gravity_torque * np.abs(np.sin(th) - th)


def in_linear_region(params: PendulumParams, theta, torque_limit):
    """Whether the linearization-error torque at theta fits the limit."""
    return linear_region_margin(params, theta) <= torque_limit


@dataclass(frozen=True, eq=False)
class AnalyticRegion:
    """Closed-form inner estimate of the saturated loop's attraction region."""

    params: PendulumParams
    torque_limit: float
    K: np.ndarray
    modes: ModePair

    @classmethod
    def build(cls, params: PendulumParams, torque_limit: float,
              lqr_solution: LqrSolution | None = None) -> "AnalyticRegion":
        """Construct the region test; solves the LQR problem when not given one.

        This classmethod is the timed "analytic construction" in the
        estimator benchmark, so everything here stays cheap.
        """
        if not torque_limit > 0:
            raise ConfigError("torque limit must be positive")
        if lqr_solution is None:
            lqr_solution = lqr_gain(params)
        modes = closed_loop_spectrum(params, lqr_solution.K)
        return cls(params=params, torque_limit=float(torque_limit),
                   K=lqr_solution.K, modes=modes)

    def torque_trajectory(self, theta0: float, omega0: float) -> TorqueTrajectory:
        """Closed-form requested torque from a single start state."""
        c0, c1 = mode_coefficients(self.modes, float(theta0), float(omega0))
        k0, k1 = float(self.K[0]), float(self.K[1])
        g0 = -(k0 + k1 * self.modes.kappa0) * c0
        g1 = -(k0 + k1 * self.modes.kappa1) * c1
        return TorqueTrajectory(modes=self.modes, g0=g0, g1=g1,
                                a0=g0 * self.modes.kappa0,
                                a1=g1 * self.modes.kappa1)

    def conditions(self, theta0, omega0):
        """The three membership conditions as boolean arrays.

        Returns (linear_ok, initial_ok, extremum_ok). Vectorized over
        start states; extremum_ok is true wherever no positive-time
        stationary point exists.
        """
        th = np.asarray(theta0, dtype=float)
        om = np.asarray(omega0, dtype=float)
        k0, k1 = float(self.K[0]), float(self.K[1])
        ka0, ka1 = self.modes.kappa0, self.modes.kappa1
        s = self.modes.spread
        ub = self.torque_limit

        c0 = (-ka1 * th + om) / s
        c1 = (ka0 * th - om) / s
        g0 = -(k0 + k1 * ka0) * c0
        g1 = -(k0 + k1 * ka1) * c1
        a0 = g0 * ka0
        a1 = g1 * ka1

        linear_ok = self.params.gravity_torque * np.abs(np.sin(th) - th) <= ub
        initial_ok = np.abs(g0 + g1) <= ub

        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = -a0 / a1
            tstar = -np.log(ratio) / s
        check = (a1 != 0.0) & (ratio > 0.0) & (tstar > 0.0)
        # only evaluate u at t* where it exists; kappa t* < 0 there, so the
        # exponentials cannot overflow
        tsafe = np.where(check, tstar, 0.0)
        u_star = g0 * np.exp(ka0 * tsafe) + g1 * np.exp(ka1 * tsafe)
        extremum_ok = ~check | (np.abs(u_star) <= ub)
        return linear_ok, initial_ok, extremum_ok

    def contains(self, theta0, omega0):
        """Membership with the linear-region guard. Scalar in, bool out."""
        lin, ini, ext = self.conditions(theta0, omega0)
        ok = lin & ini & ext
        return bool(ok) if np.ndim(ok) == 0 else ok

    def contains_unbounded(self, theta0, omega0):
        """Membership without the guard; overshoots the true region."""
        _, ini, ext = self.conditions(theta0, omega0)
        ok = ini & ext
        return bool(ok) if np.ndim(ok) == 0 else ok
