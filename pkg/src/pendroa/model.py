"""Torque-driven simple pendulum: parameters, dynamics, energy, angle helpers.

The state is x = (theta, omega) with theta = 0 at the upright equilibrium
and theta = pi hanging down, so gravity is destabilizing near the origin.
Positive torque acts in the direction of increasing theta.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError


@dataclass(frozen=True)
class PendulumParams:
    """Point mass on a massless rod, viscous damping at the pivot."""

    mass: float
    length: float
    gravity: float = 9.81
    damping: float = 0.1

    def __post_init__(self):
        if not (self.mass > 0.0 and self.length > 0.0):
            raise ConfigError("mass and length must be positive")
        if not self.gravity > 0.0:
            raise ConfigError("gravity must be positive")
        if self.damping < 0.0:
            raise ConfigError("damping must be non-negative")

    @property
    def inertia(self) -> float:
        """Moment of inertia m l^2 about the pivot."""
        return self.mass * self.length * self.length

    @property
    def gravity_torque(self) -> float:
        """Peak gravity torque m g l, the natural scale for actuator limits."""
        return self.mass * self.gravity * self.length


PRESETS = {
    "normal": PendulumParams(mass=0.676, length=0.45),
    "long": PendulumParams(mass=0.174, length=1.744),
    "short": PendulumParams(mass=1.744, length=0.174),
}


def preset(name: str) -> PendulumParams:
    """Look up one of the built-in parameter sets."""
    try:
        return PRESETS[name]
    except KeyError:
        raise ConfigError(
            f"unknown preset {name!r}, choose from {sorted(PRESETS)}"
        ) from None


def dynamics(params: PendulumParams, x, u):
    """Right-hand side of the pendulum ODE.

    thetadd = (m g l sin(theta) - b omega + u) / (m l^2). Works on scalars
    or arrays; returns (thetadot, omegadot) with the shape of the inputs.
    """
    theta, omega = x[0], x[1]
    acc = (
        params.gravity_torque * np.sin(theta) - params.damping * omega + u
    ) / params.inertia
    return omega, acc


def linearization(params: PendulumParams):
    """State-space (A, B) of the pendulum linearized about upright.

    A has the unstable gravity term g/l in the lower left; B scales the
    torque by the inverse inertia.
    """
    A = np.array(
        [
            [0.0, 1.0],
            [params.gravity / params.length, -params.damping / params.inertia],
        ]
    )
    B = np.array([[0.0], [1.0 / params.inertia]])
    return A, B


def energy_error(params: PendulumParams, theta, omega):
    """Total energy relative to the upright rest state.

    E = m g l (cos(theta) - 1) + 0.5 m l^2 omega^2. Zero exactly at the
    upright equilibrium, -2 m g l hanging at rest. The kinetic term is
    positive; flipping its sign makes energy pumping push the wrong way
    once the pendulum is fast.
    """
    return params.gravity_torque * (np.cos(theta) - 1.0) + 0.5 * params.inertia * np.square(
        omega
    )


def wrap_angle(theta):
    """Wrap an angle to (-pi, pi]; both pi and -pi map to +pi."""
    return np.pi - np.mod(np.pi - np.asarray(theta, dtype=float), 2.0 * np.pi)
