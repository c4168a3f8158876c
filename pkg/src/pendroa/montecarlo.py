"""Monte-Carlo ground truth for the region estimates.

All start states of a batch are drawn upfront from a single PCG64 stream;
simulating a trial consumes no randomness. Re-running, splitting, or
reordering a batch with the same seed therefore reproduces every verdict
exactly.

Naming used throughout the outputs: S is the set of start states that
converge upright under the saturated loop, S-tilde the subset that never
hits the torque limit on the way.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .integrate import IntegrationConfig, simulate_batch
from .model import PendulumParams
from .roa_analytic import AnalyticRegion
from .roa_lyapunov import LyapunovRegion

DOMAIN = (math.pi, 10.0)  # |theta| < pi, |omega| < 10


def sample_states(count: int, seed, domain=DOMAIN):
    """Draw a batch of start states, theta block then omega block."""
    rng = np.random.default_rng(seed)
    theta = rng.uniform(-domain[0], domain[0], count)
    omega = rng.uniform(-domain[1], domain[1], count)
    return theta, omega


@dataclass(frozen=True)
class RegionSample:
    """One start state with its five membership verdicts."""

    theta0: float
    omega0: float
    in_s: bool
    in_s_tilde: bool
    in_analytic: bool
    in_unbound: bool
    in_lyapunov: bool


@dataclass(eq=False)
class BatchResult:
    """Vectorized verdicts for one sampled batch."""

    seed: int
    torque_limit: float
    theta0: np.ndarray
    omega0: np.ndarray
    in_s: np.ndarray
    in_s_tilde: np.ndarray
    in_analytic: np.ndarray
    in_unbound: np.ndarray
    in_lyapunov: np.ndarray

    def __len__(self):
        return self.theta0.size

    def samples(self) -> Iterator[RegionSample]:
        for i in range(self.theta0.size):
            yield RegionSample(
                theta0=float(self.theta0[i]),
                omega0=float(self.omega0[i]),
                in_s=bool(self.in_s[i]),
                in_s_tilde=bool(self.in_s_tilde[i]),
                in_analytic=bool(self.in_analytic[i]),
                in_unbound=bool(self.in_unbound[i]),
                in_lyapunov=bool(self.in_lyapunov[i]),
            )

    @property
    def counts(self) -> dict:
        return {
            "in_s": int(self.in_s.sum()),
            "in_s_tilde": int(self.in_s_tilde.sum()),
            "in_analytic": int(self.in_analytic.sum()),
            "in_unbound": int(self.in_unbound.sum()),
            "in_lyapunov": int(self.in_lyapunov.sum()),
        }

    @property
    def relative_area(self) -> float:
        """Closed-form region size relative to the sampling estimate."""
        n_lyap = int(self.in_lyapunov.sum())
        if n_lyap == 0:
            return math.nan
        return int(self.in_analytic.sum()) / n_lyap


def run_batch(params: PendulumParams, torque_limit, analytic: AnalyticRegion,
              lyapunov: LyapunovRegion, count=20000, seed=0, domain=DOMAIN,
              config: IntegrationConfig | None = None) -> BatchResult:
    """Sample the domain and classify every state five ways.

    Ground truth comes from batch integration of the saturated loop; the
    estimator verdicts are pure membership tests on the same states.
    """
    if config is None:
        config = IntegrationConfig()
    theta0, omega0 = sample_states(count, seed, domain)
    _, _, limited, converged = simulate_batch(
        params, analytic.K, torque_limit, theta0, omega0, config
    )
    return BatchResult(
        seed=int(seed),
        torque_limit=float(torque_limit),
        theta0=theta0,
        omega0=omega0,
        in_s=converged,
        in_s_tilde=converged & ~limited,
        in_analytic=analytic.contains(theta0, omega0),
        in_unbound=analytic.contains_unbounded(theta0, omega0),
        in_lyapunov=lyapunov.contains(theta0, omega0),
    )
