"""Construction-time comparison of the two region estimators.

Both routes start from nothing but the parameters: the closed-form side
re-solves the Riccati problem and the spectrum every repeat, the sampling
side redoes its full sample sweep. Monotonic clock, one discarded warm-up
per side, medians reported.
"""

from __future__ import annotations

import statistics
import time
from dataclasses import dataclass

from .integrate import IntegrationConfig
from .model import PendulumParams
from .roa_analytic import AnalyticRegion
from .roa_lyapunov import estimate_region


@dataclass(frozen=True)
class BenchResult:
    analytic_s: float
    lyapunov_s: float
    ratio: float
    analytic_times: tuple
    lyapunov_times: tuple
    lyap_samples: int
    repeats: int

    def to_dict(self) -> dict:
        return {
            "analytic_s": self.analytic_s,
            "lyapunov_s": self.lyapunov_s,
            "ratio": self.ratio,
            "analytic_times": list(self.analytic_times),
            "lyapunov_times": list(self.lyapunov_times),
            "lyap_samples": self.lyap_samples,
            "repeats": self.repeats,
        }


def time_constructions(params: PendulumParams, torque_limit, lyap_samples=500,
                       repeats=10, seed=0,
                       config: IntegrationConfig | None = None) -> BenchResult:
    """Median wall time to construct each estimator from scratch."""
    if repeats < 1:
        raise ValueError("repeats must be at least 1")
    if config is None:
        config = IntegrationConfig()

    AnalyticRegion.build(params, torque_limit)  # warm-up, discarded
    analytic_times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        AnalyticRegion.build(params, torque_limit)
        analytic_times.append(time.perf_counter() - t0)

    estimate_region(params, torque_limit, sample_count=lyap_samples, seed=seed,
                    config=config)  # warm-up, discarded
    lyapunov_times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        estimate_region(params, torque_limit, sample_count=lyap_samples,
                        seed=seed, config=config)
        lyapunov_times.append(time.perf_counter() - t0)

    analytic_s = statistics.median(analytic_times)
    lyapunov_s = statistics.median(lyapunov_times)
    return BenchResult(
        analytic_s=analytic_s,
        lyapunov_s=lyapunov_s,
        ratio=lyapunov_s / analytic_s,
        analytic_times=tuple(analytic_times),
        lyapunov_times=tuple(lyapunov_times),
        lyap_samples=lyap_samples,
        repeats=repeats,
    )
