"""Region-of-attraction tools for a torque-limited, LQR-stabilized pendulum.

Three ways to estimate which start states the controller can bring
upright: a closed-form test built from the linearized loop's torque
trajectory, a sampling-based Lyapunov sublevel set, and Monte-Carlo
simulation as ground truth. An energy-shaping swing-up controller hands
over to the LQR once the state enters the closed-form region.
"""

from .errors import ConfigError, NumericError
from .model import (
    PRESETS,
    PendulumParams,
    dynamics,
    energy_error,
    linearization,
    preset,
    wrap_angle,
)
from .lqr import LqrSolution, lqr_gain, solve_care
from .roa_analytic import (
    AnalyticRegion,
    ModePair,
    TorqueTrajectory,
    closed_loop_spectrum,
    in_linear_region,
    linear_region_margin,
    mode_coefficients,
)
from .integrate import (
    IntegrationConfig,
    Trajectory,
    lqr_controller,
    rk4_step,
    simulate,
    simulate_batch,
)
from .roa_lyapunov import LyapunovRegion, estimate_region, vdot
from .montecarlo import DOMAIN, BatchResult, RegionSample, run_batch, sample_states
from .swingup import SwingupConfig, SwingupResult, run_swingup
from .benchmarks import BenchResult, time_constructions

__version__ = "0.1.0"

__all__ = [
    "AnalyticRegion",
    "BatchResult",
    "BenchResult",
    "ConfigError",
    "DOMAIN",
    "IntegrationConfig",
    "LqrSolution",
    "LyapunovRegion",
    "ModePair",
    "NumericError",
    "PendulumParams",
    "PRESETS",
    "RegionSample",
    "SwingupConfig",
    "SwingupResult",
    "Trajectory",
    "TorqueTrajectory",
    "closed_loop_spectrum",
    "dynamics",
    "energy_error",
    "estimate_region",
    "in_linear_region",
    "linear_region_margin",
    "linearization",
    "lqr_controller",
    "lqr_gain",
    "mode_coefficients",
    "preset",
    "rk4_step",
    "run_batch",
    "run_swingup",
    "sample_states",
    "simulate",
    "simulate_batch",
    "solve_care",
    "time_constructions",
    "vdot",
    "wrap_angle",
]
