"""Command-line interface.

Subcommands:
  roa        sample start states, classify them against every region
             estimate, write the per-sample table, summary, and figure
  heuristic  same sampling, contrasting the closed-form region with the
             variant that skips the linear-region guard
  bench      construction-time comparison of the two estimators
  simulate   one torque-limited LQR trajectory from a start state
  swingup    energy-shaping swing-up run with LQR handover

Each subcommand writes its artifacts into --out-dir together with a
manifest (<command>_manifest.json) recording the resolved configuration,
seeds, and file list. CSV and summary JSON files are deterministic for a
given configuration and seed; wall-clock timings live only in manifests
and in the bench output, whose job is to be a timing report.

Exit codes: 0 success, 2 configuration error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .benchmarks import time_constructions
from .errors import ConfigError, NumericError
from .integrate import IntegrationConfig, lqr_controller, simulate
from .lqr import lqr_gain
from .model import PRESETS, PendulumParams, preset, wrap_angle
from .montecarlo import DOMAIN, run_batch
from .roa_analytic import AnalyticRegion
from .roa_lyapunov import estimate_region
from .swingup import SwingupConfig, run_swingup
from . import plots

CONFIG_KEYS = ("mass", "length", "gravity", "damping", "torque_limit_fraction")

# the sampling estimator's stream is offset from the batch stream so the
# two never overlap for the same user seed
LYAP_SEED_OFFSET = 1000


def load_config_file(path):
    """Parse a key = value file; '#' starts a comment.

    Only the physical keys are allowed: mass, length, gravity, damping,
    torque_limit_fraction.
    """
    values = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, _, val = line.partition("=")
        key = key.strip()
        if key not in CONFIG_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            values[key] = float(val.strip())
        except ValueError:
            raise ConfigError(
                f"{path}:{lineno}: value for {key} is not a number"
            ) from None
    return values


def add_common_arguments(p: argparse.ArgumentParser):
    g = p.add_argument_group("model")
    g.add_argument("--preset", choices=sorted(PRESETS), default="normal",
                   help="built-in parameter set (default: %(default)s)")
    g.add_argument("--config", metavar="FILE",
                   help="key = value file overriding the preset; flags win over the file")
    g.add_argument("--mass", type=float, help="pendulum mass [kg]")
    g.add_argument("--length", type=float, help="rod length [m]")
    g.add_argument("--gravity", type=float, help="gravity [m/s^2]")
    g.add_argument("--damping", type=float, help="viscous damping [Nms]")
    g.add_argument("--limit", type=float, dest="limit",
                   help="torque limit as a fraction of m g l (default: 0.5)")
    c = p.add_argument_group("controller")
    c.add_argument("--q0", type=float, help="state weight on theta (default: 1)")
    c.add_argument("--q1", type=float, help="state weight on omega (default: 1)")
    c.add_argument("--r", type=float, help="torque weight (default: 1)")
    r = p.add_argument_group("run")
    r.add_argument("--trials", type=int, default=20000,
                   help="sample batch size (default: %(default)s)")
    r.add_argument("--seed", type=int, default=0,
                   help="random seed (default: %(default)s)")
    r.add_argument("--out-dir", default="out",
                   help="output directory (default: %(default)s)")
    r.add_argument("--dt", type=float, help="integration step [s] (default: 0.1)")
    r.add_argument("--t-final", type=float,
                   help="integration horizon [s] (default: 10, swingup 20)")
    r.add_argument("--lyap-samples", type=int, default=500,
                   help="samples for the Lyapunov estimate (default: %(default)s)")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="pendroa",
        description="Region-of-attraction estimation for a torque-limited LQR pendulum",
    )
    p.add_argument("--version", action="version", version=f"pendroa {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("roa", help="sample and classify the state domain")
    add_common_arguments(s)
    s.set_defaults(func=cmd_roa)

    s = sub.add_parser("heuristic",
                       help="show what the linear-region guard removes")
    add_common_arguments(s)
    s.set_defaults(func=cmd_heuristic)

    s = sub.add_parser("bench", help="construction-time comparison")
    add_common_arguments(s)
    s.add_argument("--reps", type=int, default=10,
                   help="timing repetitions per estimator (default: %(default)s)")
    s.set_defaults(func=cmd_bench)

    s = sub.add_parser("simulate", help="one saturated LQR trajectory")
    add_common_arguments(s)
    s.add_argument("--theta0", type=float, required=True, help="start angle [rad]")
    s.add_argument("--omega0", type=float, required=True, help="start rate [rad/s]")
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("swingup", help="energy-shaping swing-up run")
    add_common_arguments(s)
    s.add_argument("--theta0", type=float, default=math.pi, help="start angle [rad]")
    s.add_argument("--omega0", type=float, default=0.0, help="start rate [rad/s]")
    s.add_argument("--pump-gain", type=float, default=SwingupConfig.pump_gain,
                   help="energy pumping gain c (default: %(default)s)")
    s.set_defaults(func=cmd_swingup)
    return p


def resolve_setup(args):
    """Merge preset, config file, and flags into validated run settings."""
    base = preset(args.preset)
    file_vals = load_config_file(args.config) if args.config else {}

    def pick(flag_value, key, fallback):
        if flag_value is not None:
            return flag_value
        return file_vals.get(key, fallback)

    params = PendulumParams(
        mass=pick(args.mass, "mass", base.mass),
        length=pick(args.length, "length", base.length),
        gravity=pick(args.gravity, "gravity", base.gravity),
        damping=pick(args.damping, "damping", base.damping),
    )
    fraction = pick(args.limit, "torque_limit_fraction", 0.5)
    if not fraction > 0.0:
        raise ConfigError("torque limit fraction must be positive")
    q0 = args.q0 if args.q0 is not None else 1.0
    q1 = args.q1 if args.q1 is not None else 1.0
    r = args.r if args.r is not None else 1.0
    if q0 < 0.0 or q1 < 0.0:
        raise ConfigError("state weights must be non-negative")
    if not r > 0.0:
        raise ConfigError("torque weight must be positive")
    if args.trials < 1:
        raise ConfigError("trials must be at least 1")
    if args.lyap_samples < 1:
        raise ConfigError("lyap-samples must be at least 1")
    if args.seed < 0:
        raise ConfigError("seed must be non-negative")
    return params, float(fraction), np.diag([q0, q1]), np.array([[r]])


def resolve_integration(args, default_t_final=10.0) -> IntegrationConfig:
    dt = args.dt if args.dt is not None else 0.1
    t_final = args.t_final if args.t_final is not None else default_t_final
    if not dt > 0.0:
        raise ConfigError("dt must be positive")
    if t_final < dt:
        raise ConfigError("t-final must be at least one step")
    return IntegrationConfig(dt=dt, t_final=t_final)


def config_echo(args, params, fraction, Q, R, integ: IntegrationConfig) -> dict:
    return {
        "preset": args.preset,
        "mass": params.mass,
        "length": params.length,
        "gravity": params.gravity,
        "damping": params.damping,
        "torque_limit_fraction": fraction,
        "torque_limit": fraction * params.gravity_torque,
        "q0": float(Q[0, 0]),
        "q1": float(Q[1, 1]),
        "r": float(R[0, 0]),
        "dt": integ.dt,
        "t_final": integ.t_final,
        "trials": args.trials,
        "lyap_samples": args.lyap_samples,
    }


def _fmt(x) -> str:
    return format(float(x), ".17g")


def write_samples_csv(path, batch):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["theta0", "omega0", "in_s", "in_s_tilde", "in_analytic",
                    "in_unbound", "in_lyapunov"])
        for i in range(len(batch)):
            w.writerow([
                _fmt(batch.theta0[i]), _fmt(batch.omega0[i]),
                int(batch.in_s[i]), int(batch.in_s_tilde[i]),
                int(batch.in_analytic[i]), int(batch.in_unbound[i]),
                int(batch.in_lyapunov[i]),
            ])


def write_trajectory_csv(path, traj, extra_cols=None):
    header = ["t", "theta", "omega", "u_applied", "u_requested"]
    extras = extra_cols or {}
    header += list(extras)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for i in range(traj.t.size):
            row = [_fmt(traj.t[i]), _fmt(traj.theta[i]), _fmt(traj.omega[i]),
                   _fmt(traj.u_applied[i]), _fmt(traj.u_requested[i])]
            row += [int(col[i]) for col in extras.values()]
            w.writerow(row)


def write_json(path, payload):
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def write_manifest(out_dir: Path, command, config, seeds, artifacts, timings):
    payload = {
        "command": command,
        "tool": {"name": "pendroa", "version": __version__},
        "config": config,
        "seeds": seeds,
        "artifacts": sorted(artifacts),
        "timings_s": timings,
    }
    write_json(out_dir / f"{command}_manifest.json", payload)


def _prepare_out_dir(args) -> Path:
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _build_all(params, torque_limit, Q, R, args, integ):
    """LQR, closed-form region, Lyapunov region, sampled batch, with timings."""
    timings = {}
    t0 = time.perf_counter()
    sol = lqr_gain(params, Q, R)
    analytic = AnalyticRegion.build(params, torque_limit, sol)
    timings["analytic_build"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    lyap = estimate_region(params, torque_limit, sol,
                           sample_count=args.lyap_samples,
                           seed=args.seed + LYAP_SEED_OFFSET)
    timings["lyapunov_build"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    batch = run_batch(params, torque_limit, analytic, lyap,
                      count=args.trials, seed=args.seed, config=integ)
    timings["batch"] = time.perf_counter() - t0
    return sol, analytic, lyap, batch, timings


def cmd_roa(args) -> int:
    params, fraction, Q, R = resolve_setup(args)
    integ = resolve_integration(args)
    out = _prepare_out_dir(args)
    torque_limit = fraction * params.gravity_torque
    _, _, lyap, batch, timings = _build_all(params, torque_limit, Q, R, args, integ)

    write_samples_csv(out / "roa_samples.csv", batch)
    summary = {
        "domain": {"theta": DOMAIN[0], "omega": DOMAIN[1]},
        "trials": args.trials,
        "counts": batch.counts,
        "relative_area_analytic_vs_lyapunov": batch.relative_area,
        "lyapunov": {"rho": lyap.rho, "ellipse_area": lyap.area},
        "config": config_echo(args, params, fraction, Q, R, integ),
    }
    write_json(out / "roa_summary.json", summary)
    plots.region_figure(batch, lyap, out / "roa_regions.png",
                        title=f"{args.preset}, limit {fraction:g} mgl")
    write_manifest(out, "roa", summary["config"],
                   {"root": args.seed, "samples": args.seed,
                    "lyapunov": args.seed + LYAP_SEED_OFFSET},
                   ["roa_samples.csv", "roa_summary.json", "roa_regions.png"],
                   timings)
    c = batch.counts
    print(f"trials={args.trials} attracted={c['in_s']} limit_free={c['in_s_tilde']} "
          f"closed_form={c['in_analytic']} lyapunov={c['in_lyapunov']}")
    print(f"relative area (closed form / Lyapunov): {batch.relative_area:.3f}")
    print(f"wrote {out}/roa_samples.csv, roa_summary.json, roa_regions.png")
    return 0


def cmd_heuristic(args) -> int:
    params, fraction, Q, R = resolve_setup(args)
    integ = resolve_integration(args)
    out = _prepare_out_dir(args)
    torque_limit = fraction * params.gravity_torque
    _, _, lyap, batch, timings = _build_all(params, torque_limit, Q, R, args, integ)

    fp_unbound = int(np.sum(batch.in_unbound & ~batch.in_s))
    fp_analytic = int(np.sum(batch.in_analytic & ~batch.in_s))
    write_samples_csv(out / "heuristic_samples.csv", batch)
    summary = {
        "trials": args.trials,
        "counts": batch.counts,
        "false_positives_unbound": fp_unbound,
        "false_positives_analytic": fp_analytic,
        "config": config_echo(args, params, fraction, Q, R, integ),
    }
    write_json(out / "heuristic_summary.json", summary)
    plots.heuristic_figure(batch, out / "heuristic_regions.png",
                           title=f"{args.preset}, limit {fraction:g} mgl")
    write_manifest(out, "heuristic", summary["config"],
                   {"root": args.seed, "samples": args.seed,
                    "lyapunov": args.seed + LYAP_SEED_OFFSET},
                   ["heuristic_samples.csv", "heuristic_summary.json",
                    "heuristic_regions.png"],
                   timings)
    print(f"false positives without the guard: {fp_unbound}  with: {fp_analytic}")
    print(f"wrote {out}/heuristic_samples.csv, heuristic_summary.json, "
          f"heuristic_regions.png")
    return 0


def cmd_bench(args) -> int:
    params, fraction, Q, R = resolve_setup(args)
    integ = resolve_integration(args)
    out = _prepare_out_dir(args)
    if args.reps < 1:
        raise ConfigError("reps must be at least 1")
    torque_limit = fraction * params.gravity_torque
    # surface Riccati problems before timing anything
    sol = lqr_gain(params, Q, R)
    AnalyticRegion.build(params, torque_limit, sol)
    t0 = time.perf_counter()
    result = time_constructions(params, torque_limit,
                                lyap_samples=args.lyap_samples,
                                repeats=args.reps, seed=args.seed, config=integ)
    total = time.perf_counter() - t0
    payload = result.to_dict()
    payload["config"] = config_echo(args, params, fraction, Q, R, integ)
    write_json(out / "bench.json", payload)
    write_manifest(out, "bench", payload["config"],
                   {"root": args.seed, "lyapunov": args.seed},
                   ["bench.json"], {"total": total})
    print(f"analytic construction: {result.analytic_s * 1e6:.0f} us (median of {args.reps})")
    print(f"Lyapunov construction: {result.lyapunov_s:.3f} s "
          f"({args.lyap_samples} samples)")
    print(f"ratio: {result.ratio:.0f}x")
    print(f"wrote {out}/bench.json")
    return 0


def cmd_simulate(args) -> int:
    params, fraction, Q, R = resolve_setup(args)
    integ = resolve_integration(args)
    out = _prepare_out_dir(args)
    torque_limit = fraction * params.gravity_torque
    t0 = time.perf_counter()
    sol = lqr_gain(params, Q, R)
    traj = simulate(params, lqr_controller(sol.K), (args.theta0, args.omega0),
                    torque_limit, integ)
    elapsed = time.perf_counter() - t0
    write_trajectory_csv(out / "trajectory.csv", traj)
    summary = {
        "x0": [args.theta0, args.omega0],
        "final_state": list(traj.final_state),
        "converged": traj.converged,
        "limited": traj.limited,
        "config": config_echo(args, params, fraction, Q, R, integ),
    }
    write_json(out / "simulate_summary.json", summary)
    plots.trajectory_figure(traj, torque_limit, out / "trajectory.png",
                            title=f"x0 = ({args.theta0:g}, {args.omega0:g})")
    write_manifest(out, "simulate", summary["config"], {"root": args.seed},
                   ["trajectory.csv", "simulate_summary.json", "trajectory.png"],
                   {"run": elapsed})
    print(f"converged={traj.converged} limited={traj.limited} "
          f"final=({traj.final_state[0]:.3e}, {traj.final_state[1]:.3e})")
    print(f"wrote {out}/trajectory.csv, simulate_summary.json, trajectory.png")
    return 0


def cmd_swingup(args) -> int:
    params, fraction, Q, R = resolve_setup(args)
    integ = resolve_integration(args, default_t_final=20.0)
    out = _prepare_out_dir(args)
    torque_limit = fraction * params.gravity_torque
    t0 = time.perf_counter()
    sol = lqr_gain(params, Q, R)
    result = run_swingup(params, torque_limit, (args.theta0, args.omega0),
                         lqr_solution=sol,
                         config=SwingupConfig(pump_gain=args.pump_gain),
                         integration=integ)
    elapsed = time.perf_counter() - t0
    write_trajectory_csv(out / "swingup_trajectory.csv", result,
                         extra_cols={"lqr_active": result.lqr_active})
    summary = {
        "x0": [args.theta0, args.omega0],
        "pump_gain": args.pump_gain,
        "switch_time": result.switch_time,
        "switch_state": list(result.switch_state) if result.switch_state else None,
        "converged": result.converged,
        "limited_after_switch": result.limited_after_switch,
        "final_state_wrapped": [float(wrap_angle(result.theta[-1])),
                                float(result.omega[-1])],
        "config": config_echo(args, params, fraction, Q, R, integ),
    }
    write_json(out / "swingup_summary.json", summary)
    plots.swingup_figure(result, torque_limit, out / "swingup.png",
                         title=f"{args.preset}, c = {args.pump_gain:g}")
    write_manifest(out, "swingup", summary["config"], {"root": args.seed},
                   ["swingup_trajectory.csv", "swingup_summary.json",
                    "swingup.png"],
                   {"run": elapsed})
    if result.switched:
        print(f"switched to LQR at t={result.switch_time:.2f} s, state "
              f"({result.switch_state[0]:.4f}, {result.switch_state[1]:.4f})")
    else:
        print("never reached the closed-form region")
    print(f"converged={result.converged} limited_after_switch="
          f"{result.limited_after_switch}")
    print(f"wrote {out}/swingup_trajectory.csv, swingup_summary.json, swingup.png")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except NumericError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3


def entry():
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
