"""Figure rendering for the CLI report paths. File output only, no GUI."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .montecarlo import BatchResult
from .roa_lyapunov import LyapunovRegion
from .swingup import SwingupResult


def _ellipse_boundary(region: LyapunovRegion, n=200):
    """Boundary of {x' S x = rho} via the Cholesky factor of S."""
    L = np.linalg.cholesky(region.S)
    ang = np.linspace(0.0, 2.0 * np.pi, n)
    y = np.sqrt(region.rho) * np.vstack([np.cos(ang), np.sin(ang)])
    x = np.linalg.solve(L.T, y)
    return x[0], x[1]


def _scatter(ax, mask, theta, omega, **kw):
    if np.any(mask):
        ax.scatter(theta[mask], omega[mask], **kw)


def region_figure(batch: BatchResult, lyapunov: LyapunovRegion, path, title=None):
    """Sampled membership map with the Lyapunov ellipse overlaid."""
    fig, ax = plt.subplots(figsize=(7.5, 5.5))
    th, om = batch.theta0, batch.omega0
    _scatter(ax, ~batch.in_s, th, om, s=2, color="0.88", label="not attracted")
    _scatter(ax, batch.in_s & ~batch.in_s_tilde, th, om, s=2, color="0.62",
             label="attracted, limit hit")
    _scatter(ax, batch.in_s_tilde, th, om, s=2, color="0.38",
             label="attracted, limit free")
    _scatter(ax, batch.in_analytic, th, om, s=2, color="tab:blue",
             label="closed-form region")
    ex, ey = _ellipse_boundary(lyapunov)
    ax.plot(ex, ey, color="tab:orange", lw=1.8, label="Lyapunov ellipse")
    ax.set_xlabel("theta [rad]")
    ax.set_ylabel("omega [rad/s]")
    if title:
        ax.set_title(title)
    ax.legend(loc="upper right", fontsize=8, markerscale=3)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path


def heuristic_figure(batch: BatchResult, path, title=None):
    """Contrast of the guarded and unguarded closed-form regions.

    States accepted by the unguarded variant but not attracted are the
    false positives the linear-region guard exists to remove.
    """
    fig, ax = plt.subplots(figsize=(7.5, 5.5))
    th, om = batch.theta0, batch.omega0
    _scatter(ax, ~batch.in_s, th, om, s=2, color="0.88", label="not attracted")
    _scatter(ax, batch.in_s, th, om, s=2, color="0.62", label="attracted")
    _scatter(ax, batch.in_unbound, th, om, s=2, color="tab:green",
             label="no guard")
    _scatter(ax, batch.in_analytic, th, om, s=2, color="tab:blue",
             label="with guard")
    _scatter(ax, batch.in_unbound & ~batch.in_s, th, om, s=6, color="tab:red",
             label="false positives")
    ax.set_xlabel("theta [rad]")
    ax.set_ylabel("omega [rad/s]")
    if title:
        ax.set_title(title)
    ax.legend(loc="upper right", fontsize=8, markerscale=3)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path


def _time_series(t, theta, omega, u_applied, u_requested, torque_limit):
    fig, axes = plt.subplots(3, 1, figsize=(7.5, 6.5), sharex=True)
    axes[0].plot(t, theta, color="tab:blue")
    axes[0].axhline(0.0, color="0.8", lw=0.8)
    axes[0].set_ylabel("theta [rad]")
    axes[1].plot(t, omega, color="tab:blue")
    axes[1].axhline(0.0, color="0.8", lw=0.8)
    axes[1].set_ylabel("omega [rad/s]")
    axes[2].plot(t, u_requested, color="0.6", ls="--", lw=1.0, label="requested")
    axes[2].plot(t, u_applied, color="tab:blue", lw=1.2, label="applied")
    if np.isfinite(torque_limit):
        for s in (1.0, -1.0):
            axes[2].axhline(s * torque_limit, color="tab:red", ls=":", lw=0.9)
    axes[2].set_ylabel("torque [Nm]")
    axes[2].set_xlabel("t [s]")
    axes[2].legend(loc="upper right", fontsize=8)
    return fig, axes


def trajectory_figure(traj, torque_limit, path, title=None):
    """Three-row time series of one simulated trajectory."""
    fig, axes = _time_series(traj.t, traj.theta, traj.omega, traj.u_applied,
                             traj.u_requested, torque_limit)
    if title:
        axes[0].set_title(title)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path


def swingup_figure(result: SwingupResult, torque_limit, path, title=None):
    """Swing-up time series with the LQR phase shaded."""
    fig, axes = _time_series(result.t, result.theta, result.omega,
                             result.u_applied, result.u_requested, torque_limit)
    if result.switch_time is not None:
        for ax in axes:
            ax.axvspan(result.switch_time, result.t[-1], color="tab:blue",
                       alpha=0.08)
        axes[0].axvline(result.switch_time, color="tab:blue", lw=0.8, ls=":")
    if title:
        axes[0].set_title(title)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path
