"""Infinite-horizon LQR for the linearized pendulum.

The Riccati equation is solved from the stable invariant subspace of the
Hamiltonian matrix rather than through a library call. Controller
construction sits in the timed path of the estimator comparison, so it has
to stay in the tens of microseconds; the validation checks below are plain
2x2 arithmetic for the same reason. Correctness is cross-checked against
an independent solver in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericError
from .model import PendulumParams, linearization


def solve_care(A, B, Q, R):
    """Stabilizing solution S of A'S + SA - S B R^-1 B' S + Q = 0.

    Eigenvectors of H = [[A, -B R^-1 B'], [-Q, -A']] belonging to its
    stable eigenvalues span the graph of S. Raises NumericError when the
    stable subspace does not have the right dimension or is singular in
    the state block.
    """
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    Q = np.asarray(Q, dtype=float)
    R = np.asarray(R, dtype=float)
    n = A.shape[0]
    BRB = B @ np.linalg.solve(R, B.T)
    H = np.empty((2 * n, 2 * n))
    H[:n, :n] = A
    H[:n, n:] = -BRB
    H[n:, :n] = -Q
    H[n:, n:] = -A.T
    evals, evecs = np.linalg.eig(H)
    stable = evals.real < 0.0
    if int(stable.sum()) != n:
        raise NumericError("Hamiltonian has no stable subspace of full state dimension")
    V = evecs[:, stable]
    X = V[:n, :]
    Y = V[n:, :]
    try:
        S = Y @ np.linalg.inv(X)
    except np.linalg.LinAlgError:
        raise NumericError("stable subspace is singular in the state block") from None
    S = S.real
    return 0.5 * (S + S.T)


@dataclass(frozen=True, eq=False)
class LqrSolution:
    """Gain and Riccati solution for u = -K x.

    S doubles as the Lyapunov weight used by the sampling estimator.
    """

    K: np.ndarray
    S: np.ndarray
    A: np.ndarray
    B: np.ndarray
    Q: np.ndarray
    R: np.ndarray


def lqr_gain(params: PendulumParams, Q=None, R=None) -> LqrSolution:
    """Solve the pendulum LQR problem, defaults Q = diag(1, 1), R = 1.

    Validates that S is symmetric positive definite with a small Riccati
    residual and that the closed loop is stable; any failure raises
    NumericError.
    """
    if Q is None:
        Q = np.diag([1.0, 1.0])
    if R is None:
        R = np.array([[1.0]])
    Q = np.atleast_2d(np.asarray(Q, dtype=float))
    R = np.atleast_2d(np.asarray(R, dtype=float))
    A, B = linearization(params)
    S = solve_care(A, B, Q, R)
    s00, s01, s11 = S[0, 0], S[0, 1], S[1, 1]
    if not np.all(np.isfinite(S)):
        raise NumericError("Riccati solution is not finite")
    # positive definiteness of a symmetric 2x2, no eigensolver needed
    det_s = s00 * s11 - s01 * s01
    if not (s00 > 0.0 and det_s > 0.0):
        raise NumericError("Riccati solution is not positive definite")
    resid = A.T @ S + S @ A - S @ B @ np.linalg.solve(R, B.T) @ S + Q
    if np.abs(resid).max() > 1e-6 * max(np.abs(S).max(), 1.0):
        raise NumericError("Riccati residual too large")
    K = np.linalg.solve(R, B.T @ S).ravel()
    # closed-loop stability for the 2x2 loop: trace < 0 and det > 0
    Acl = A - B @ K[None, :]
    if not (Acl[0, 0] + Acl[1, 1] < 0.0 and np.linalg.det(Acl) > 0.0):
        raise NumericError("closed loop is not asymptotically stable")
    return LqrSolution(K=K, S=S, A=A, B=B, Q=Q, R=R)
