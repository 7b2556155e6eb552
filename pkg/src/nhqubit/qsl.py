"""Bures angle, Liouvillian operator norm and quantum speed limits.

V_QSL(t) = |L(rho(t))|_op / (2 sin A cos A) with A the Bures angle between
rho(0) and rho(t); tau_QSL(tau) = sin^2 A(tau) / time-average of |L|_op.
V_QSL is genuinely singular at A in {0, pi/2}; those points are reported
as errors (or NaN in series form), never clamped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import Trajectory
from .errors import (
    AngleSingularity,
    DegenerateTrajectory,
    GridTooCoarse,
)
from .linalg2 import DensityMatrix, fidelity, opnorm

ANGLE_TOL = 1e-9


@dataclass
class QslSeries:
    times: np.ndarray
    bures_angle: np.ndarray
    liouvillian_norm: np.ndarray
    v_qsl: np.ndarray  # NaN where the angle is singular
    tau_qsl: float


def bures_angle(rho0: DensityMatrix, rhot: DensityMatrix) -> float:
    """arccos sqrt(fidelity), clamped to [0, pi/2]."""
    if rho0 == rhot:
        return 0.0
    root = math.sqrt(fidelity(rho0, rhot))
    return math.acos(min(max(root, 0.0), 1.0))


def _three_point_weights(t: np.ndarray, at: float) -> np.ndarray:
    """Derivative of the Lagrange interpolant through 3 nodes, at `at`."""
    t0, t1, t2 = t
    return np.array([
        (2 * at - t1 - t2) / ((t0 - t1) * (t0 - t2)),
        (2 * at - t0 - t2) / ((t1 - t0) * (t1 - t2)),
        (2 * at - t0 - t1) / ((t2 - t0) * (t2 - t1)),
    ])


def liouvillian_norm(traj: Trajectory, index: int,
                     force_numeric: bool = False) -> float:
    """|d rho/dt|_op at grid point `index`.

    Uses the differentiated closed form when the trajectory carries it
    (Anti-PT); otherwise a second-order finite-difference stencil on the
    grid (central in the interior, one-sided at the endpoints).
    """
    n = len(traj)
    if not 0 <= index < n:
        raise IndexError(f"index {index} outside grid of length {n}")
    if traj.lnorm_analytic is not None and not force_numeric:
        return float(traj.lnorm_analytic[index])
    if n < 3:
        raise GridTooCoarse("second-order stencil needs at least 3 grid points")
    lo = min(max(index - 1, 0), n - 3)
    ts = traj.times[lo:lo + 3]
    w = _three_point_weights(ts, traj.times[index])
    drho = sum(wk * traj.states[lo + k].matrix for k, wk in enumerate(w))
    return opnorm(drho)


def v_qsl(traj: Trajectory, index: int) -> float:
    """Speed-limit velocity at a grid point; singular at angle 0 or pi/2."""
    angle = bures_angle(traj.states[0], traj.states[index])
    if angle < ANGLE_TOL or angle > 0.5 * math.pi - ANGLE_TOL:
        raise AngleSingularity(
            f"Bures angle {angle:.3e} at t={traj.times[index]} makes "
            "V_QSL undefined"
        )
    return liouvillian_norm(traj, index) / math.sin(2.0 * angle)


def _horizon_index(traj: Trajectory, horizon: float) -> int:
    idx = int(np.argmin(np.abs(traj.times - horizon)))
    if not math.isclose(traj.times[idx], horizon, rel_tol=1e-12, abs_tol=1e-12):
        raise ValueError(f"horizon {horizon} is not a grid point")
    return idx


def tau_qsl(traj: Trajectory, horizon: float) -> float:
    """Speed-limit time over [0, horizon]; horizon must be a grid point."""
    idx = _horizon_index(traj, horizon)
    if idx == 0:
        raise ValueError("horizon must be positive")
    norms = np.array([liouvillian_norm(traj, i) for i in range(idx + 1)])
    avg = np.trapezoid(norms, traj.times[:idx + 1]) / traj.times[idx]
    if avg < 1e-15:
        raise DegenerateTrajectory(
            f"trajectory shows no motion on [0, {horizon}]"
        )
    angle = bures_angle(traj.states[0], traj.states[idx])
    return math.sin(angle) ** 2 / avg


def qsl_series(traj: Trajectory, horizon: float | None = None) -> QslSeries:
    """Per-time angle/norm/velocity plus tau_QSL at `horizon` (grid end by
    default).  Velocity is NaN wherever the angle singularity applies."""
    n = len(traj)
    angles = np.array(
        [bures_angle(traj.states[0], s) for s in traj.states]
    )
    norms = np.array([liouvillian_norm(traj, i) for i in range(n)])
    vel = np.full(n, np.nan)
    for i in range(n):
        try:
            vel[i] = v_qsl(traj, i)
        except AngleSingularity:
            pass
    tau = tau_qsl(traj, traj.times[-1] if horizon is None else horizon)
    return QslSeries(
        times=traj.times,
        bures_angle=angles,
        liouvillian_norm=norms,
        v_qsl=vel,
        tau_qsl=tau,
    )
