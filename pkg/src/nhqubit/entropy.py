"""Renyi entropy family S_q for qubit states, in nats.

S_q = (1/(1-q)) log(l1^q + l2^q) over the (clamped) eigenvalues, with the
distinguished orders S_0 = log rank, S_1 = Von Neumann, S_inf = -log l_max.
The closed-form Von Neumann entropy in terms of the decoherence function
D(t) covers the equal-population dephasing trajectories exactly.
"""

from __future__ import annotations

import math

import numpy as np

from .dynamics import Trajectory
from .errors import DomainError
from .linalg2 import DensityMatrix

# Eigenvalues above this count toward the rank in S_0.
RANK_TOL = 1e-12


def _xlogx(x: float) -> float:
    return 0.0 if x <= 0.0 else x * math.log(x)


def renyi(rho: DensityMatrix, q: float) -> float:
    """Renyi entropy of order q > 0; q = 1 dispatches to von_neumann."""
    if q <= 0.0:
        raise DomainError(f"Renyi order must be positive, got {q}")
    if q == 1.0:
        return von_neumann(rho)
    if math.isinf(q):
        return renyi_inf(rho)
    lo, hi = rho.eigenvalues()
    total = hi**q + (lo**q if lo > 0.0 else 0.0)
    return max(math.log(total) / (1.0 - q), 0.0)


def renyi0(rho: DensityMatrix) -> float:
    """Max-entropy: log of the number of eigenvalues above RANK_TOL."""
    lo, hi = rho.eigenvalues()
    rank = int(hi > RANK_TOL) + int(lo > RANK_TOL)
    return math.log(rank) if rank > 0 else 0.0


def von_neumann(rho: DensityMatrix) -> float:
    """S_1 = -sum l_i log l_i with 0 log 0 := 0."""
    lo, hi = rho.eigenvalues()
    return max(-_xlogx(lo) - _xlogx(hi), 0.0)


def von_neumann_closed_form(d: float) -> float:
    """Von Neumann entropy of the equal-population state with coherence d/2:

        ln 2 - (1/2)(1 + d) ln(1 + d) - (1/2)(1 - d) ln(1 - d)
    """
    if not 0.0 <= d <= 1.0:
        raise DomainError(f"decoherence value must be in [0, 1], got {d}")
    return max(
        math.log(2.0) - 0.5 * _xlogx(1.0 + d) - 0.5 * _xlogx(1.0 - d), 0.0
    )


def renyi_inf(rho: DensityMatrix) -> float:
    """Min-entropy: -log of the largest eigenvalue."""
    _, hi = rho.eigenvalues()
    return max(-math.log(hi), 0.0)


def entropy_series(traj: Trajectory, orders,
                   dephasing: bool = True) -> dict[float, np.ndarray]:
    """Evaluate each requested order along the trajectory.

    Keys are the orders as given (math.inf allowed); values are per-time
    arrays in nats.  By default the entropies are taken on the dephasing-
    frame states, whose spectrum is governed by D(t); pass dephasing=False
    for the physical-frame states (they differ only for the PT class).
    """
    states = traj.dephasing_states() if dephasing else traj.states
    out: dict[float, np.ndarray] = {}
    for q in orders:
        if q == 0:
            vals = [renyi0(s) for s in states]
        elif q == 1:
            vals = [von_neumann(s) for s in states]
        elif math.isinf(q):
            vals = [renyi_inf(s) for s in states]
        else:
            vals = [renyi(s, q) for s in states]
        out[q] = np.asarray(vals)
    return out
