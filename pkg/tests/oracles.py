"""Independent brute-force reference implementations for the test suite.

Nothing here shares code with the package internals: the quadrature oracle
is a fixed-panel composite Gauss-Legendre rule with Richardson-style panel
doubling, the eigensolver goes through the characteristic polynomial via
numpy.roots, fidelity takes the eigendecomposition square-root route, and
the operator norm comes from power iteration on m^dagger m.  Every frozen
reference value in the tests was produced by these functions.
"""

from __future__ import annotations

import math

import numpy as np

# ---------------------------------------------------------------------------
# quadrature oracle

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(3)


def _spectral_density(w, j0, omega_c, mu):
    return j0 * omega_c * (w / omega_c) ** (1.0 + mu) * np.exp(-w / omega_c)


def _one_minus_cos(u):
    # 1 - cos u without cancellation at small u.
    return 2.0 * np.sin(0.5 * u) ** 2


def _ramp(u):
    # u - sin u; series below 1e-3 where direct subtraction cancels.
    direct = u - np.sin(u)
    series = u**3 / 6.0 * (1.0 - u**2 / 20.0 * (1.0 - u**2 / 42.0))
    return np.where(u < 1e-3, series, direct)


def _kernel(kind, w, t, beta):
    """Integrand divided by J(omega).  kind: 'gamma', 'phase_ramp',
    'phase_bounded', 'gamma_t0' (coth replaced by 1)."""
    if kind == "gamma":
        return 4.0 * _one_minus_cos(w * t) / w**2 / np.tanh(0.5 * beta * w)
    if kind == "gamma_t0":
        return 4.0 * _one_minus_cos(w * t) / w**2
    if kind == "phase_ramp":
        return 4.0 * _ramp(w * t) / w**2
    if kind == "phase_bounded":
        return 4.0 * _one_minus_cos(w * t) / w**2
    raise ValueError(kind)


def _composite_gl(kind, t, j0, omega_c, mu, beta, n_panels, w_max):
    # Integrate in x = sqrt(omega): d omega = 2x dx turns the omega^mu
    # spectral edge into x^(2 mu + 1), regular for mu >= -1/2, so the
    # fixed-panel rule converges at full order.
    edges = np.linspace(0.0, math.sqrt(w_max), n_panels + 1)
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    total = 0.0
    chunk = 200_000
    for lo in range(0, n_panels, chunk):
        h = half[lo:lo + chunk, None]
        x = mid[lo:lo + chunk, None] + h * _GL_NODES[None, :]
        w = x**2
        vals = (2.0 * x * _spectral_density(w, j0, omega_c, mu)
                * _kernel(kind, w, t, beta))
        total += float(np.sum(h * vals * _GL_WEIGHTS[None, :]))
    return total


def brute_bath_integral(kind, t, j0=1.0, omega_c=1.0, mu=-0.5, beta=0.5,
                        n_panels=1_000_000):
    """(value, error_bound) via panel doubling: the returned value uses
    n_panels, the error bound is its distance to the half-resolution run."""
    w_max = 50.0 * omega_c
    coarse = _composite_gl(kind, t, j0, omega_c, mu, beta, n_panels // 2, w_max)
    fine = _composite_gl(kind, t, j0, omega_c, mu, beta, n_panels, w_max)
    return fine, abs(fine - coarse)


def brute_gamma(t, j0=1.0, omega_c=1.0, mu=-0.5, beta=0.5, **kw):
    return brute_bath_integral("gamma", t, j0, omega_c, mu, beta, **kw)


def brute_omega_pt(t, theta, j0=1.0, omega_c=1.0, mu=-0.5, beta=0.5, **kw):
    v, e = brute_bath_integral("phase_ramp", t, j0, omega_c, mu, beta, **kw)
    return theta * v, abs(theta) * e


def brute_omega1(t, theta, j0=1.0, omega_c=1.0, mu=-0.5, beta=0.5, **kw):
    v, e = brute_bath_integral("phase_bounded", t, j0, omega_c, mu, beta, **kw)
    return theta * v, abs(theta) * e


# ---------------------------------------------------------------------------
# linear-algebra oracles

def brute_eig(m):
    """Eigenvalues via the characteristic polynomial and numpy.roots,
    eigenvectors via the smallest singular vector of (m - lam I)."""
    m = np.asarray(m, dtype=complex)
    tr = m[0, 0] + m[1, 1]
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    lams = np.roots([1.0, -tr, det])
    vecs = []
    for lam in lams:
        _, _, vh = np.linalg.svd(m - lam * np.eye(2))
        vecs.append(vh[-1].conj())
    return lams, vecs


def brute_fidelity(rho, sigma):
    """Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2 via
    Hermitian eigendecompositions."""
    def psd_sqrt(a):
        lam, u = np.linalg.eigh(a)
        lam = np.clip(lam, 0.0, None)
        return (u * np.sqrt(lam)) @ u.conj().T

    root = psd_sqrt(np.asarray(rho, dtype=complex))
    inner = root @ np.asarray(sigma, dtype=complex) @ root
    lam = np.clip(np.linalg.eigvalsh(inner), 0.0, None)
    return float(np.sum(np.sqrt(lam)) ** 2)


def brute_opnorm(m, iters=500, seed=7):
    """Largest singular value by power iteration on m^dagger m."""
    m = np.asarray(m, dtype=complex)
    a = m.conj().T @ m
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    v /= np.linalg.norm(v)
    for _ in range(iters):
        w = a @ v
        nw = np.linalg.norm(w)
        if nw == 0.0:
            return 0.0
        v = w / nw
    return float(math.sqrt(np.real(np.vdot(v, a @ v))))


# ---------------------------------------------------------------------------
# time-integral oracle

def brute_time_average(f, t_end, tol=1e-8, n0=64, max_doublings=20):
    """(1/t_end) * integral of f on [0, t_end] by trapezoid refinement
    until the change between successive grids is below tol."""
    n = n0
    ts = np.linspace(0.0, t_end, n + 1)
    prev = np.trapezoid([f(t) for t in ts], ts) / t_end
    for _ in range(max_doublings):
        n *= 2
        ts = np.linspace(0.0, t_end, n + 1)
        cur = np.trapezoid([f(t) for t in ts], ts) / t_end
        if abs(cur - prev) < tol:
            return cur
        prev = cur
    raise RuntimeError("time-average oracle did not converge")
