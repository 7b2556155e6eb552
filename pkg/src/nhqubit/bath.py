"""Bath spectral density and the semi-infinite dephasing integrals.

The spectral density is an Ohmic family with exponential cutoff,

    J(w) = J0 * omega_c * (w/omega_c)^(1+mu) * exp(-w/omega_c),

so mu = 0 is Ohmic and mu = -0.5 sub-Ohmic.  The four kernels evaluated
here are

    gamma(t)       = 4 int_0^inf dw J(w) (1 - cos wt)/w^2 coth(beta w/2)
    omega_pt(t)    = 4 theta int_0^inf dw J(w) (wt - sin wt)/w^2
    omega1(t)      = 4 theta int_0^inf dw J(w) (1 - cos wt)/w^2
    omega2(t)      = 2 theta t^2 int_0^inf dw J(w)

plus the time derivatives of gamma and omega1 needed for analytic
Liouvillian norms.  All semi-infinite integrals use adaptive panel
subdivision with an embedded Gauss error estimate, an analytic series for
the w -> 0 endpoint (the integrands behave like w^mu there) and an
analytic bound on the exponentially small tail.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaincc

from ._backend import kernels
from .errors import DomainError, QuadratureDivergence

DEFAULT_TOL = 1e-9
EVAL_BUDGET = 200_000

# Endpoint of the analytic small-w series, in units of omega_c.
_HEAD_FRACTION = 1e-6

_NODES_HI, _WTS_HI = np.polynomial.legendre.leggauss(15)
_NODES_LO, _WTS_LO = np.polynomial.legendre.leggauss(7)
_EVALS_PER_PANEL = len(_NODES_HI) + len(_NODES_LO)

KIND_GAMMA = kernels.KIND_GAMMA
KIND_PHASE_RAMP = kernels.KIND_PHASE_RAMP
KIND_PHASE_BOUNDED = kernels.KIND_PHASE_BOUNDED
KIND_DGAMMA = kernels.KIND_DGAMMA
KIND_DPHASE_BOUNDED = kernels.KIND_DPHASE_BOUNDED


@dataclass(frozen=True)
class BathParams:
    """Spectral density and temperature parameters.

    j0: coupling amplitude, omega_c: cutoff frequency, mu: spectral
    exponent (> -1 or the gamma integrand diverges at w -> 0), beta:
    inverse temperature.
    """

    j0: float
    omega_c: float
    mu: float
    beta: float

    def __post_init__(self):
        if not (self.j0 > 0):
            raise DomainError(f"j0 must be positive, got {self.j0}")
        if not (self.omega_c > 0):
            raise DomainError(f"omega_c must be positive, got {self.omega_c}")
        if not (self.beta > 0):
            raise DomainError(f"beta must be positive, got {self.beta}")
        if not (self.mu > -1.0):
            raise DomainError(f"mu must exceed -1, got {self.mu}")


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abs_error: float
    converged: bool
    evaluations: int


def spectral_density(omega: float, p: BathParams) -> float:
    """J(omega) for the exponential-cutoff Ohmic family."""
    if omega < 0:
        raise DomainError(f"omega must be non-negative, got {omega}")
    if omega == 0.0:
        return 0.0
    x = omega / p.omega_c
    return p.j0 * p.omega_c * x ** (1.0 + p.mu) * math.exp(-x)


def moment0(p: BathParams) -> float:
    """int_0^inf J(w) dw = j0 * omega_c^2 * Gamma(2 + mu), in closed form."""
    return p.j0 * p.omega_c**2 * math.gamma(2.0 + p.mu)


def _tail_factor(kind: int, a: float, t: float, p: BathParams) -> float:
    """Pointwise bound on the non-J factor of each integrand for w >= a."""
    if kind == KIND_GAMMA:
        return 8.0 / (a * a * math.tanh(0.5 * p.beta * a))
    if kind == KIND_PHASE_RAMP:
        return 4.0 * (t / a + 1.0 / (a * a))
    if kind == KIND_PHASE_BOUNDED:
        return 8.0 / (a * a)
    if kind == KIND_DGAMMA:
        return 4.0 / (a * math.tanh(0.5 * p.beta * a))
    return 4.0 / a


def _tail_bound(kind: int, a: float, t: float, p: BathParams) -> float:
    """Bound on the integral over [a, inf) via the incomplete-Gamma tail of J."""
    s = 2.0 + p.mu
    j_tail = p.j0 * p.omega_c**2 * gammaincc(s, a / p.omega_c) * math.gamma(s)
    return _tail_factor(kind, a, t, p) * j_tail


def _head(kind: int, w: float, t: float, p: BathParams) -> tuple[float, float]:
    """Closed-form integral over [0, w] of the small-w series, plus a bound
    on the truncation error.

    Near zero every integrand is c * w^(mu + k) * (1 - w/omega_c + O(w^2));
    the series avoids the catastrophic cancellation in (1 - cos)/w^2.
    """
    mu = p.mu
    c0 = 4.0 * p.j0 * p.omega_c ** (-mu)

    def poly(coeff: float, k: int, q: float = 0.0) -> tuple[float, float]:
        # coeff * int_0^w x^(mu+k) (1 - x/omega_c + q x^2) dx, with a crude
        # but safe bound on the dropped O(x^(mu+k+3)) terms.
        lead = coeff * (
            w ** (mu + k + 1) / (mu + k + 1)
            - w ** (mu + k + 2) / ((mu + k + 2) * p.omega_c)
            + q * w ** (mu + k + 3) / (mu + k + 3)
        )
        # Dropped terms start at relative order x^3 when the quadratic
        # coefficient q is kept, x^2 otherwise.
        resid_order = mu + k + (4 if q != 0.0 else 3)
        resid_scale = (1.0 + t * t + p.beta**2 + 1.0 / p.omega_c**2) ** 2
        err = abs(coeff) * w**resid_order * resid_scale
        return lead, err

    if kind == KIND_GAMMA:
        q = 0.5 / p.omega_c**2 + p.beta**2 / 12.0 - t * t / 12.0
        return poly(c0 * t * t / p.beta, 0, q)
    if kind == KIND_PHASE_RAMP:
        # (wt - sin wt)/w^2 ~ (t^3/6) w, one power higher than the
        # bounded kernels.
        return poly(c0 * t**3 / 6.0, 2)
    if kind == KIND_PHASE_BOUNDED:
        return poly(c0 * t * t / 2.0, 1)
    if kind == KIND_DGAMMA:
        q = 0.5 / p.omega_c**2 + p.beta**2 / 12.0 - t * t / 6.0
        return poly(2.0 * c0 * t / p.beta, 0, q)
    return poly(c0 * t, 1)


def _initial_breakpoints(kind: int, t: float, p: BathParams,
                         tol: float) -> np.ndarray:
    """Panel layout: geometric refinement at the w^mu endpoint, oscillation-
    resolving panels (width <= pi/4t) while the integrand matters, coarse
    panels out to the truncation point."""
    wc = p.omega_c
    w_lo = _HEAD_FRACTION * wc
    w_max = wc * (40.0 + 10.0 * math.log(1.0 / tol))

    # Fine region ends where the tail-style bound is already negligible.
    w_fine_end = w_max
    x = 8.0 * wc
    while x < w_max:
        if _tail_bound(kind, x, t, p) < 0.1 * tol:
            w_fine_end = x
            break
        x += wc

    pts = [w_lo]
    w = w_lo
    while w < 0.25 * wc:
        w = min(w * 4.0, 0.25 * wc)
        pts.append(w)

    cap = wc / 4.0
    if t > 0.0:
        cap = min(cap, math.pi / (4.0 * t))
    n_fine = max(1, math.ceil((w_fine_end - pts[-1]) / cap))
    pts.extend(np.linspace(pts[-1], w_fine_end, n_fine + 1)[1:])

    if w_fine_end < w_max:
        n_coarse = max(1, math.ceil((w_max - w_fine_end) / (2.0 * wc)))
        pts.extend(np.linspace(w_fine_end, w_max, n_coarse + 1)[1:])
    return np.asarray(pts)


def _integrate(kind: int, t: float, p: BathParams, tol: float) -> QuadratureResult:
    """Adaptive evaluation of one semi-infinite kernel at time t."""
    if t < 0:
        raise DomainError(f"t must be non-negative, got {t}")
    if t == 0.0:
        return QuadratureResult(0.0, 0.0, True, 0)

    w_lo = _HEAD_FRACTION * p.omega_c
    head_val, head_err = _head(kind, w_lo, t, p)
    pts = _initial_breakpoints(kind, t, p, tol)
    w_max = pts[-1]
    tail_err = _tail_bound(kind, w_max, t, p)

    a = pts[:-1].copy()
    b = pts[1:].copy()
    vals, errs = kernels.eval_panels(
        kind, a, b, t, p.j0, p.omega_c, p.mu, p.beta,
        _NODES_HI, _WTS_HI, _NODES_LO, _WTS_LO,
    )
    evals = len(a) * _EVALS_PER_PANEL

    while True:
        total_err = float(np.sum(errs)) + head_err + tail_err
        if total_err <= tol:
            break
        # Split every panel whose error exceeds its fair share; always at
        # least the worst one.
        share = 0.5 * tol / len(a)
        mask = errs > share
        if not mask.any():
            mask[int(np.argmax(errs))] = True
        n_new = 2 * int(mask.sum())
        if evals + n_new * _EVALS_PER_PANEL > EVAL_BUDGET:
            raise QuadratureDivergence(
                f"kernel {kind} at t={t}: error {total_err:.3e} > tol {tol:.3e} "
                f"after {evals} integrand evaluations"
            )
        sa, sb = a[mask], b[mask]
        mids = 0.5 * (sa + sb)
        na = np.concatenate([a[~mask], sa, mids])
        nb = np.concatenate([b[~mask], mids, sb])
        nvals, nerrs = kernels.eval_panels(
            kind, na[len(a) - len(sa):], nb[len(a) - len(sa):],
            t, p.j0, p.omega_c, p.mu, p.beta,
            _NODES_HI, _WTS_HI, _NODES_LO, _WTS_LO,
        )
        vals = np.concatenate([vals[~mask], nvals])
        errs = np.concatenate([errs[~mask], nerrs])
        a, b = na, nb
        evals += n_new * _EVALS_PER_PANEL

    value = float(np.sum(vals)) + head_val
    total_err = float(np.sum(errs)) + float(head_err) + float(tail_err)
    return QuadratureResult(value, total_err, bool(total_err <= tol), evals)


_cache: dict[tuple, QuadratureResult] = {}
_cache_lock = threading.Lock()


def clear_cache() -> None:
    with _cache_lock:
        _cache.clear()


def _cached(kind: int, t: float, p: BathParams, tol: float) -> QuadratureResult:
    key = (kind, t, p, tol)
    with _cache_lock:
        hit = _cache.get(key)
    if hit is not None:
        return hit
    res = _integrate(kind, t, p, tol)
    with _cache_lock:
        _cache.setdefault(key, res)
    return res


def gamma(t: float, p: BathParams, tol: float = DEFAULT_TOL) -> QuadratureResult:
    """Decoherence kernel gamma(t); non-negative, gamma(0) = 0."""
    return _cached(KIND_GAMMA, t, p, tol)


def _scaled_by_theta(kind: int, t: float, theta: float, p: BathParams,
                     tol: float) -> QuadratureResult:
    # The integrals are exactly linear in theta: evaluate per unit theta
    # (shared across a theta sweep via the cache) and scale.
    if theta == 0.0:
        return QuadratureResult(0.0, 0.0, True, 0)
    base_tol = tol / max(1.0, abs(theta))
    base = _cached(kind, t, p, base_tol)
    err = base.abs_error * abs(theta)
    return QuadratureResult(base.value * theta, err, err <= tol, base.evaluations)


def omega_pt(t: float, theta: float, p: BathParams,
             tol: float = DEFAULT_TOL) -> QuadratureResult:
    """Unbounded phase kernel Omega(t); sign(theta) for t > 0, linear in theta."""
    return _scaled_by_theta(KIND_PHASE_RAMP, t, theta, p, tol)


def omega1(t: float, theta: float, p: BathParams,
           tol: float = DEFAULT_TOL) -> QuadratureResult:
    """Bounded phase kernel Omega_1(t); linear in theta."""
    return _scaled_by_theta(KIND_PHASE_BOUNDED, t, theta, p, tol)


def omega2(t: float, theta: float, p: BathParams) -> float:
    """Quadratic phase kernel Omega_2(t) = 2 theta t^2 * int J, closed form."""
    if t < 0:
        raise DomainError(f"t must be non-negative, got {t}")
    return 2.0 * theta * t * t * moment0(p)


def gamma_rate(t: float, p: BathParams, tol: float = DEFAULT_TOL) -> QuadratureResult:
    """d gamma / dt, by differentiating under the integral sign."""
    return _cached(KIND_DGAMMA, t, p, tol)


def omega1_rate(t: float, theta: float, p: BathParams,
                tol: float = DEFAULT_TOL) -> QuadratureResult:
    """d Omega_1 / dt, linear in theta."""
    return _scaled_by_theta(KIND_DPHASE_BOUNDED, t, theta, p, tol)


def omega2_rate(t: float, theta: float, p: BathParams) -> float:
    """d Omega_2 / dt = 4 theta t * int J."""
    if t < 0:
        raise DomainError(f"t must be non-negative, got {t}")
    return 4.0 * theta * t * moment0(p)
