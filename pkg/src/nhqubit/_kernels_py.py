"""Pure-numpy quadrature kernel: batched Gauss panels of the bath integrands.

Same contract as the compiled extension in ``_kernels.pyx``; used as the
fallback when the extension is not built.  Integrand kinds:

    0  gamma            4 J(w) (1 - cos wt)/w^2 * coth(beta w / 2)
    1  phase_ramp       4 J(w) (wt - sin wt)/w^2          (theta factored out)
    2  phase_bounded    4 J(w) (1 - cos wt)/w^2           (theta factored out)
    3  dgamma           4 J(w) sin(wt)/w * coth(beta w / 2)
    4  dphase_bounded   4 J(w) sin(wt)/w

with J(w) = j0 * omega_c * (w/omega_c)^(1+mu) * exp(-w/omega_c).
"""

import numpy as np

BACKEND_NAME = "python"

KIND_GAMMA = 0
KIND_PHASE_RAMP = 1
KIND_PHASE_BOUNDED = 2
KIND_DGAMMA = 3
KIND_DPHASE_BOUNDED = 4


def _integrand(kind, w, t, j0, omega_c, mu, beta):
    j = j0 * omega_c * (w / omega_c) ** (1.0 + mu) * np.exp(-w / omega_c)
    u = w * t
    if kind in (KIND_GAMMA, KIND_PHASE_BOUNDED):
        # 1 - cos u == 2 sin^2(u/2), stable for small u.
        core = 4.0 * j * (2.0 * np.sin(0.5 * u) ** 2) / (w * w)
    elif kind == KIND_PHASE_RAMP:
        # u - sin u cancels catastrophically for small u; switch to series.
        small = u < 1e-3
        series = u**3 / 6.0 - u**5 / 120.0 + u**7 / 5040.0
        core = 4.0 * j * np.where(small, series, u - np.sin(u)) / (w * w)
    elif kind in (KIND_DGAMMA, KIND_DPHASE_BOUNDED):
        core = 4.0 * j * np.sin(u) / w
    else:
        raise ValueError(f"unknown integrand kind {kind}")
    if kind in (KIND_GAMMA, KIND_DGAMMA):
        core = core / np.tanh(0.5 * beta * w)
    return core


def eval_panels(kind, a, b, t, j0, omega_c, mu, beta,
                nodes_hi, wts_hi, nodes_lo, wts_lo):
    """Integrate one integrand over each panel [a[i], b[i]].

    Returns (values, errors): the high-order Gauss estimate per panel and
    the absolute difference against the embedded low-order rule.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)

    x_hi = mid[:, None] + half[:, None] * nodes_hi[None, :]
    f_hi = _integrand(kind, x_hi, t, j0, omega_c, mu, beta)
    vals = half * (f_hi @ wts_hi)

    x_lo = mid[:, None] + half[:, None] * nodes_lo[None, :]
    f_lo = _integrand(kind, x_lo, t, j0, omega_c, mu, beta)
    lo = half * (f_lo @ wts_lo)

    return vals, np.abs(vals - lo)
