# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled quadrature kernel: batched Gauss panels of the bath integrands.

Mirrors the contract of ``_kernels_py.eval_panels`` (see that module for the
integrand table) with tight C loops over panels and nodes.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport exp, log, pow, sin, tanh

cnp.import_array()

BACKEND_NAME = "cython"

KIND_GAMMA = 0
KIND_PHASE_RAMP = 1
KIND_PHASE_BOUNDED = 2
KIND_DGAMMA = 3
KIND_DPHASE_BOUNDED = 4


cdef inline double _integrand(int kind, double w, double t, double j0,
                              double omega_c, double mu, double beta) nogil:
    cdef double j = j0 * omega_c * pow(w / omega_c, 1.0 + mu) * exp(-w / omega_c)
    cdef double u = w * t
    cdef double s, core
    if kind == 0 or kind == 2:
        s = sin(0.5 * u)
        core = 4.0 * j * (2.0 * s * s) / (w * w)
    elif kind == 1:
        if u < 1e-3:
            core = 4.0 * j * (u * u * u / 6.0 - u * u * u * u * u / 120.0
                              + u * u * u * u * u * u * u / 5040.0) / (w * w)
        else:
            core = 4.0 * j * (u - sin(u)) / (w * w)
    else:
        core = 4.0 * j * sin(u) / w
    if kind == 0 or kind == 3:
        core = core / tanh(0.5 * beta * w)
    return core


def eval_panels(int kind,
                cnp.ndarray[cnp.float64_t, ndim=1] a,
                cnp.ndarray[cnp.float64_t, ndim=1] b,
                double t, double j0, double omega_c, double mu, double beta,
                cnp.ndarray[cnp.float64_t, ndim=1] nodes_hi,
                cnp.ndarray[cnp.float64_t, ndim=1] wts_hi,
                cnp.ndarray[cnp.float64_t, ndim=1] nodes_lo,
                cnp.ndarray[cnp.float64_t, ndim=1] wts_lo):
    """Integrate one integrand over each panel [a[i], b[i]].

    Returns (values, errors): the high-order Gauss estimate per panel and
    the absolute difference against the embedded low-order rule.
    """
    if kind < 0 or kind > 4:
        raise ValueError(f"unknown integrand kind {kind}")
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t n_hi = nodes_hi.shape[0]
    cdef Py_ssize_t n_lo = nodes_lo.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] vals = np.empty(n, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] errs = np.empty(n, dtype=np.float64)
    cdef Py_ssize_t i, k
    cdef double mid, half, acc_hi, acc_lo, lo

    with nogil:
        for i in range(n):
            mid = 0.5 * (a[i] + b[i])
            half = 0.5 * (b[i] - a[i])
            acc_hi = 0.0
            for k in range(n_hi):
                acc_hi += wts_hi[k] * _integrand(
                    kind, mid + half * nodes_hi[k], t, j0, omega_c, mu, beta)
            acc_lo = 0.0
            for k in range(n_lo):
                acc_lo += wts_lo[k] * _integrand(
                    kind, mid + half * nodes_lo[k], t, j0, omega_c, mu, beta)
            vals[i] = half * acc_hi
            lo = half * acc_lo
            errs[i] = vals[i] - lo
            if errs[i] < 0.0:
                errs[i] = -errs[i]
    return vals, errs
