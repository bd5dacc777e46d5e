# cython: boundscheck=False, wraparound=False, cdivision=True
# cython: language_level=3
"""Compiled implementation of the hot assembly kernels.

Same contracts as the numpy backend (see _numpy_impl); loops are fused
and temporaries avoided, which mostly pays off for the transcendental-
heavy bracket and activation tables.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport exp, expm1, fabs

cnp.import_array()

BACKEND_NAME = "cython"


def fc_table(huang_rhys):
    cdef double[::1] s = np.ascontiguousarray(huang_rhys, dtype=np.float64)
    cdef Py_ssize_t n = s.shape[0]
    out_arr = np.empty((n + 1, n + 1))
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t i, j
    cdef double total = 0.0, es, si
    for i in range(n):
        total += s[i]
    es = exp(-total)
    out[0, 0] = es
    for i in range(n):
        si = es * s[i]
        out[0, i + 1] = si
        out[i + 1, 0] = si
        for j in range(n):
            out[i + 1, j + 1] = si * s[j]
        out[i + 1, i + 1] = es * (1.0 - s[i]) * (1.0 - s[i])
    return out_arr


def thermal_bracket(freqs, double beta, double eta, double omega_cut,
                    double omega_tol=1e-6):
    cdef double[::1] f = np.ascontiguousarray(freqs, dtype=np.float64)
    cdef Py_ssize_t n = f.shape[0]
    out_arr = np.empty((n, n))
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t q, qp
    cdef double w, x, limit
    limit = eta / beta
    for q in range(n):
        for qp in range(n):
            if q == qp:
                out[q, qp] = 0.0
                continue
            w = f[qp] - f[q]
            if fabs(w) <= omega_tol:
                out[q, qp] = limit
                continue
            x = beta * w
            if x > 700.0:
                # absorption beyond double range: expm1 overflows, rate -> 0
                out[q, qp] = 0.0
            else:
                out[q, qp] = eta * w * exp(-fabs(w) / omega_cut) / expm1(x)
    return out_arr


def marcus_gaussian(e_from, e_to, double lambda_s, double beta):
    cdef double[::1] a = np.ascontiguousarray(e_from, dtype=np.float64)
    cdef double[::1] b = np.ascontiguousarray(e_to, dtype=np.float64)
    cdef Py_ssize_t na = a.shape[0], nb = b.shape[0]
    out_arr = np.empty((na, nb))
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t i, j
    cdef double gap, inv4l = 1.0 / (4.0 * lambda_s)
    for i in range(na):
        for j in range(nb):
            gap = b[j] - a[i] + lambda_s
            out[i, j] = exp(-beta * gap * gap * inv4l)
    return out_arr
