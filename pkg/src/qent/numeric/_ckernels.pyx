# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled core for the O(n^2) kernel sums.

``chirp_matvec`` computes ``out[i] = sum_j phi[j] exp(i q x_out[i] (x0 + j dx))``.
Along j the phase is an arithmetic progression, so the exponential is advanced
by one complex rotation per node and re-seeded with an exact sincos every
RESYNC nodes to bound drift.  Each output node is summed sequentially by a
single thread: results do not depend on the thread count.
"""
from cython.parallel cimport prange
from libc.math cimport cos, sin

import numpy as np

cdef enum:
    RESYNC = 64


cdef inline void _row(const double[::1] pr, const double[::1] pi_, Py_ssize_t n,
                      double theta0, double step, double* out_re, double* out_im) noexcept nogil:
    cdef double acc_re = 0.0, acc_im = 0.0
    cdef double rc = cos(step), rs = sin(step)
    cdef double zr, zi, tmp, ang
    cdef Py_ssize_t j = 0, jb, jend
    while j < n:
        ang = theta0 + step * j
        zr = cos(ang)
        zi = sin(ang)
        jend = j + RESYNC
        if jend > n:
            jend = n
        for jb in range(j, jend):
            acc_re = acc_re + pr[jb] * zr - pi_[jb] * zi
            acc_im = acc_im + pr[jb] * zi + pi_[jb] * zr
            tmp = zr * rc - zi * rs
            zi = zr * rs + zi * rc
            zr = tmp
        j = jend
    out_re[0] = acc_re
    out_im[0] = acc_im


def chirp_matvec(x_out, double x0, double dx, phi, double q, int nthreads=1):
    cdef const double[::1] xo = np.ascontiguousarray(x_out, dtype=np.float64)
    phi = np.asarray(phi, dtype=np.complex128)
    cdef const double[::1] pr = np.ascontiguousarray(phi.real)
    cdef const double[::1] pim = np.ascontiguousarray(phi.imag)
    cdef Py_ssize_t m = xo.shape[0], n = pr.shape[0], i
    res_re = np.empty(m)
    res_im = np.empty(m)
    cdef double[::1] rr = res_re
    cdef double[::1] ri = res_im
    cdef double w
    if nthreads < 1:
        nthreads = 1
    for i in prange(m, nogil=True, num_threads=nthreads, schedule="static"):
        w = q * xo[i]
        _row(pr, pim, n, w * x0, w * dx, &rr[i], &ri[i])
    return res_re + 1j * res_im
