# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: Bessel J_m and the J_0 spatial-correlation kernel."""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, sqrt, M_PI

cnp.import_array()

BACKEND = "cython"

cdef double _RESCALE = 1.0e150


cdef double _series(int m, double x) noexcept nogil:
    cdef double half = 0.5 * x
    cdef double term = 1.0
    cdef double q, total
    cdef int i, k
    for i in range(1, m + 1):
        term *= half / i
    if term == 0.0:
        return 0.0
    q = -half * half
    total = term
    k = 1
    while True:
        term *= q / (<double>k * (k + m))
        total += term
        if fabs(term) <= 1e-17 * fabs(total):
            break
        k += 1
    return total


cdef double _miller(int m, double x) noexcept nogil:
    cdef double scale = m if m > x else x
    cdef long top = <long>(scale + 30.0 + 3.0 * sqrt(40.0 * scale))
    cdef double two_over_x = 2.0 / x
    cdef double bj_next = 0.0
    cdef double bj = 1.0e-300
    cdef double bj_prev
    cdef double norm = 0.0
    cdef double result = 0.0
    cdef long k, j
    top += top & 1
    k = top
    while k > 0:
        bj_prev = k * two_over_x * bj - bj_next
        bj_next = bj
        bj = bj_prev
        if fabs(bj) > _RESCALE:
            bj /= _RESCALE
            bj_next /= _RESCALE
            norm /= _RESCALE
            result /= _RESCALE
        j = k - 1
        if j == m:
            result = bj
        if j > 0 and (j & 1) == 0:
            norm += 2.0 * bj
        k -= 1
    norm += bj
    return result / norm


cdef double _bessel_j(int m, double x) noexcept nogil:
    if x == 0.0:
        return 1.0 if m == 0 else 0.0
    if 0.25 * x * x <= m + 1:
        return _series(m, x)
    return _miller(m, x)


def bessel_j(m, x):
    """Bessel function of the first kind J_m(x) for integer ``m >= 0``, ``x >= 0``."""
    cdef int mi = int(m)
    cdef double xd = float(x)
    if mi < 0:
        raise ValueError(f"order must be nonnegative, got {mi}")
    if xd < 0.0:
        raise ValueError(f"argument must be nonnegative, got {xd}")
    return _bessel_j(mi, xd)


def bessel_j_array(m, x):
    cdef int mi = int(m)
    arr = np.ascontiguousarray(x, dtype=np.float64)
    if arr.size and arr.min() < 0.0:
        raise ValueError("argument must be nonnegative")
    out = np.empty_like(arr)
    cdef const double[::1] src = arr.reshape(-1)
    cdef double[::1] dst = out.reshape(-1)
    cdef Py_ssize_t i
    with nogil:
        for i in range(src.shape[0]):
            dst[i] = _bessel_j(mi, src[i])
    return out


def j0_kernel_matrix(positions):
    """Symmetric matrix of J_0(2*pi*d_kl) over pairwise distances of ``positions``.

    Positions are in wavelengths, shape ``(n, dim)``.
    """
    pos_arr = np.ascontiguousarray(positions, dtype=np.float64)
    cdef const double[:, ::1] pos = pos_arr
    cdef Py_ssize_t n = pos.shape[0]
    cdef Py_ssize_t dim = pos.shape[1]
    out = np.empty((n, n), dtype=np.float64)
    cdef double[:, ::1] res = out
    cdef Py_ssize_t k, l, c
    cdef double acc, diff, v
    with nogil:
        for k in range(n):
            res[k, k] = 1.0
            for l in range(k + 1, n):
                acc = 0.0
                for c in range(dim):
                    diff = pos[k, c] - pos[l, c]
                    acc += diff * diff
                v = _bessel_j(0, 2.0 * M_PI * sqrt(acc))
                res[k, l] = v
                res[l, k] = v
    return out
