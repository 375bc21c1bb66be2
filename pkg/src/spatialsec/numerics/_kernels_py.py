"""Pure-Python kernels. Used when the compiled extension is not built.

The algorithms mirror ``_kernels.pyx`` line for line so the two backends agree
to rounding.
"""

import math

import numpy as np

BACKEND = "python"

_RESCALE = 1.0e150
_TWO_PI = 2.0 * math.pi


def _series(m, x):
    # Terms decrease monotonically when (x/2)^2 <= m + 1, so no cancellation.
    half = 0.5 * x
    term = 1.0
    for i in range(1, m + 1):
        term *= half / i
    if term == 0.0:
        return 0.0
    q = -half * half
    total = term
    k = 1
    while True:
        term *= q / (k * (k + m))
        total += term
        if abs(term) <= 1e-17 * abs(total):
            break
        k += 1
    return total


def _miller(m, x):
    scale = max(float(m), x)
    top = int(scale + 30.0 + 3.0 * math.sqrt(40.0 * scale))
    top += top & 1
    two_over_x = 2.0 / x
    bj_next = 0.0
    bj = 1.0e-300
    norm = 0.0
    result = 0.0
    # Downward recurrence: J_{k-1} = (2k/x) J_k - J_{k+1}.
    for k in range(top, 0, -1):
        bj_prev = k * two_over_x * bj - bj_next
        bj_next = bj
        bj = bj_prev
        if abs(bj) > _RESCALE:
            bj /= _RESCALE
            bj_next /= _RESCALE
            norm /= _RESCALE
            result /= _RESCALE
        j = k - 1
        if j == m:
            result = bj
        if j > 0 and not (j & 1):
            norm += 2.0 * bj
    norm += bj
    return result / norm


def bessel_j(m, x):
    """Bessel function of the first kind J_m(x) for integer ``m >= 0``, ``x >= 0``."""
    m = int(m)
    x = float(x)
    if m < 0:
        raise ValueError(f"order must be nonnegative, got {m}")
    if x < 0.0:
        raise ValueError(f"argument must be nonnegative, got {x}")
    if x == 0.0:
        return 1.0 if m == 0 else 0.0
    if 0.25 * x * x <= m + 1:
        return _series(m, x)
    return _miller(m, x)


def bessel_j_array(m, x):
    x = np.ascontiguousarray(x, dtype=np.float64)
    out = np.empty_like(x)
    flat_in = x.reshape(-1)
    flat_out = out.reshape(-1)
    for i in range(flat_in.size):
        flat_out[i] = bessel_j(m, flat_in[i])
    return out


def j0_kernel_matrix(positions):
    """Symmetric matrix of J_0(2*pi*d_kl) over pairwise distances of ``positions``.

    Positions are in wavelengths, shape ``(n, dim)``.
    """
    pos = np.ascontiguousarray(positions, dtype=np.float64)
    n = pos.shape[0]
    out = np.empty((n, n), dtype=np.float64)
    for k in range(n):
        out[k, k] = 1.0
        for l in range(k + 1, n):
            d = math.sqrt(float(np.sum((pos[k] - pos[l]) ** 2)))
            v = bessel_j(0, _TWO_PI * d)
            out[k, l] = v
            out[l, k] = v
    return out
