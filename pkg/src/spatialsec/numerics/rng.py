"""Seeded complex Gaussian sampling on a counter-based generator.

Every draw is keyed by ``(seed, realization index, role)`` so any realization
can be regenerated on its own, in any order or process.
"""

import numpy as np

from .linalg import hermitian_sqrt

ROLES = {"h": 0, "g": 1, "g_bob": 2, "h_bob": 3, "v": 4, "test": 99}


def channel_rng(seed, index=0, role="h"):
    """Philox generator for one (seed, realization, role) triple."""
    if role not in ROLES:
        raise ValueError(f"unknown role {role!r}; expected one of {sorted(ROLES)}")
    if seed < 0 or index < 0:
        raise ValueError("seed and index must be nonnegative")
    key = np.random.SeedSequence([int(seed), int(index), ROLES[role]])
    return np.random.Generator(np.random.Philox(key))


def standard_complex_normal(rng, shape):
    """I.i.d. CN(0, 1) entries."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def sample_correlated_gaussian(r, columns, seed, index=0, role="h", sqrt_r=None):
    """Matrix whose columns are i.i.d. CN(0, R): ``R^{1/2} W`` with white ``W``.

    ``sqrt_r`` may be passed to reuse a precomputed square root of ``r``.
    """
    if sqrt_r is None:
        sqrt_r = hermitian_sqrt(r)
    n = sqrt_r.shape[0]
    w = standard_complex_normal(channel_rng(seed, index, role), (n, int(columns)))
    return sqrt_r @ w
