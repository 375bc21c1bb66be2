"""Numerical kernels shared by the closed-form checks and the Monte-Carlo simulator.

Bessel evaluation runs in a compiled extension when it has been built and
falls back to an equivalent pure-Python implementation otherwise. Set
``SPATIALSEC_PURE_PYTHON=1`` to force the fallback.
"""

import os

if os.environ.get("SPATIALSEC_PURE_PYTHON") == "1":
    from . import _kernels_py as _backend
else:
    try:
        from . import _kernels as _backend
    except ImportError:
        from . import _kernels_py as _backend

BACKEND = _backend.BACKEND
bessel_j = _backend.bessel_j
bessel_j_array = _backend.bessel_j_array
j0_kernel_matrix = _backend.j0_kernel_matrix

from .linalg import (  # noqa: E402
    EPS_PSD,
    NotPSDError,
    RankError,
    as_hermitian,
    hermitian_sqrt,
    jammed_logdet_capacity,
    logdet_capacity,
    null_space_basis,
)
from .rng import channel_rng, sample_correlated_gaussian, standard_complex_normal  # noqa: E402

__all__ = [
    "BACKEND",
    "EPS_PSD",
    "NotPSDError",
    "RankError",
    "as_hermitian",
    "bessel_j",
    "bessel_j_array",
    "channel_rng",
    "hermitian_sqrt",
    "j0_kernel_matrix",
    "jammed_logdet_capacity",
    "logdet_capacity",
    "null_space_basis",
    "sample_correlated_gaussian",
    "standard_complex_normal",
]
