"""Hermitian log-determinants, square roots and null-space bases."""

import numpy as np

from ..model import NumericalError

#: Eigenvalues down to -EPS_PSD * max|eigenvalue| are treated as zero.
EPS_PSD = 1e-10


class NotPSDError(NumericalError):
    pass


class RankError(NumericalError):
    def __init__(self, message, rank):
        super().__init__(message)
        self.rank = rank


def as_hermitian(a, atol=1e-9):
    """Return ``a`` as a Hermitian complex array, symmetrising rounding noise.

    Raises ``ValueError`` if ``a`` is not square or departs from Hermitian
    symmetry by more than ``atol`` relative to its largest entry.
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    scale = max(float(np.max(np.abs(a), initial=0.0)), 1.0)
    if np.max(np.abs(a - a.conj().T), initial=0.0) > atol * scale:
        raise ValueError("matrix is not Hermitian")
    return 0.5 * (a + a.conj().T)


def _clamped_eigh(a, eigvals_only=False):
    a = as_hermitian(a)
    if eigvals_only:
        w, v = np.linalg.eigvalsh(a), None
    else:
        w, v = np.linalg.eigh(a)
    if w.size == 0:
        return w, v
    floor = -EPS_PSD * max(float(np.max(np.abs(w))), 0.0)
    if w[0] < floor:
        raise NotPSDError(f"matrix is not positive semidefinite (min eigenvalue {w[0]:.3e})")
    return np.clip(w, 0.0, None), v


def logdet_capacity(a) -> float:
    """``log2 det(I + A)`` for a Hermitian PSD matrix ``A``."""
    w, _ = _clamped_eigh(a, eigvals_only=True)
    return float(np.sum(np.log2(1.0 + w)))


def hermitian_sqrt(r):
    """Principal square root of a Hermitian PSD matrix via its eigendecomposition."""
    w, v = _clamped_eigh(r)
    return (v * np.sqrt(w)) @ v.conj().T


def jammed_logdet_capacity(signal_cov, interference_cov, noise) -> float:
    """``log2 det(I + S (J + noise*I)^-1)`` for Hermitian PSD ``S`` and ``J``.

    With ``L`` the Cholesky factor of ``J + noise*I`` and ``X = L^-1 S^(1/2)``
    this equals ``log2 det(I + X^H X)``. The Gram form stays positive
    semidefinite under rounding even when ``J + noise*I`` is badly conditioned.
    """
    sqrt_s = hermitian_sqrt(signal_cov)
    n = sqrt_s.shape[0]
    _clamped_eigh(interference_cov, eigvals_only=True)
    q = as_hermitian(interference_cov) + noise * np.eye(n)
    try:
        chol = np.linalg.cholesky(q)
    except np.linalg.LinAlgError as exc:
        raise NumericalError("interference-plus-noise covariance is singular") from exc
    x = np.linalg.solve(chol, sqrt_s)
    return logdet_capacity(x.conj().T @ x)


def null_space_basis(g, rtol=None):
    """Orthonormal basis ``Z`` of the null space of a full-row-rank matrix ``g``.

    ``g`` has shape ``(rows, cols)`` with ``rows <= cols``; ``Z`` has shape
    ``(cols, cols - rows)`` with ``g @ Z = 0`` and ``Z^H Z = I``. Built from the
    complete QR factorisation of ``g^H``.
    """
    g = np.atleast_2d(np.asarray(g, dtype=complex))
    rows, cols = g.shape
    if rows > cols:
        raise RankError(f"need rows <= cols for a nontrivial null space, got {g.shape}", min(rows, cols))
    rank = int(np.linalg.matrix_rank(g, tol=None if rtol is None else rtol * np.linalg.norm(g, 2)))
    if rank < rows:
        raise RankError(f"matrix must have full row rank {rows}, measured rank {rank}", rank)
    q, _ = np.linalg.qr(g.conj().T, mode="complete")
    return q[:, rows:]
