"""Derivative matrices and dense symmetric / generalized eigensolvers."""

from __future__ import annotations

import numpy as np

from ..errors import NonHermitianError, OverflowGuardError
from .grids import MomentumGrid, OperatorMatrix

_HERMITICITY_RTOL = 1e-10
_WEIGHT_OVERFLOW = 1e300


def derivative_matrix(grid: MomentumGrid, order: int, scheme: str = "central") -> OperatorMatrix:
    """Dense d/dp or d^2/dp^2 on the grid, with zero boundary values assumed outside.

    ``scheme="central"`` gives the 3-point stencils (2nd-order accurate);
    ``scheme="spectral"`` gives the sinc (Fourier-grid) matrices, spectrally
    accurate for functions that decay inside the grid.  Both first-derivative
    matrices are globally antisymmetric, so i*D1 is exactly Hermitian.
    """
    n, h = grid.n, grid.spacing
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    if scheme == "central":
        m = np.zeros((n, n))
        i = np.arange(n - 1)
        if order == 1:
            m[i, i + 1] = 1.0 / (2.0 * h)
            m[i + 1, i] = -1.0 / (2.0 * h)
        else:
            m[i, i + 1] = 1.0 / h**2
            m[i + 1, i] = 1.0 / h**2
            np.fill_diagonal(m, -2.0 / h**2)
    elif scheme == "spectral":
        idx = np.arange(n)
        d = idx[:, None] - idx[None, :]  # i - j
        safe = np.where(d != 0, d, 1)
        if order == 1:
            m = np.where(d != 0, (-1.0) ** d / (safe * h), 0.0)
        else:
            m = np.where(d != 0, -2.0 * (-1.0) ** d / (safe**2 * h**2), 0.0)
            np.fill_diagonal(m, -np.pi**2 / (3.0 * h**2))
    else:
        raise ValueError(f"unknown scheme {scheme!r}")
    return OperatorMatrix(m, grid)


def _as_array(a) -> np.ndarray:
    return a.entries if isinstance(a, OperatorMatrix) else np.asarray(a)


def eig_sym(a) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian matrix.

    Raises NonHermitianError if the input fails max|A - A^H| <= 1e-10 max|A|.
    """
    m = _as_array(a)
    scale = np.max(np.abs(m))
    if scale > 0 and np.max(np.abs(m - m.conj().T)) > _HERMITICITY_RTOL * scale:
        raise NonHermitianError("eig_sym requires a Hermitian matrix")
    w, v = np.linalg.eigh(m)
    return w, v


def eig_generalized(
    a, weight: np.ndarray, return_eigenvectors: bool = False
) -> np.ndarray | tuple[np.ndarray, np.ndarray]:
    """Solve A phi = E W phi for diagonal positive W by the symmetric reduction.

    The reduction B = W^(-1/2) A W^(-1/2) keeps the problem Hermitian; the
    returned eigenvectors (if requested) are the phi columns, normalised in
    the W-weighted inner product.
    """
    m = _as_array(a)
    w = np.asarray(weight, dtype=float)
    if w.ndim != 1 or w.size != m.shape[0]:
        raise ValueError("weight must be a diagonal vector matching the matrix dimension")
    if np.any(~np.isfinite(w)) or np.any(w > _WEIGHT_OVERFLOW):
        raise OverflowGuardError(
            "weight entries overflow; reduce the grid cutoff so the measure factor stays finite"
        )
    if np.any(w <= 0):
        raise ValueError("weight entries must be positive")
    s = 1.0 / np.sqrt(w)
    b = s[:, None] * m * s[None, :]
    b = 0.5 * (b + b.conj().T)  # symmetrise away roundoff
    vals, vecs = eig_sym(b)
    if not return_eigenvectors:
        return vals
    return vals, s[:, None] * vecs
