"""Dense complex linear algebra used throughout the package.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Matrix-unit
indices exposed to callers are 1-based (``matrix_unit(1, 2, n)`` is the
operator ``|e_1><e_2|``); everything stored internally is 0-based.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

TOL_SYM = 1e-10
TOL_ORTH = 1e-10
TOL_RESID = 1e-9


class DomainError(ValueError):
    """Raised when an input violates an operation's precondition."""


def as_matrix(a, name: str = "matrix", square: bool = True) -> np.ndarray:
    """Coerce ``a`` to a finite complex 2-d array, optionally requiring squareness."""
    arr = np.asarray(a, dtype=complex)
    if arr.ndim != 2 or arr.size == 0:
        raise DomainError(f"{name} must be a non-empty 2-d array, got shape {arr.shape}")
    if square and arr.shape[0] != arr.shape[1]:
        raise DomainError(f"{name} must be square, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} contains NaN or Inf")
    return arr


def norm(a: np.ndarray) -> float:
    """Frobenius norm."""
    return float(np.linalg.norm(a))


def matrix_unit(i: int, j: int, n: int) -> np.ndarray:
    """Return the n x n matrix unit with a single 1 at (1-based) row ``i``, column ``j``."""
    if n < 1:
        raise DomainError(f"dimension must be positive, got {n}")
    if not (1 <= i <= n and 1 <= j <= n):
        raise DomainError(f"matrix unit indices ({i}, {j}) out of range for dimension {n}")
    p = np.zeros((n, n), dtype=complex)
    p[i - 1, j - 1] = 1.0
    return p


def matrix_units(n: int) -> np.ndarray:
    """All matrix units at once, as an array ``units[i, j]`` of shape (n, n, n, n), 0-based."""
    return np.eye(n * n, dtype=complex).reshape(n, n, n, n)


def hs_inner(a, b) -> complex:
    """Hilbert-Schmidt inner product ``tr(a^dagger b)``, conjugate-linear in ``a``."""
    a = as_matrix(a, "a")
    b = as_matrix(b, "b")
    if a.shape != b.shape:
        raise DomainError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return complex(np.vdot(a, b))


def hs_expand(x) -> np.ndarray:
    """Coefficients ``c`` of ``x`` in the matrix-unit basis.

    ``c[i, j] = hs_inner(P_ij, x)``, so that ``sum_ij c[i, j] P_ij == x``. In the
    matrix-unit basis the coefficient grid coincides with the entries of ``x``.
    """
    return as_matrix(x, "x").copy()


def kron(a, b) -> np.ndarray:
    """Kronecker product, block convention: block (r, c) of the result is ``a[r, c] * b``."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def hermiticity_defect(a: np.ndarray) -> float:
    return norm(a - a.conj().T)


def is_hermitian(a, tol: float = TOL_SYM) -> bool:
    a = as_matrix(a)
    return hermiticity_defect(a) <= tol * max(1.0, norm(a))


@dataclass(frozen=True)
class EigenDecomposition:
    """Spectrum in descending order with orthonormal eigenvectors as columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def eig_hermitian(a, tol: float = TOL_SYM) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending.

    Ties keep the order in which the solver returned them.

    :param a: square Hermitian matrix
    :param tol: relative Hermiticity tolerance, scaled by ``max(1, ||a||)``
    :raises DomainError: if ``a`` is not Hermitian within tolerance
    """
    a = as_matrix(a)
    defect = hermiticity_defect(a)
    if defect > tol * max(1.0, norm(a)):
        raise DomainError(f"matrix is not Hermitian: ||A - A^dagger|| = {defect:.3e}")
    # symmetrize so the solver sees an exactly Hermitian input
    w, v = np.linalg.eigh(0.5 * (a + a.conj().T))
    order = np.argsort(-w, kind="stable")
    return EigenDecomposition(eigenvalues=w[order], eigenvectors=v[:, order])


def is_positive_semidefinite(a, tol: float = TOL_SYM) -> tuple[bool, float]:
    """Check ``a >= 0`` up to ``tol * max(1, ||a||)``.

    :returns: ``(verdict, min_eigenvalue)``
    :raises DomainError: if ``a`` is not Hermitian
    """
    a = as_matrix(a)
    dec = eig_hermitian(a, tol=TOL_SYM)
    lam_min = float(dec.eigenvalues[-1])
    return lam_min >= -tol * max(1.0, norm(a)), lam_min
