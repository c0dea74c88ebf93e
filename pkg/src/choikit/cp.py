"""Complete positivity through the Choi matrix, and Kraus extraction.

A map is completely positive exactly when its Choi matrix is positive
semidefinite. A positive Choi matrix factors as ``J = Q^dagger Q``; each row of
``Q`` belonging to a strictly positive eigenvalue, read back as an N x N
matrix, is (the conjugate of) one Kraus operator. The resulting set is
minimal, and every other Kraus set of the same map is an isometric mix of it.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .channels import (
    ChannelMap,
    ChoiMatrix,
    KrausSet,
    build_choi,
    channel_from_kraus,
)
from .linalg import (
    DomainError,
    TOL_ORTH,
    TOL_SYM,
    as_matrix,
    eig_hermitian,
    hermiticity_defect,
    matrix_unit,
    hs_inner,
    norm,
)

DEFAULT_TOL = 1e-10


class CriterionViolation(ValueError):
    """The Choi matrix is not positive semidefinite, so the map is not CP."""

    def __init__(self, message: str, min_eigenvalue: float | None = None):
        super().__init__(message)
        self.min_eigenvalue = min_eigenvalue


@dataclass(frozen=True)
class CpReport:
    verdict: bool
    choi_spectrum: list[float]
    min_eigenvalue: float | None
    hermiticity_defect: float
    minimal_rank: int
    tolerance_used: float

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "spectrum": list(self.choi_spectrum),
            "min_eigenvalue": self.min_eigenvalue,
            "minimal_rank": self.minimal_rank,
            "hermiticity_defect": self.hermiticity_defect,
            "tolerance_used": self.tolerance_used,
        }


@dataclass(frozen=True)
class QFactor:
    """``q`` with ``q^dagger q == J``.

    ``eigenvalues`` are those of J (descending, clamped at zero) and are
    row-aligned with ``q``; ``cutoff`` is the rank cutoff used to build it.
    """

    q: np.ndarray
    eigenvalues: np.ndarray = field(repr=False)
    cutoff: float = 0.0


def _choi(j) -> ChoiMatrix:
    return j if isinstance(j, ChoiMatrix) else ChoiMatrix(j)


def rank_cutoff(j: ChoiMatrix, tol: float = DEFAULT_TOL) -> float:
    """Eigenvalues above this count as strictly positive."""
    return tol * max(1.0, norm(j.matrix))


def choi_coefficient(channel: ChannelMap, i: int, j: int, m: int, n: int) -> complex:
    """``alpha_ijmn = (P_mn, alpha(P_ij))``, 1-based; also entry (m, n) of ``alpha(P_ij)``."""
    d = channel.dim
    return hs_inner(matrix_unit(m, n, d), channel.image(i, j))


def kraus_sequences(ks: KrausSet) -> np.ndarray:
    """``f[i, j, p] = (e_i, M_p e_j)``: the matrix entries of each Kraus operator, gathered per (i, j)."""
    return np.moveaxis(ks.operators, 0, -1).copy()


def choi_from_sequences(f: np.ndarray) -> ChoiMatrix:
    """Assemble ``J`` from ``alpha_ijmn = (f_nj, f_mi)``, the l2 inner product over the Kraus index."""
    n = f.shape[0]
    alpha = np.einsum("njp,mip->ijmn", f.conj(), f)
    return ChoiMatrix(alpha.transpose(2, 0, 3, 1).reshape(n * n, n * n))


def is_completely_positive(channel: ChannelMap, tol: float = DEFAULT_TOL) -> CpReport:
    """Decide complete positivity from the Choi spectrum.

    A non-Hermitian Choi matrix gives a negative verdict with the defect
    reported and no spectrum.
    """
    j = build_choi(channel)
    defect = hermiticity_defect(j.matrix)
    scale = max(1.0, norm(j.matrix))
    if defect > TOL_SYM * scale:
        return CpReport(False, [], None, defect, 0, tol)
    lam = eig_hermitian(j.matrix).eigenvalues
    cutoff = tol * scale
    lam_min = float(lam[-1])
    return CpReport(
        verdict=lam_min >= -cutoff,
        choi_spectrum=[float(x) for x in lam],
        min_eigenvalue=lam_min,
        hermiticity_defect=defect,
        minimal_rank=int(np.count_nonzero(lam > cutoff)),
        tolerance_used=tol,
    )


def q_factor(j, tol: float = DEFAULT_TOL) -> QFactor:
    """Factor a positive Choi matrix as ``Q^dagger Q`` with ``Q = D^{1/2} V^dagger``.

    Eigenvalues within the rank cutoff below zero are clamped to zero.

    :raises CriterionViolation: if J has an eigenvalue below ``-rank_cutoff``
    :raises DomainError: if J is not Hermitian
    """
    j = _choi(j)
    dec = eig_hermitian(j.matrix)
    lam = dec.eigenvalues
    cutoff = rank_cutoff(j, tol)
    if lam[-1] < -cutoff:
        raise CriterionViolation(
            f"Choi matrix is not positive: min eigenvalue {lam[-1]:.6e}", float(lam[-1])
        )
    lam = np.clip(lam, 0.0, None)
    q = np.sqrt(lam)[:, None] * dec.eigenvectors.conj().T
    return QFactor(q=q, eigenvalues=lam, cutoff=cutoff)


def kraus_from_q(qf: QFactor) -> KrausSet:
    """Read Kraus operators off the rows of ``Q`` (canonical basis of the Kraus index).

    Row ``p`` of ``Q`` holds ``conj(M_p[m, i])`` at column ``m*N + i``. Rows whose
    eigenvalue is not strictly positive are dropped.
    """
    q = qf.q
    n = int(round(np.sqrt(q.shape[1])))
    keep = qf.eigenvalues > qf.cutoff
    if not np.any(keep):
        # zero map: one zero operator keeps the set non-empty
        return KrausSet(np.zeros((1, n, n), dtype=complex))
    return KrausSet(q[keep].conj().reshape(-1, n, n))


def kraus_from_choi(j, tol: float = DEFAULT_TOL) -> KrausSet:
    """Minimal Kraus set of a CP map given its Choi matrix.

    ``M_p = sqrt(lambda_p) * reshape(v_p, (N, N))`` for every eigenpair with
    ``lambda_p`` above the rank cutoff.

    :raises CriterionViolation: if J is not positive within ``tol``
    """
    return kraus_from_q(q_factor(j, tol))


def minimal_kraus_rank(j, tol: float = DEFAULT_TOL) -> int:
    """Number of strictly positive Choi eigenvalues (relative cutoff ``tol * max(1, ||J||)``)."""
    j = _choi(j)
    lam = eig_hermitian(j.matrix).eigenvalues
    cutoff = rank_cutoff(j, tol)
    if lam[-1] < -cutoff:
        raise CriterionViolation(
            f"Choi matrix is not positive: min eigenvalue {lam[-1]:.6e}", float(lam[-1])
        )
    return int(np.count_nonzero(lam > cutoff))


def rotate_kraus(ks: KrausSet, u, tol: float = TOL_ORTH) -> KrausSet:
    """Mix Kraus operators by an isometry: ``M'_p = sum_q u[p, q] M_q``.

    :param u: k' x k matrix with ``u^dagger u = I_k``, ``k = len(ks)``, ``k' >= k``
    :raises DomainError: if ``u`` has the wrong shape or is not an isometry
    """
    u = as_matrix(u, "u", square=False)
    k = len(ks)
    if u.shape[1] != k or u.shape[0] < k:
        raise DomainError(f"isometry must have shape (k', {k}) with k' >= {k}, got {u.shape}")
    defect = float(np.max(np.abs(u.conj().T @ u - np.eye(k))))
    if defect > tol:
        raise DomainError(f"u is not an isometry: max |u^dagger u - I| = {defect:.3e}")
    return KrausSet(np.einsum("pq,qab->pab", u, ks.operators))


def channel_residual(a: ChannelMap, b: ChannelMap) -> float:
    """Largest entrywise difference between the images of all matrix units."""
    return float(np.max(np.abs(a.action - b.action)))


def kraus_residual(ks: KrausSet, channel: ChannelMap) -> float:
    return channel_residual(channel_from_kraus(ks), channel)


def _block_apply(channel: ChannelMap, rho: np.ndarray) -> np.ndarray:
    """``(alpha (x) id)(rho)`` for ``rho`` on H (x) C^N, system factor first."""
    n = channel.dim
    r = rho.reshape(n, n, n, n)  # r[i, a, j, b]
    out = np.einsum("iajb,ijmn->manb", r, channel.action)
    return out.reshape(n * n, n * n)


def _positive(a: np.ndarray, tol: float) -> bool:
    if norm(a - a.conj().T) > TOL_SYM * max(1.0, norm(a)):
        return False
    return float(np.linalg.eigvalsh(0.5 * (a + a.conj().T))[0]) >= -tol * max(1.0, norm(a))


def cp_oracle(channel: ChannelMap, trials: int = 100, tol: float = DEFAULT_TOL, seed=None) -> bool:
    """Brute-force test of complete positivity from the definition.

    Applies ``alpha (x) id_N`` (N = dim) to the maximally entangled projector
    and to ``trials`` random positive states on H (x) C^N, alternating pure and
    mixed ones, and checks each image for positivity. Returns False at the
    first violation.
    """
    n = channel.dim
    omega = np.eye(n, dtype=complex).reshape(n * n)
    probe = np.outer(omega, omega.conj())
    if not _positive(_block_apply(channel, probe), tol):
        return False
    rng = np.random.default_rng(seed)
    for t in range(trials):
        cols = 1 if t % 2 == 0 else n * n
        b = rng.normal(size=(n * n, cols)) + 1j * rng.normal(size=(n * n, cols))
        rho = b @ b.conj().T
        rho /= np.trace(rho).real
        if not _positive(_block_apply(channel, rho), tol):
            return False
    return True
