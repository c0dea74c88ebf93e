"""Linear maps on N x N matrices in three interchangeable forms.

``ChannelMap`` stores the action of a map on every matrix unit and is the hub
through which the other forms convert. ``ChoiMatrix`` uses the output-first
tensor ordering::

    J = sum_ij alpha(P_ij) (x) P_ij

so entry ``J[m*N + i, n*N + j]`` (0-based) is entry ``(m, n)`` of ``alpha(P_ij)``.
This puts the channel output on the left factor, the reverse of the ordering
most quantum-information libraries use.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .linalg import DomainError, TOL_SYM, as_matrix, is_hermitian, matrix_units, norm

ORDERING = "output-first"


@dataclass(frozen=True)
class ChannelMap:
    """A linear map given by its action on matrix units.

    ``action[i, j]`` is the N x N image of ``P_ij`` (0-based indices), so
    ``action`` has shape (N, N, N, N).
    """

    action: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.action, dtype=complex)
        if a.ndim != 4 or len(set(a.shape)) != 1 or a.shape[0] < 1:
            raise DomainError(f"action must have shape (N, N, N, N), got {a.shape}")
        if not np.all(np.isfinite(a)):
            raise DomainError("action contains NaN or Inf")
        a.setflags(write=False)
        object.__setattr__(self, "action", a)

    @property
    def dim(self) -> int:
        return self.action.shape[0]

    def image(self, i: int, j: int) -> np.ndarray:
        """Image of the matrix unit ``P_ij`` (1-based indices)."""
        return self.action[i - 1, j - 1]

    def __call__(self, x) -> np.ndarray:
        return apply(self, x)

    def allclose(self, other: "ChannelMap", atol: float = 1e-12) -> bool:
        return self.dim == other.dim and np.allclose(self.action, other.action, rtol=0, atol=atol)


@dataclass(frozen=True)
class KrausSet:
    """Operators ``M_p`` of the form ``alpha(X) = sum_p M_p X M_p^dagger``."""

    operators: np.ndarray

    def __post_init__(self):
        ops = np.asarray(self.operators, dtype=complex)
        if ops.ndim == 2:
            ops = ops[None]
        if ops.ndim != 3 or ops.shape[0] < 1 or ops.shape[1] != ops.shape[2] or ops.shape[1] < 1:
            raise DomainError(f"Kraus operators must be a non-empty list of square matrices, got {ops.shape}")
        if not np.all(np.isfinite(ops)):
            raise DomainError("Kraus operators contain NaN or Inf")
        ops.setflags(write=False)
        object.__setattr__(self, "operators", ops)

    @property
    def dim(self) -> int:
        return self.operators.shape[1]

    def __len__(self) -> int:
        return self.operators.shape[0]

    def __iter__(self):
        return iter(self.operators)

    def is_trace_preserving(self, tol: float = 1e-10) -> bool:
        s = np.einsum("pki,pkj->ij", self.operators.conj(), self.operators)
        return bool(np.allclose(s, np.eye(self.dim), rtol=0, atol=tol))


@dataclass(frozen=True)
class ChoiMatrix:
    """The N^2 x N^2 matrix ``sum_ij alpha(P_ij) (x) P_ij``."""

    matrix: np.ndarray
    ordering: str = field(default=ORDERING)

    def __post_init__(self):
        if self.ordering != ORDERING:
            raise DomainError(f"unsupported Choi ordering {self.ordering!r}, expected {ORDERING!r}")
        m = as_matrix(self.matrix, "Choi matrix")
        n = int(round(np.sqrt(m.shape[0])))
        if n * n != m.shape[0]:
            raise DomainError(f"Choi matrix side {m.shape[0]} is not a perfect square")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return int(round(np.sqrt(self.matrix.shape[0])))

    def is_hermitian(self, tol: float = TOL_SYM) -> bool:
        return is_hermitian(self.matrix, tol)


def _check_operand(x, dim: int) -> np.ndarray:
    x = as_matrix(x, "x")
    if x.shape != (dim, dim):
        raise DomainError(f"expected a {dim}x{dim} operand, got {x.shape}")
    return x


def apply(channel: ChannelMap, x) -> np.ndarray:
    """``alpha(x) = sum_ij x[i, j] * action[i, j]``."""
    x = _check_operand(x, channel.dim)
    return np.einsum("ij,ijmn->mn", x, channel.action)


def apply_kraus(ks: KrausSet, x) -> np.ndarray:
    """``sum_p M_p x M_p^dagger``."""
    x = _check_operand(x, ks.dim)
    m = ks.operators
    return np.einsum("pab,bc,pdc->ad", m, x, m.conj())


def identity_channel(dim: int) -> ChannelMap:
    return ChannelMap(matrix_units(dim))


def channel_from_kraus(ks: KrausSet) -> ChannelMap:
    m = ks.operators
    # alpha(P_ij)[a, b] = sum_p M_p[a, i] conj(M_p[b, j])
    return ChannelMap(np.einsum("pai,pbj->ijab", m, m.conj()))


def channel_from_function(fn, dim: int) -> ChannelMap:
    """Tabulate an arbitrary linear callable on the matrix units."""
    units = matrix_units(dim)
    action = np.empty_like(units)
    for i in range(dim):
        for j in range(dim):
            action[i, j] = _check_operand(fn(units[i, j].copy()), dim)
    return ChannelMap(action)


def build_choi(channel: ChannelMap) -> ChoiMatrix:
    """Choi matrix in output-first order, ``sum_ij action[i, j] (x) P_ij``."""
    n = channel.dim
    # J[(m, i), (n, j)] = action[i, j, m, n]
    return ChoiMatrix(channel.action.transpose(2, 0, 3, 1).reshape(n * n, n * n))


def channel_from_choi(j: ChoiMatrix) -> ChannelMap:
    if not isinstance(j, ChoiMatrix):
        j = ChoiMatrix(j)
    n = j.dim
    return ChannelMap(j.matrix.reshape(n, n, n, n).transpose(1, 3, 0, 2))


def compose(a: ChannelMap, b: ChannelMap) -> ChannelMap:
    """The map ``X -> a(b(X))``."""
    if a.dim != b.dim:
        raise DomainError(f"dimension mismatch: {a.dim} vs {b.dim}")
    return ChannelMap(np.einsum("ijkl,klmn->ijmn", b.action, a.action))


def convex_mix(a: ChannelMap, b: ChannelMap, mu: float) -> ChannelMap:
    """The map ``mu * a + (1 - mu) * b``. ``mu`` is not restricted to [0, 1] here."""
    if a.dim != b.dim:
        raise DomainError(f"dimension mismatch: {a.dim} vs {b.dim}")
    return ChannelMap(mu * a.action + (1.0 - mu) * b.action)


def linear_combination(coeffs: Sequence[complex], channels: Sequence[ChannelMap]) -> ChannelMap:
    dims = {c.dim for c in channels}
    if len(dims) != 1:
        raise DomainError(f"dimension mismatch: {sorted(dims)}")
    return ChannelMap(sum(c * ch.action for c, ch in zip(coeffs, channels)))


def partial_trace_output(j: ChoiMatrix) -> np.ndarray:
    """Trace out the left (output) factor of a Choi matrix.

    The result is the N x N matrix ``[tr alpha(P_ij)]_ij``; it equals the
    identity exactly when the map is trace preserving.
    """
    n = j.dim
    return np.einsum("mimj->ij", j.matrix.reshape(n, n, n, n))


def is_trace_preserving(channel: ChannelMap, tol: float = 1e-10) -> bool:
    pt = partial_trace_output(build_choi(channel))
    return bool(np.allclose(pt, np.eye(channel.dim), rtol=0, atol=tol))


def is_hermiticity_preserving(channel: ChannelMap, tol: float = TOL_SYM) -> bool:
    """Hermitian Choi matrix, equivalently ``alpha(X^dagger) == alpha(X)^dagger``."""
    return build_choi(channel).is_hermitian(tol)


def channel_norm(channel: ChannelMap) -> float:
    return norm(channel.action.reshape(channel.dim ** 2, -1))
