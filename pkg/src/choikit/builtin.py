"""Built-in channel families and the truncation-dimension sweep.

Kinds:

* ``identity``             X -> X
* ``transposition``        X -> X^T (positive but not CP)
* ``replacement``          X -> tr(X) W
* ``depolarizing``         X -> mu tr(X) W + (1 - mu) X
* ``unitary_conjugation``  X -> U X U^dagger
* ``kraus_explicit``       X -> sum_p M_p X M_p^dagger

``W`` must be positive semidefinite with unit trace.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from .channels import (
    ChannelMap,
    KrausSet,
    channel_from_kraus,
    convex_mix,
    identity_channel,
)
from .cp import is_completely_positive
from .random_ops import random_unitary
from .linalg import DomainError, TOL_RESID, TOL_SYM, as_matrix, eig_hermitian, matrix_units, norm

KINDS = ("identity", "transposition", "replacement", "depolarizing", "unitary_conjugation", "kraus_explicit")


@dataclass(frozen=True)
class ChannelSpec:
    kind: str
    dim: int
    params: dict = field(default_factory=dict)


def geometric_weights(dim: int, ratio: float = 0.5) -> np.ndarray:
    """Diagonal W with ``w_nn`` proportional to ``ratio**n``, renormalized to unit trace."""
    w = ratio ** np.arange(1, dim + 1, dtype=float)
    return np.diag(w / w.sum()).astype(complex)


def _validate_w(w, dim: int) -> np.ndarray:
    w = as_matrix(w, "W")
    if w.shape != (dim, dim):
        raise DomainError(f"W must be {dim}x{dim}, got {w.shape}")
    scale = max(1.0, norm(w))
    if norm(w - w.conj().T) > TOL_SYM * scale:
        raise DomainError("W is not Hermitian")
    lam = np.linalg.eigvalsh(0.5 * (w + w.conj().T))
    if lam[0] < -TOL_SYM * scale:
        raise DomainError(f"W is not positive semidefinite: min eigenvalue {lam[0]:.3e}")
    tr = np.trace(w)
    if abs(tr - 1.0) > TOL_RESID:
        raise DomainError(f"W must have unit trace, got {tr.real:.12g}")
    return w


def _validate_mu(mu) -> float:
    mu = float(mu)
    if not 0.0 <= mu <= 1.0:
        raise DomainError(f"mu must lie in [0, 1], got {mu}")
    return mu


def _validate_unitary(u, dim: int) -> np.ndarray:
    u = as_matrix(u, "U")
    if u.shape != (dim, dim):
        raise DomainError(f"U must be {dim}x{dim}, got {u.shape}")
    if np.max(np.abs(u.conj().T @ u - np.eye(dim))) > 1e-10:
        raise DomainError("U is not unitary")
    return u


def replacement_channel(w) -> ChannelMap:
    w = np.asarray(w, dtype=complex)
    n = w.shape[0]
    action = np.zeros((n, n, n, n), dtype=complex)
    for i in range(n):
        action[i, i] = w
    return ChannelMap(action)


def transposition_channel(dim: int) -> ChannelMap:
    return ChannelMap(matrix_units(dim).transpose(1, 0, 2, 3))


def make_channel(spec: ChannelSpec) -> ChannelMap:
    """Build the ChannelMap for a spec, validating its parameters.

    :raises DomainError: unknown kind, bad dimension, or invalid parameters
    """
    kind, n, p = spec.kind, spec.dim, spec.params
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 1:
        raise DomainError(f"dim must be a positive integer, got {n!r}")
    if kind == "identity":
        return identity_channel(n)
    if kind == "transposition":
        return transposition_channel(n)
    if kind == "replacement":
        return replacement_channel(_validate_w(_param(p, "W"), n))
    if kind == "depolarizing":
        w = _validate_w(_param(p, "W"), n)
        mu = _validate_mu(_param(p, "mu"))
        return convex_mix(replacement_channel(w), identity_channel(n), mu)
    if kind == "unitary_conjugation":
        return channel_from_kraus(KrausSet(_validate_unitary(_param(p, "U"), n)))
    if kind == "kraus_explicit":
        ks = KrausSet(_param(p, "operators"))
        if ks.dim != n:
            raise DomainError(f"Kraus operators are {ks.dim}x{ks.dim}, expected {n}x{n}")
        return channel_from_kraus(ks)
    raise DomainError(f"unknown channel kind {kind!r}; expected one of {', '.join(KINDS)}")


def _param(params: dict, key: str):
    if key not in params:
        raise DomainError(f"missing parameter {key!r}")
    return params[key]


def _replacement_kraus(w: np.ndarray) -> np.ndarray:
    n = w.shape[0]
    if np.array_equal(w, np.diag(np.diag(w))):
        weights, basis = np.diag(w).real, np.eye(n, dtype=complex)
    else:
        dec = eig_hermitian(w)
        weights, basis = dec.eigenvalues, dec.eigenvectors
    weights = np.clip(weights, 0.0, None)
    # M_ij = sqrt(w_i) |f_i><e_j| with f_i the eigenbasis of W
    ops = np.einsum("i,ai,jb->ijab", np.sqrt(weights), basis, np.eye(n))
    return ops.reshape(n * n, n, n)


def reference_kraus(spec: ChannelSpec) -> KrausSet | None:
    """Closed-form Kraus operators for the CP kinds; ``None`` for transposition.

    Replacement uses ``M_ij = sqrt(w_i) P_ij`` in the eigenbasis of W (for a
    diagonal W, the standard basis). Depolarizing is the union of the scaled
    replacement set and ``sqrt(1 - mu) I``.
    """
    make_channel(spec)
    kind, n, p = spec.kind, spec.dim, spec.params
    if kind == "transposition":
        return None
    if kind == "identity":
        return KrausSet(np.eye(n, dtype=complex))
    if kind == "replacement":
        return KrausSet(_replacement_kraus(as_matrix(p["W"])))
    if kind == "depolarizing":
        mu = float(p["mu"])
        ops = np.sqrt(mu) * _replacement_kraus(as_matrix(p["W"]))
        ident = np.sqrt(1.0 - mu) * np.eye(n, dtype=complex)[None]
        return KrausSet(np.concatenate([ops, ident]))
    if kind == "unitary_conjugation":
        return KrausSet(as_matrix(p["U"]))
    return KrausSet(p["operators"])


@dataclass(frozen=True)
class SweepRecord:
    dim: int
    min_eigenvalue: float | None
    minimal_rank: int
    verdict: bool


class SweepError(RuntimeError):
    def __init__(self, dim: int, cause: Exception):
        super().__init__(f"channel family failed at dim {dim}: {cause}")
        self.dim = dim


def family(kind: str, **params) -> Callable[[int], ChannelSpec]:
    """A spec generator over the dimension.

    ``replacement`` and ``depolarizing`` use geometric weights with
    ``params['ratio']`` (default 0.5) unless an explicit callable ``W(dim)``
    is passed. ``unitary_conjugation`` uses a seeded Haar unitary per dim.
    """
    if kind not in KINDS or kind == "kraus_explicit":
        raise DomainError(f"no dimension family for kind {kind!r}")
    ratio = float(params.get("ratio", 0.5))
    w_of = params.get("W") or (lambda d: geometric_weights(d, ratio))

    def gen(dim: int) -> ChannelSpec:
        if kind in ("identity", "transposition"):
            return ChannelSpec(kind, dim)
        if kind == "replacement":
            return ChannelSpec(kind, dim, {"W": w_of(dim)})
        if kind == "depolarizing":
            return ChannelSpec(kind, dim, {"W": w_of(dim), "mu": params.get("mu", 0.5)})
        return ChannelSpec(kind, dim, {"U": random_unitary(dim, params.get("seed", 0))})

    return gen


def truncation_sweep(gen: Callable[[int], ChannelSpec], dims: Iterable[int], tol: float = 1e-10) -> list[SweepRecord]:
    """Run the CP check on one family member per truncation dimension, in ascending order."""
    records = []
    for d in sorted(dims):
        try:
            report = is_completely_positive(make_channel(gen(d)), tol)
        except Exception as exc:
            raise SweepError(d, exc) from exc
        records.append(SweepRecord(d, report.min_eigenvalue, report.minimal_rank, report.verdict))
    return records
