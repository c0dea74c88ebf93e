"""Random instances for tests, demos, and self-checks.

Every function takes a ``numpy.random.Generator`` (or seed) so runs are reproducible.
"""
from __future__ import annotations

import numpy as np

from .channels import ChannelMap, KrausSet, build_choi, channel_from_kraus


def _rng(rng):
    return rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)


def ginibre(rows: int, cols: int, rng=None) -> np.ndarray:
    rng = _rng(rng)
    return (rng.normal(size=(rows, cols)) + 1j * rng.normal(size=(rows, cols))) / np.sqrt(2)


def random_unitary(n: int, rng=None) -> np.ndarray:
    """Haar-random unitary via QR with phase correction."""
    q, r = np.linalg.qr(ginibre(n, n, rng))
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_isometry(rows: int, cols: int, rng=None) -> np.ndarray:
    """A rows x cols matrix with orthonormal columns (rows >= cols)."""
    if rows < cols:
        raise ValueError(f"an isometry needs rows >= cols, got {rows} x {cols}")
    return random_unitary(rows, rng)[:, :cols]


def random_density(n: int, rank: int | None = None, rng=None) -> np.ndarray:
    """Positive unit-trace matrix of the given rank (full rank by default)."""
    b = ginibre(n, rank or n, rng)
    w = b @ b.conj().T
    return w / np.trace(w).real


def random_kraus_set(n: int, k: int, rng=None, trace_preserving: bool = False) -> KrausSet:
    """``k`` Gaussian Kraus operators; optionally normalized to ``sum M^dagger M = I``."""
    g = ginibre(k * n, n, _rng(rng))
    if trace_preserving:
        # orthonormal columns of the stacked operators <=> trace preservation
        g, _ = np.linalg.qr(g)
    return KrausSet(g.reshape(k, n, n))


def random_cp_channel(n: int, k: int, rng=None) -> ChannelMap:
    return channel_from_kraus(random_kraus_set(n, k, rng))


def random_non_cp_channel(n: int, rng=None, margin: float = 1e-6, max_tries: int = 1000) -> ChannelMap:
    """Hermiticity-preserving map that is certified not CP.

    Built as a difference of two random CP maps; redrawn until the Choi
    spectrum has an eigenvalue at or below ``-margin``.
    """
    rng = _rng(rng)
    for _ in range(max_tries):
        j1 = channel_from_kraus(random_kraus_set(n, int(rng.integers(1, n * n + 1)), rng))
        j2 = channel_from_kraus(random_kraus_set(n, int(rng.integers(1, n * n + 1)), rng))
        t = rng.uniform(0.2, 2.0)
        candidate = ChannelMap(j1.action - t * j2.action)
        m = build_choi(candidate).matrix
        lam_min = np.linalg.eigvalsh(0.5 * (m + m.conj().T))[0]
        if lam_min <= -margin:
            return candidate
    raise RuntimeError("failed to draw a non-CP channel")
