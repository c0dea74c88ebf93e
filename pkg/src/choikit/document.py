"""JSON channel documents.

A document looks like::

    {"dim": 2, "representation": "kraus", "data": [[[[1, 0], [0, 0]], ...], ...]}

Complex numbers are ``[re, im]`` pairs. ``representation`` is one of
``kraus`` (list of dim x dim matrices), ``choi`` (one dim^2 x dim^2 matrix,
requires ``"ordering": "output-first"``), ``action`` (dim x dim grid of
dim x dim matrices, entry [i][j] being the image of P_ij) or ``builtin``
(``"builtin": {"kind": ..., "params": {...}}``, no ``data``).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from numbers import Real

import numpy as np

from .builtin import ChannelSpec, make_channel
from .channels import (
    ORDERING,
    ChannelMap,
    ChoiMatrix,
    KrausSet,
    build_choi,
    channel_from_choi,
    channel_from_kraus,
)
from .linalg import DomainError

REPRESENTATIONS = ("kraus", "choi", "action", "builtin")
# the dense action array holds dim**4 entries
MAX_DIM = 32


class DocumentError(ValueError):
    """Malformed or inconsistent channel document."""


@dataclass(frozen=True)
class ChannelDocument:
    dim: int
    representation: str
    channel: ChannelMap
    choi: ChoiMatrix | None = None
    kraus: KrausSet | None = None


def _real(x, where: str) -> float:
    if isinstance(x, bool) or not isinstance(x, Real):
        raise DocumentError(f"{where}: expected a number, got {x!r}")
    try:
        x = float(x)
    except OverflowError:
        x = math.inf
    if not math.isfinite(x):
        raise DocumentError(f"{where}: non-finite number")
    return x


def _scalar(x, where: str) -> complex:
    if not isinstance(x, list) or len(x) != 2:
        raise DocumentError(f"{where}: complex entries must be [re, im] pairs, got {x!r}")
    return complex(_real(x[0], where), _real(x[1], where))


def decode_matrix(data, rows: int | None = None, cols: int | None = None, where: str = "matrix") -> np.ndarray:
    """Nested rows of [re, im] pairs to a complex array, checking the shape when given."""
    if not isinstance(data, list) or not data or not all(isinstance(r, list) for r in data):
        raise DocumentError(f"{where}: expected a non-empty list of rows")
    if rows is not None and len(data) != rows:
        raise DocumentError(f"{where}: expected {rows} rows, got {len(data)}")
    width = len(data[0]) if cols is None else cols
    out = np.empty((len(data), width), dtype=complex)
    for r, row in enumerate(data):
        if len(row) != width:
            raise DocumentError(f"{where}: row {r} has {len(row)} entries, expected {width}")
        for c, x in enumerate(row):
            out[r, c] = _scalar(x, f"{where}[{r}][{c}]")
    if width == 0:
        raise DocumentError(f"{where}: empty rows")
    return out


def encode_matrix(a: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(a, dtype=complex)]


def _decode_list(data, dim: int, where: str) -> np.ndarray:
    if not isinstance(data, list) or not data:
        raise DocumentError(f"{where}: expected a non-empty list of {dim}x{dim} matrices")
    return np.stack([decode_matrix(m, dim, dim, f"{where}[{p}]") for p, m in enumerate(data)])


def _decode_params(kind: str, params, dim: int) -> dict:
    if params is None:
        return {}
    if not isinstance(params, dict):
        raise DocumentError("builtin.params must be an object")
    out = {}
    for key, value in params.items():
        if key in ("W", "U"):
            out[key] = decode_matrix(value, dim, dim, f"params.{key}")
        elif key == "operators":
            out[key] = _decode_list(value, dim, "params.operators")
        elif key == "mu":
            out[key] = _real(value, "params.mu")
        else:
            raise DocumentError(f"unknown parameter {key!r} for builtin {kind!r}")
    return out


def parse_document(obj) -> ChannelDocument:
    """Validate a decoded JSON object and build the channel it describes.

    :raises DocumentError: on any schema, shape, or parameter problem
    """
    if not isinstance(obj, dict):
        raise DocumentError("document must be a JSON object")
    dim = obj.get("dim")
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise DocumentError(f"dim must be a positive integer, got {dim!r}")
    if dim > MAX_DIM:
        raise DocumentError(f"dim {dim} exceeds the supported maximum {MAX_DIM}")
    rep = obj.get("representation")
    if rep not in REPRESENTATIONS:
        raise DocumentError(f"representation must be one of {REPRESENTATIONS}, got {rep!r}")
    try:
        if rep == "kraus":
            ks = KrausSet(_decode_list(obj.get("data"), dim, "data"))
            return ChannelDocument(dim, rep, channel_from_kraus(ks), kraus=ks)
        if rep == "choi":
            if obj.get("ordering") != ORDERING:
                raise DocumentError(f"choi documents require \"ordering\": \"{ORDERING}\", got {obj.get('ordering')!r}")
            j = ChoiMatrix(decode_matrix(obj.get("data"), dim * dim, dim * dim, "data"))
            return ChannelDocument(dim, rep, channel_from_choi(j), choi=j)
        if rep == "action":
            grid = obj.get("data")
            if not isinstance(grid, list) or len(grid) != dim:
                raise DocumentError(f"data: expected a {dim}x{dim} grid of matrices")
            action = np.stack([_decode_list(row, dim, f"data[{i}]") for i, row in enumerate(grid)])
            if action.shape != (dim, dim, dim, dim):
                raise DocumentError(f"data: expected a {dim}x{dim} grid of matrices")
            return ChannelDocument(dim, rep, ChannelMap(action))
        spec = obj.get("builtin")
        if not isinstance(spec, dict) or not isinstance(spec.get("kind"), str):
            raise DocumentError("builtin documents need \"builtin\": {\"kind\": ..., \"params\": {...}}")
        kind = spec["kind"]
        params = _decode_params(kind, spec.get("params"), dim)
        return ChannelDocument(dim, rep, make_channel(ChannelSpec(kind, dim, params)))
    except DomainError as exc:
        raise DocumentError(str(exc)) from exc


def choi_document(j: ChoiMatrix) -> dict:
    return {"dim": j.dim, "representation": "choi", "ordering": j.ordering, "data": encode_matrix(j.matrix)}


def kraus_document(ks: KrausSet, **extra) -> dict:
    doc = {"dim": ks.dim, "representation": "kraus", "data": [encode_matrix(m) for m in ks.operators]}
    doc.update(extra)
    return doc


def document_choi(doc: ChannelDocument) -> ChoiMatrix:
    """The document's Choi matrix; a Choi input is returned untouched."""
    return doc.choi if doc.choi is not None else build_choi(doc.channel)
