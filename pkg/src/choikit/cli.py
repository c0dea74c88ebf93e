"""Command-line interface.

Usage examples::

    choikit check --input channel.json          # exit 0 if CP, 1 if not, 2 on bad input
    choikit kraus --input channel.json --rotate u.json
    choikit choi < channel.json
    choikit sweep transposition --dims 2 3 4 5
    choikit sweep replacement --dims 2 4 8 --ratio 0.5

Every command exits with 0, 1 or 2. The default tolerance is 1e-10; the
CHOIKIT_TOL environment variable overrides it and ``--tol`` overrides both.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

import numpy as np

from .builtin import KINDS, SweepError, family, truncation_sweep
from .channels import apply, apply_kraus, channel_from_kraus
from .cp import CriterionViolation, DEFAULT_TOL, channel_residual, is_completely_positive, kraus_from_choi, rotate_kraus
from .document import (
    MAX_DIM,
    DocumentError,
    choi_document,
    decode_matrix,
    document_choi,
    kraus_document,
    parse_document,
)
from .linalg import TOL_RESID, DomainError, norm
from .random_ops import ginibre

EXIT_OK, EXIT_NOT_CP, EXIT_BAD_INPUT = 0, 1, 2
SWEEP_COLUMNS = ("dim", "min_eigenvalue", "minimal_rank", "verdict")


class UsageError(Exception):
    pass


def cmd_check(doc, tol: float = DEFAULT_TOL) -> tuple[int, dict]:
    report = is_completely_positive(doc.channel, tol)
    return (EXIT_OK if report.verdict else EXIT_NOT_CP), report.to_dict()


def cmd_kraus(doc, tol: float = DEFAULT_TOL, rotate=None, seed: int | None = 0) -> tuple[int, dict]:
    """Minimal (optionally rotated) Kraus set of a CP channel.

    The set is checked against the input channel on every matrix unit and on
    a few seeded random operands before it is emitted; the largest deviation
    is reported as ``residual``.
    """
    j = document_choi(doc)
    try:
        ks = kraus_from_choi(j, tol)
    except CriterionViolation as exc:
        return EXIT_NOT_CP, {"error": str(exc), "min_eigenvalue": exc.min_eigenvalue}
    except DomainError as exc:
        return EXIT_NOT_CP, {"error": f"Choi matrix is not Hermitian: {exc}", "min_eigenvalue": None}
    if rotate is not None:
        ks = rotate_kraus(ks, rotate)
    channel = doc.channel
    residual = channel_residual(channel_from_kraus(ks), channel)
    rng = np.random.default_rng(seed)
    for _ in range(3):
        x = ginibre(channel.dim, channel.dim, rng)
        residual = max(residual, float(np.max(np.abs(apply_kraus(ks, x) - apply(channel, x)))))
    scale = max(1.0, norm(j.matrix))
    if residual > TOL_RESID * scale:
        return EXIT_NOT_CP, {"error": f"Kraus self-check failed: residual {residual:.3e}", "residual": residual}
    return EXIT_OK, kraus_document(ks, residual=residual)


def cmd_choi(doc) -> tuple[int, dict]:
    return EXIT_OK, choi_document(document_choi(doc))


def cmd_sweep(kind: str, dims, tol: float = DEFAULT_TOL, **params) -> tuple[int, str]:
    gen = family(kind, **params)
    records = truncation_sweep(gen, dims, tol)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_COLUMNS)
    for r in records:
        lam = "" if r.min_eigenvalue is None else repr(r.min_eigenvalue)
        writer.writerow([r.dim, lam, r.minimal_rank, "true" if r.verdict else "false"])
    return EXIT_OK, buf.getvalue()


def _tolerance(arg: float | None) -> float:
    if arg is not None:
        tol = arg
    elif os.environ.get("CHOIKIT_TOL"):
        try:
            tol = float(os.environ["CHOIKIT_TOL"])
        except ValueError:
            raise UsageError(f"CHOIKIT_TOL is not a number: {os.environ['CHOIKIT_TOL']!r}")
    else:
        tol = DEFAULT_TOL
    if not np.isfinite(tol) or tol < 0:
        raise UsageError(f"tolerance must be a non-negative finite number, got {tol}")
    return tol


def _read_json(path: str | None, stdin):
    text = stdin.read() if path in (None, "-") else open(path, encoding="utf-8").read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from exc


def _read_rotation(path: str) -> np.ndarray:
    obj = _read_json(path, None)
    if isinstance(obj, dict):
        obj = obj.get("matrix", obj.get("data"))
    return decode_matrix(obj, where="rotation")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="choikit", description="Complete-positivity checks and Kraus extraction via the Choi matrix.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_input=True):
        p.add_argument("--tol", type=float, default=None, help="tolerance (default 1e-10 or $CHOIKIT_TOL)")
        p.add_argument("--seed", type=int, default=0, help="seed for randomized self-checks")
        if with_input:
            p.add_argument("--input", default=None, help="channel document (default: stdin)")

    common(sub.add_parser("check", help="decide complete positivity"))
    p = sub.add_parser("kraus", help="emit a minimal Kraus set")
    common(p)
    p.add_argument("--rotate", default=None, help="JSON isometry to mix the Kraus operators with")
    common(sub.add_parser("choi", help="emit the Choi matrix"))
    p = sub.add_parser("sweep", help="CP check across truncation dimensions, CSV output")
    common(p, with_input=False)
    p.add_argument("family", help=f"one of {', '.join(k for k in KINDS if k != 'kraus_explicit')}")
    p.add_argument("--dims", type=int, nargs="*", default=[])
    p.add_argument("--ratio", type=float, default=0.5, help="geometric weight ratio for replacement/depolarizing")
    p.add_argument("--mu", type=float, default=0.5, help="mixing weight for depolarizing")
    return parser


def run(argv, stdin, stdout, stderr) -> int:
    try:
        args = build_parser().parse_args(argv)
        tol = _tolerance(args.tol)
        if args.command == "sweep":
            if any(d < 1 or d > MAX_DIM for d in args.dims):
                raise UsageError(f"dims must lie in 1..{MAX_DIM}")
            code, text = cmd_sweep(args.family, args.dims, tol, ratio=args.ratio, mu=args.mu, seed=args.seed)
            stdout.write(text)
            return code
        doc = parse_document(_read_json(args.input, stdin))
        if args.command == "check":
            code, payload = cmd_check(doc, tol)
        elif args.command == "kraus":
            rotate = _read_rotation(args.rotate) if args.rotate else None
            code, payload = cmd_kraus(doc, tol, rotate, args.seed)
        else:
            code, payload = cmd_choi(doc)
        if code != EXIT_OK and "error" in payload:
            print(payload["error"], file=stderr)
        json.dump(payload, stdout)
        stdout.write("\n")
        return code
    except (UsageError, DocumentError, DomainError, SweepError, OSError) as exc:
        print(f"choikit: error: {exc}", file=stderr)
        return EXIT_BAD_INPUT
    except Exception as exc:  # exit-code contract: never escape with a traceback
        print(f"choikit: unexpected error: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_BAD_INPUT


def main(argv=None) -> int:
    return run(argv, sys.stdin, sys.stdout, sys.stderr)


if __name__ == "__main__":
    raise SystemExit(main())
