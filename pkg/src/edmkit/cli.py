"""Command-line front end.

Exit codes: 0 success or affirmative verdict, 1 valid input with a negative
verdict (not an EDM, not spherical), 2 usage, parse or validation error.
Indices shown to the user are 1-based.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .composition import composed_sphere, kron_sum_edm
from .edm import check_edm, distance_matrix
from .errors import EdmError, NotEdm, NotSpherical
from .generators import collinear_sq_edm, hypercube_hamming, manhattan_grid, path_edm, random_spherical_edm
from .io import format_number, read_matrix, write_matrix
from .linalg import DEFAULT_MAX_ORDER, DEFAULT_REL_TOL, Tolerance, sym_matrix
from .qap import BRUTE_FORCE_MAX_N, QapInstance, qap_brute_force, qap_shift_lower_bound
from .spherical import EdmClassification, classify

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2


def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    # Registered on the top parser and on every subcommand so the flags may
    # appear on either side of the subcommand name; SUPPRESS keeps the
    # subcommand copies from clobbering values given before it.
    def default(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument("--tol", type=float, default=default(DEFAULT_REL_TOL), help="relative tolerance (default 1e-8)")
    parser.add_argument("--max-order", type=int, default=default(DEFAULT_MAX_ORDER), help="largest matrix order allowed")
    parser.add_argument("--json", action="store_true", default=default(False), help="machine-readable output")
    parser.add_argument("--seed", type=int, default=default(0), help="seed for random families (unsigned 64-bit)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="edmkit", description="Euclidean distance matrix toolkit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a structured distance matrix")
    gen.add_argument("family", choices=["path", "grid", "hypercube", "collinear", "random-spherical"])
    gen.add_argument("--n", type=int, help="order (path, collinear, random-spherical) or grid columns")
    gen.add_argument("--m", type=int, help="grid rows")
    gen.add_argument("--r", type=int, help="hypercube dimension or random embedding dimension")
    gen.add_argument("-o", "--out", default="-", help="output file (default stdout)")
    _global_flags(gen, suppress=True)

    cls = sub.add_parser("classify", help="classify a distance matrix file")
    cls.add_argument("input")
    _global_flags(cls, suppress=True)

    comp = sub.add_parser("compose", help="Kronecker-sum composition of two EDMs")
    comp.add_argument("input1")
    comp.add_argument("input2")
    comp.add_argument("-o", "--out", required=True, help="output file for the composed matrix")
    _global_flags(comp, suppress=True)

    qap = sub.add_parser("qap", help="QAP lower bound and/or exact optimum")
    qap.add_argument("flow")
    qap.add_argument("dist")
    qap.add_argument("--bound", action="store_true", help="spherical-shift lower bound (default)")
    qap.add_argument("--solve", action="store_true", help=f"exhaustive optimum (n <= {BRUTE_FORCE_MAX_N})")
    _global_flags(qap, suppress=True)
    return parser


class UsageError(Exception):
    pass


def _need(args, *names):
    missing = [f"--{name}" for name in names if getattr(args, name) is None]
    if missing:
        raise UsageError(f"gen {args.family} requires {', '.join(missing)}")


def cmd_gen(args) -> int:
    family = args.family
    if family == "path":
        _need(args, "n")
        if args.n > args.max_order:
            raise UsageError(f"order {args.n} exceeds max order {args.max_order}")
        D = path_edm(args.n).matrix
    elif family == "grid":
        _need(args, "m", "n")
        D = manhattan_grid(args.m, args.n, args.max_order)
    elif family == "hypercube":
        _need(args, "r")
        D = hypercube_hamming(args.r, args.max_order).matrix
    elif family == "collinear":
        _need(args, "n")
        if args.n > args.max_order:
            raise UsageError(f"order {args.n} exceeds max order {args.max_order}")
        D = collinear_sq_edm(args.n)
    else:
        _need(args, "n", "r")
        if not 0 <= args.seed < 2**64:
            raise UsageError("--seed must be an unsigned 64-bit integer")
        D = random_spherical_edm(args.n, args.r, args.seed, max_order=args.max_order)
    write_matrix(D, args.out, structured=args.json)
    return EXIT_OK


def classification_report(c: EdmClassification, tol: Tolerance) -> dict:
    """Structured report; the key set is fixed whatever the verdict."""
    sphere, diag = c.sphere, c.diagnostics
    return {
        "is_edm": bool(c.verdict.is_edm),
        "embedding_dim": c.verdict.embedding_dim,
        "rank_D": c.verdict.rank_D,
        "spherical": bool(c.spherical),
        "regular": bool(c.regular),
        "radius_sq": sphere.radius_sq if sphere else None,
        "min_shift": sphere.min_shift if sphere else None,
        "center": sphere.center.tolist() if sphere is not None and sphere.center is not None else None,
        "diagnostics": {
            "rank_test": diag.rank_test if diag else None,
            "psd_shift_test": diag.psd_shift_test if diag else None,
            "center_residual": diag.center_residual if diag else None,
        },
        "tolerance": tol.rel,
    }


def _text_value(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, float)):
        return format_number(v)
    if isinstance(v, list):
        return "[" + ", ".join(format_number(x) for x in v) + "]"
    return str(v)


def _print_report(report: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(report))
        return
    for key, value in report.items():
        if isinstance(value, dict):
            for sub_key, sub_value in value.items():
                print(f"{key}.{sub_key}: {_text_value(sub_value)}")
        else:
            print(f"{key}: {_text_value(value)}")


def cmd_classify(args) -> int:
    tol = Tolerance(args.tol)
    c = classify(read_matrix(args.input), tol)
    report = classification_report(c, tol)
    _print_report(report, args.json)
    if not args.json and c.diagnostics is not None and c.diagnostics.indeterminate:
        print("note: indeterminate-spherical (PSD margin near the tolerance threshold)")
    return EXIT_OK if c.verdict.is_edm else EXIT_NEGATIVE


def cmd_compose(args) -> int:
    tol = Tolerance(args.tol)
    D1 = distance_matrix(read_matrix(args.input1))
    D2 = distance_matrix(read_matrix(args.input2))
    try:
        D = kron_sum_edm(D1, D2, tol, args.max_order)
    except NotEdm as exc:
        print(f"edmkit: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    write_matrix(D, args.out, structured=args.json)

    c1, c2 = classify(D1, tol), classify(D2, tol)
    verdict = check_edm(D, tol)
    report = {"order": D.shape[0], "embedding_dim": verdict.embedding_dim}
    if c1.spherical and c2.spherical:
        sphere = composed_sphere(c1.sphere, c2.sphere)
        report.update(radius_sq=sphere.radius_sq, min_shift=sphere.min_shift)
    _print_report(report, args.json)
    return EXIT_OK


def cmd_qap(args) -> int:
    tol = Tolerance(args.tol)
    inst = QapInstance(sym_matrix(read_matrix(args.flow)), distance_matrix(read_matrix(args.dist)))
    want_bound = args.bound or not args.solve
    if args.solve and inst.n > BRUTE_FORCE_MAX_N:
        raise UsageError(f"--solve is limited to n <= {BRUTE_FORCE_MAX_N}, got n = {inst.n}")

    report: dict = {"n": inst.n}
    if want_bound:
        try:
            b = qap_shift_lower_bound(inst, tol)
        except (NotSpherical, NotEdm) as exc:
            print(f"edmkit: {exc}", file=sys.stderr)
            return EXIT_NEGATIVE
        report.update(
            lower_bound=b.lower_bound,
            shift=b.shift,
            spectrum_flow=b.spectrum_flow.tolist(),
            spectrum_shifted=b.spectrum_shifted.tolist(),
            method=b.method,
        )
    if args.solve:
        perm, value = qap_brute_force(inst)
        report.update(optimum=value, permutation=[p + 1 for p in perm])
    _print_report(report, args.json)
    return EXIT_OK


COMMANDS = {"gen": cmd_gen, "classify": cmd_classify, "compose": cmd_compose, "qap": cmd_qap}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if not (args.tol > 0 and np.isfinite(args.tol)):
            raise UsageError("--tol must be positive")
        if args.max_order < 1:
            raise UsageError("--max-order must be positive")
        return COMMANDS[args.command](args)
    except (UsageError, EdmError, ValueError) as exc:
        print(f"edmkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
