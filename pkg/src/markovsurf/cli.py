"""Command line front end.

Exit codes: 0 on success or a positive verdict, 1 when a verification finds a
counterexample or a matrix is not a plane degeneration, 2 on invalid input.
All integers in JSON output are decimal strings.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from . import oracle
from .cstar import CstarMatrix, cstar_from_matrix, cstar_to_dict
from .errors import MarkovSurfError
from .exact import IntMat, to_int
from .fwpp import toric_markov_surface, toric_surface_report
from .markov import MarkovEdge, expand_tree, tree_to_dot, tree_to_json
from .markov_cstar import (
    build_markov_surface,
    classify_plane_degeneration,
    diagram_dot,
    diagram_text,
    surface_for_pair,
)

log = logging.getLogger("markovsurf")

EXIT_OK, EXIT_NEGATIVE, EXIT_INVALID = 0, 1, 2


class InputError(Exception):
    pass


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _nonneg_int(s: str) -> int:
    try:
        v = to_int(s)
    except (ValueError, TypeError):
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {v}")
    return v


def _pos_int(s: str) -> int:
    v = _nonneg_int(s)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _big_int(s: str) -> int:
    try:
        return to_int(s)
    except (ValueError, TypeError):
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}")


def load_matrix_file(path: str):
    """Read a matrix file and return an ``IntMat`` or a ``CstarMatrix``.

    Accepted shapes: a bare list of rows, ``{"matrix": rows}``, or the five
    parameters ``l1, l2, d0, d1, d2`` (as written by ``surface``).
    """
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        if isinstance(data, list):
            return IntMat(data)
        if isinstance(data, dict):
            if "matrix" in data:
                return IntMat(data["matrix"])
            keys = ("l1", "l2", "d0", "d1", "d2")
            if all(k in data for k in keys):
                return CstarMatrix(*(to_int(data[k]) for k in keys))
    except (TypeError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from exc
    raise InputError(f"{path}: expected a list of rows, a 'matrix' entry or l1, l2, d0, d1, d2")


def _as_cstar(obj):
    if isinstance(obj, CstarMatrix):
        return obj
    if obj.shape == (3, 4):
        return cstar_from_matrix(obj)
    return None


def cmd_tree(args) -> int:
    levels = expand_tree(args.depth)
    if args.format == "dot":
        sys.stdout.write(tree_to_dot(levels))
    else:
        _emit(tree_to_json(levels, edges=args.edges))
    return EXIT_OK


def _edge_surface_output(S, fmt: str) -> int:
    if fmt == "text":
        sys.stdout.write(diagram_text(S))
    elif fmt == "dot":
        sys.stdout.write(diagram_dot(S))
    else:
        _emit(S.to_dict())
    return EXIT_OK


def cmd_surface(args) -> int:
    if args.triple is not None:
        if args.format != "json":
            raise InputError("--triple supports only --format json")
        _emit(toric_markov_surface(args.triple).to_dict())
        return EXIT_OK
    if args.edge is not None:
        return _edge_surface_output(surface_for_pair(*args.edge), args.format)
    obj = load_matrix_file(args.matrix)
    M = _as_cstar(obj)
    if M is None:
        if args.format != "json":
            raise InputError("2 x 3 matrices support only --format json")
        _emit(toric_surface_report(obj).to_dict())
        return EXIT_OK
    verdict = classify_plane_degeneration(M)
    if verdict.kind == "MarkovCstar" and not verdict.swapped:
        return _edge_surface_output(build_markov_surface(verdict.edge), args.format)
    if args.format != "json":
        raise InputError("diagrams exist only for Markov C*-surfaces")
    _emit(cstar_to_dict(M))
    return EXIT_OK


def cmd_classify(args) -> int:
    obj = load_matrix_file(args.matrix)
    M = _as_cstar(obj)
    verdict = classify_plane_degeneration(M if M is not None else obj)
    _emit(verdict.to_dict())
    return EXIT_OK if verdict.is_degeneration else EXIT_NEGATIVE


def cmd_verify(args) -> int:
    what = args.check
    if what == "diophantine":
        rep = oracle.check_dio_equals_squared_markov(args.bound)
    elif what == "delta":
        rep = oracle.delta_never_square(args.bound, grid_points=args.grid)
    elif what == "tree":
        rep = oracle.tree_suite(args.depth)
    elif what == "fibers":
        rep = oracle.verify_fibers(args.lmax, tol=args.tol)
    elif what == "cones":
        rep = oracle.cone_roundtrip(args.nmax)
    elif what == "case-d":
        rep = oracle.case_D_k2_bound(range(2, args.l0max + 1), range(-args.d0max, 0),
                                     range(-args.d1max, args.d1max + 1))
    else:  # argparse restricts the choices
        raise InputError(what)
    log.info("%s finished in %.3f s", rep.name, rep.elapsed)
    _emit(rep.to_dict())
    return EXIT_OK if rep.passed else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="markovsurf", description="Markov surfaces and degenerations of the plane")
    p.add_argument("-v", "--verbose", action="count", default=0, help="more log output on stderr")
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("tree", help="levels of the Markov tree")
    t.add_argument("--depth", type=_nonneg_int, required=True)
    t.add_argument("--format", choices=("json", "dot"), default="json")
    t.add_argument("--edges", action="store_true", help="include the edges reaching each level")
    t.set_defaults(func=cmd_tree)

    s = sub.add_parser("surface", help="surface package for a triple, an edge or a matrix file")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--triple", nargs=3, type=_pos_int, metavar=("X", "Y", "Z"))
    g.add_argument("--edge", nargs=2, type=_pos_int, metavar=("K1", "K2"))
    g.add_argument("--matrix", metavar="PATH")
    s.add_argument("--format", choices=("json", "text", "dot"), default="json")
    s.set_defaults(func=cmd_surface)

    c = sub.add_parser("classify", help="is the surface of a matrix a degeneration of the plane")
    c.add_argument("--matrix", metavar="PATH", required=True)
    c.set_defaults(func=cmd_classify)

    v = sub.add_parser("verify", help="run a brute-force or numeric check")
    vs = v.add_subparsers(dest="check", required=True)
    x = vs.add_parser("diophantine")
    x.add_argument("--bound", type=_pos_int, default=10_000)
    x = vs.add_parser("delta")
    x.add_argument("--bound", type=_pos_int, default=1_000_000)
    x.add_argument("--grid", type=_nonneg_int, default=10_000)
    x = vs.add_parser("tree")
    x.add_argument("--depth", type=_nonneg_int, default=8)
    x = vs.add_parser("fibers")
    x.add_argument("--lmax", type=_pos_int, default=20)
    x.add_argument("--tol", type=float, default=1e-9)
    x = vs.add_parser("cones")
    x.add_argument("--nmax", type=_pos_int, default=200)
    x = vs.add_parser("case-d")
    x.add_argument("--l0max", type=_pos_int, default=30)
    x.add_argument("--d0max", type=_pos_int, default=30)
    x.add_argument("--d1max", type=_pos_int, default=30)
    v.set_defaults(func=cmd_verify)
    return p


def _configure_logging(verbose: int) -> None:
    env = os.environ.get("MARKOVSURF_LOG", "").upper()
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbose, logging.DEBUG)
    if env and not verbose:
        level = getattr(logging, env, logging.WARNING)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)
    try:
        return args.func(args)
    except (MarkovSurfError, InputError) as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
