"""
Command line of quower.

    quower [-v] [--log-file PATH] [--threads K] [--time-limit S] [--no-symmetry] COMMAND ...

Commands: ``xi``, ``c``, ``lift``, ``extract``, ``verify``, ``lp`` and ``table``.
Board coordinates are printed 1-based; JSON documents store them 0-based.

Exit codes: 0 success, 1 invalid cover, 2 invalid arguments or malformed
input, 3 solver time limit reached.
"""
from __future__ import annotations

import argparse
import logging
import sys
from typing import Sequence

import pandas as pd

from quower import __version__
from quower.board import BoardCover, BoardVariant, is_cover, render_ascii, to_one_based
from quower.constructions import best_construction, known_bounds
from quower.cover_doc import board_document, dumps, read_document, short_document, verify_document
from quower.errors import CoverFormatError, InputError, InvariantError, UnsupportedError
from quower.field import field, prime_power
from quower.lifting import PsiMap, board_cover_for_lift, extract, lift, normalize_cover
from quower.log_cfg import LogConfig, logger
from quower.projective import ProjPoint, ShortCover, covers_plane
from quower.setcover import (SolveOptions, Status, board_cover_from, build_board_instance,
                             build_windrose_instance, solve_exact, wind_roses_from, write_lp)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2
EXIT_TIMEOUT = 3


def _symbol(variant: BoardVariant) -> str:
    return "xi" if variant is BoardVariant.FULL else "xi_D"


def _board_centers(cover: BoardCover) -> str:
    return " ".join("({},{})".format(*to_one_based(c)) for c in cover.sorted_centers())


def _points(points: Sequence[ProjPoint]) -> str:
    return " ".join(f"({p})" for p in sorted(points))


def _options(args: argparse.Namespace) -> SolveOptions:
    return SolveOptions(symmetry="off" if args.no_symmetry else None,
                        time_limit=args.time_limit, workers=args.threads)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fw:
            fw.write(text)


def _cmd_xi(args: argparse.Namespace) -> int:
    n, variant = args.n, BoardVariant(args.variant)
    name = _symbol(variant)
    if args.method == "bounds":
        lower, upper = known_bounds(n, variant)
        print(f"{name}({n}) = {lower}" if lower == upper else f"{name}({n}) in [{lower}, {upper}]")
        return EXIT_OK
    if args.method == "construct":
        cover = best_construction(n, variant)
        relation, status = "<=", EXIT_OK
    else:
        inst = build_board_instance(n, variant)
        result = solve_exact(inst, _options(args))
        cover = board_cover_from(inst, result)
        if result.status is Status.OPTIMAL:
            relation, status = "=", EXIT_OK
        else:
            relation, status = "<=", EXIT_TIMEOUT
            print(f"time limit reached; lower bound {result.proof.lower_bound}", file=sys.stderr)
    verified = is_cover(cover).covered
    if args.json:
        sys.stdout.write(dumps(board_document(cover)))
        return status if verified else EXIT_INVALID
    print(f"{name}({n}) {relation} {cover.size}")
    print(f"centers: {_board_centers(cover)}")
    print(f"verified: {'yes' if verified else 'no'}")
    if args.ascii:
        print(render_ascii(cover))
    return status if verified else EXIT_INVALID


def _cmd_c(args: argparse.Namespace) -> int:
    q = args.q
    spec = field(q)
    if args.method == "lift":
        board = board_cover_for_lift(q, _options(args))
        short = lift(board, q)
        if args.json:
            sys.stdout.write(dumps(short_document(short)))
            return EXIT_OK
        print(f"c({q}) <= {short.size}")
        print(f"board cover of D_{q - 1}: {_board_centers(board)}")
        print(f"centers: {_points([v.span() for v in short.centers])}")
        print("verified: yes")
        return EXIT_OK
    inst = build_windrose_instance(q)
    result = solve_exact(inst, _options(args))
    points = wind_roses_from(inst, result, spec)
    verified = covers_plane(points, spec).covered
    timed_out = result.status is not Status.OPTIMAL
    if args.json:
        short = ShortCover(spec, tuple(p.vector() for p in points))
        sys.stdout.write(dumps(short_document(short)))
    else:
        print(f"c({q}) {'<=' if timed_out else '='} {result.optimum}")
        print(f"centers: {_points(points)}")
        print(f"verified: {'yes' if verified else 'no'}")
    if not verified:
        return EXIT_INVALID
    return EXIT_TIMEOUT if timed_out else EXIT_OK


def _cmd_lift(args: argparse.Namespace) -> int:
    document = read_document(args.input)
    if document.kind != "board":
        raise CoverFormatError("lift needs a board cover document", field="kind")
    short = lift(document.cover, args.q)
    _emit(dumps(short_document(short)), args.out)
    print(f"lifted {document.cover.size} quowers to {short.size} balls", file=sys.stderr)
    return EXIT_OK


def _cmd_extract(args: argparse.Namespace) -> int:
    document = read_document(args.input)
    if document.kind != "short":
        raise CoverFormatError("extract needs a short cover document", field="kind")
    if document.cover.q != args.q:
        raise CoverFormatError(f"document is over GF({document.cover.q})", field="q")
    spec = document.cover.spec
    points = [v.span() for v in document.cover.centers]
    psi = PsiMap(spec, document.generator)
    board = extract(normalize_cover(points, args.q, spec), args.q, psi)
    _emit(dumps(board_document(board)), args.out)
    print(f"extracted {board.size} quowers from {len(points)} balls", file=sys.stderr)
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    document = read_document(args.input)
    report, size_ok = verify_document(document)
    cover = document.cover
    if report.covered and size_ok:
        print(f"valid {document.kind} cover of size {cover.size}")
        return EXIT_OK
    if not size_ok:
        print(f"declared size {document.size} but {cover.size} centers")
    if not report.covered:
        if isinstance(cover, BoardCover):
            missed = " ".join("({},{})".format(*to_one_based(x)) for x in report.uncovered)
        else:
            missed = " ".join(str(v) for v in report.uncovered)
        print(f"{len(report.uncovered)} uncovered: {missed}")
    return EXIT_INVALID


def _cmd_lp(args: argparse.Namespace) -> int:
    if (args.n is None) == (args.q is None):
        raise InputError("lp needs exactly one of --n and --q")
    if args.n is not None:
        inst = build_board_instance(args.n, BoardVariant(args.variant))
    else:
        inst = build_windrose_instance(args.q)
    write_lp(inst, args.out if args.out else sys.stdout)
    return EXIT_OK


def _board_cell(n: int, variant: BoardVariant, opts: SolveOptions) -> tuple[str, str, int | None]:
    """(value, source, exact value or None) of one table cell."""
    lower, upper = known_bounds(n, variant)
    construction = best_construction(n, variant)
    if construction.size == lower:
        return str(lower), "construction", lower
    result = solve_exact(build_board_instance(n, variant), opts)
    if result.status is Status.OPTIMAL:
        return str(result.optimum), "solver", result.optimum
    return f"{max(lower, result.proof.lower_bound)}..{min(upper, result.optimum)}", "bound", None


def board_table(max_n: int, opts: SolveOptions | None = None) -> pd.DataFrame:
    """xi(n) and xi_D(n) for 3 <= n <= max_n with the source of every value."""
    opts = opts or SolveOptions()
    rows = []
    for n in range(3, max_n + 1):
        xi, xi_source, _ = _board_cell(n, BoardVariant.FULL, opts)
        xid, xid_source, _ = _board_cell(n, BoardVariant.PUNCTURED, opts)
        rows.append({"n": n, "xi": xi, "xi source": xi_source, "xi_D": xid, "xi_D source": xid_source})
    return pd.DataFrame(rows, columns=["n", "xi", "xi source", "xi_D", "xi_D source"])


def field_table(max_q: int, opts: SolveOptions | None = None) -> pd.DataFrame:
    """
    c(q) for prime powers q <= max_q.

    For q >= 5 the value is xi_D(q - 1) + 2 and the source is that of xi_D(q - 1);
    smaller fields are solved directly on wind roses.
    """
    opts = opts or SolveOptions()
    rows = []
    for q in range(2, max_q + 1):
        try:
            prime_power(q)
        except InputError:
            continue
        if q >= 5:
            value, source, exact = _board_cell(q - 1, BoardVariant.PUNCTURED, opts)
            if exact is not None:
                value = str(exact + 2)
            else:
                low, high = value.split("..")
                value = f"{int(low) + 2}..{int(high) + 2}"
        else:
            result = solve_exact(build_windrose_instance(q), opts)
            source = "solver" if result.status is Status.OPTIMAL else "bound"
            value = str(result.optimum) if source == "solver" else f"{result.proof.lower_bound}..{result.optimum}"
        rows.append({"q": q, "c": value, "c source": source})
    return pd.DataFrame(rows, columns=["q", "c", "c source"])


def _cmd_table(args: argparse.Namespace) -> int:
    opts = _options(args)
    boards = board_table(args.max_n, opts)
    fields = field_table(args.max_q, opts)
    print(boards.to_string(index=False))
    print()
    print(fields.to_string(index=False))
    partial = (boards[["xi source", "xi_D source"]] == "bound").any().any() or (fields["c source"] == "bound").any()
    return EXIT_TIMEOUT if partial else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quower", description="Quower covers of toroidal boards and "
                                     "short coverings of F_q^3.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG logging.")
    parser.add_argument("--log-file", default=None, help="Also write the log to this file.")
    parser.add_argument("--threads", type=int, default=None, help="Worker processes of the exact solver.")
    parser.add_argument("--time-limit", type=float, default=None, help="Seconds allowed for each exact search.")
    parser.add_argument("--no-symmetry", action="store_true", help="Search without symmetry reduction.")
    subparsers = parser.add_subparsers(dest="command", required=True)

    xi = subparsers.add_parser("xi", help="xi(n) or xi_D(n) of the n x n board.")
    xi.add_argument("--n", type=int, required=True)
    xi.add_argument("--variant", choices=[v.value for v in BoardVariant], default="full")
    xi.add_argument("--method", choices=["solve", "construct", "bounds"], default="solve")
    xi.add_argument("--json", action="store_true", help="Print the cover document instead of text.")
    xi.add_argument("--ascii", action="store_true", help="Draw the board.")
    xi.set_defaults(handler=_cmd_xi)

    c = subparsers.add_parser("c", help="c(q), the size of a short covering of F_q^3.")
    c.add_argument("--q", type=int, required=True)
    c.add_argument("--method", choices=["solve", "lift"], default="solve")
    c.add_argument("--json", action="store_true", help="Print the cover document instead of text.")
    c.set_defaults(handler=_cmd_c)

    lift_parser = subparsers.add_parser("lift", help="Board cover of D_{q-1} to a short covering of F_q^3.")
    lift_parser.add_argument("--q", type=int, required=True)
    lift_parser.add_argument("--in", dest="input", required=True)
    lift_parser.add_argument("--out", default=None)
    lift_parser.set_defaults(handler=_cmd_lift)

    extract_parser = subparsers.add_parser("extract", help="Short covering of F_q^3 to a board cover of D_{q-1}.")
    extract_parser.add_argument("--q", type=int, required=True)
    extract_parser.add_argument("--in", dest="input", required=True)
    extract_parser.add_argument("--out", default=None)
    extract_parser.set_defaults(handler=_cmd_extract)

    verify = subparsers.add_parser("verify", help="Check a cover document.")
    verify.add_argument("--in", dest="input", required=True)
    verify.set_defaults(handler=_cmd_verify)

    lp = subparsers.add_parser("lp", help="Write the 0-1 program of a board or wind-rose instance.")
    lp.add_argument("--n", type=int, default=None)
    lp.add_argument("--variant", choices=[v.value for v in BoardVariant], default="full")
    lp.add_argument("--q", type=int, default=None)
    lp.add_argument("--out", default=None)
    lp.set_defaults(handler=_cmd_lp)

    table = subparsers.add_parser("table", help="Tables of xi(n), xi_D(n) and c(q).")
    table.add_argument("--max-n", type=int, default=13)
    table.add_argument("--max-q", type=int, default=8)
    table.set_defaults(handler=_cmd_table)
    return parser


def _configure_logging(args: argparse.Namespace) -> None:
    if not args.verbose and not args.log_file:
        return
    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    LogConfig(enabled=True, console_level=level, file_level=logging.DEBUG, file_path=args.log_file)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args)
    try:
        return args.handler(args)
    except (InputError, UnsupportedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantError as exc:
        logger.error("internal error: %s", exc)
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    raise SystemExit(main())
