# Copyright (c) 2025 Twistforge Developers
# SPDX-License-Identifier: BSD 3-Clause

"""Command-line front end.

Subcommands::

    twistforge localdata --p 11 --ainvs "[0,-1,1,-10,-20]"
    twistforge strongmin --p 2 --ainvs "[1,0,1,4,-6]"
    twistforge twist --p 2 --d -1 --ainvs "[...]" [--path fast|model]
    twistforge verify --spec corpus.json [--jobs N] [--out report.jsonl]
    twistforge tables [q2_unit_twist]

Exit codes: 0 on success, 1 on usage or input errors, 2 when ``verify`` finds a disagreement.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections.abc import Sequence
from typing import Any

from prettytable import PrettyTable

from . import __version__
from .config import HarnessCfg
from .errors import TwistforgeError
from .strongly_minimal import to_strongly_minimal
from .tate import tate_local_data
from .twist import TABLE_NAMES, TwistPath, render_table, twist_local_data
from .twist.tables import table_columns
from .utils.logging import get_logger, set_verbosity
from .verify import CorpusSpec, render_summary, run_differential, save_report, write_report
from .weierstrass import WeierstrassModel, compose

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_DISAGREEMENT = 2


class UsageError(Exception):
    """Bad command-line arguments."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def _add_curve_args(parser: argparse.ArgumentParser, with_d: bool = False) -> None:
    """Add the arguments that describe a curve (and optionally a twist) to the parser."""
    arg_group = parser.add_argument_group("curve", description="The curve, given directly or as a JSON object.")
    arg_group.add_argument(
        "--ainvs",
        type=str,
        required=True,
        help='Coefficients as a JSON list such as "[0,-1,1,-10,-20]" (integers or "p/q" strings), '
        'or a JSON object {"ainvs": [...], "p": P, "d": D}.',
    )
    arg_group.add_argument("--p", type=int, default=None, help="The prime.")
    if with_d:
        arg_group.add_argument("--d", type=int, default=None, help="The twist parameter.")
    parser.add_argument("--format", type=str, default="json", choices=("json", "table"), help="Output format.")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="twistforge", description="Local data of elliptic curves and their quadratic twists.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", default=False, help="Log at DEBUG level.")
    verbosity.add_argument("-q", "--quiet", action="store_true", default=False, help="Log warnings and errors only.")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    localdata = commands.add_parser("localdata", help="Local data by Tate's algorithm.")
    _add_curve_args(localdata)

    strongmin = commands.add_parser("strongmin", help="Strongly-minimal model and the isomorphism onto it.")
    _add_curve_args(strongmin)

    twist = commands.add_parser("twist", help="Local data of a curve and its quadratic twist.")
    _add_curve_args(twist, with_d=True)
    twist.add_argument(
        "--path", type=str, default=None, choices=("fast", "model"), help="Route at p = 2 (default: fast for unit d)."
    )

    verify = commands.add_parser("verify", help="Differential run of the fast paths against the oracle.")
    verify.add_argument("--spec", type=str, required=True, help="Corpus spec JSON file.")
    verify.add_argument("--jobs", type=int, default=None, help="Worker processes (TWISTFORGE_JOBS overrides).")
    verify.add_argument("--out", type=str, default=None, help="Write the JSON-lines report here instead of stdout.")
    verify.add_argument("--no-minimize", action="store_true", default=False, help="Do not shrink disagreements.")
    verify.add_argument("--timing", action="store_true", default=False, help="Include elapsed time in the report.")
    verify.add_argument("--format", type=str, default="json", choices=("json", "table"), help="Output format.")

    tables = commands.add_parser("tables", help="Render the embedded twist tables.")
    tables.add_argument("name", nargs="?", default=None, choices=TABLE_NAMES, help="Table to render (default: all).")
    tables.add_argument("--format", type=str, default="text", choices=("text", "table"), help="Output format.")
    return parser


# ---------------------------------------------------------------------------
# Argument parsing helpers
# ---------------------------------------------------------------------------


def _parse_curve(args: argparse.Namespace) -> tuple[WeierstrassModel, int, int | None]:
    try:
        data = json.loads(args.ainvs)
    except json.JSONDecodeError as err:
        raise UsageError(f"--ainvs is not valid JSON: {err}") from None
    p, d = args.p, getattr(args, "d", None)
    if isinstance(data, dict):
        p = p if p is not None else data.get("p")
        d = d if d is not None else data.get("d")
        data = data.get("ainvs")
    if not isinstance(data, list) or len(data) != 5:
        raise UsageError(f"Expected five coefficients, got {args.ainvs}.")
    if p is None:
        raise UsageError("The prime is required (--p or \"p\" in the curve object).")
    try:
        model = WeierstrassModel.from_ainvs(data)
    except (TypeError, ValueError, ZeroDivisionError) as err:
        raise UsageError(f"Bad coefficients {args.ainvs}: {err}") from None
    return model, int(p), int(d) if d is not None else None


def _emit(payload: dict[str, Any], fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(payload, sort_keys=True))
        return
    table = PrettyTable(["Field", "Value"])
    table.align["Field"] = "l"
    table.align["Value"] = "l"
    for key, value in payload.items():
        if isinstance(value, dict):
            for sub, inner in value.items():
                table.add_row([f"{key}.{sub}", inner])
        else:
            table.add_row([key, value])
    print(table)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def _cmd_localdata(args: argparse.Namespace) -> int:
    model, p, _ = _parse_curve(args)
    result = tate_local_data(model, p)
    payload = result.local_data.to_json()
    payload["minimal_model"] = result.minimal_model.to_json()
    _emit(payload, args.format)
    return EXIT_OK


def _cmd_strongmin(args: argparse.Namespace) -> int:
    model, p, _ = _parse_curve(args)
    oracle = tate_local_data(model, p)
    S, step = to_strongly_minimal(oracle.minimal_model, p)
    payload = {
        "p": p,
        "model": S.model.to_json(),
        "isomorphism": compose(oracle.isomorphism, step).to_json(),
        "type": str(S.type),
        "row": S.matched_row,
    }
    _emit(payload, args.format)
    return EXIT_OK


def _cmd_twist(args: argparse.Namespace) -> int:
    model, p, d = _parse_curve(args)
    if d is None:
        raise UsageError("The twist parameter is required (--d or \"d\" in the curve object).")
    path = TwistPath(args.path) if args.path is not None else None
    minimal = tate_local_data(model, p).minimal_model
    data = twist_local_data(minimal, p, d, path)
    _emit(data.to_json(), args.format)
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    spec = CorpusSpec.from_json(args.spec)
    cfg = HarnessCfg(jobs=args.jobs, minimize=not args.no_minimize)
    report = run_differential(spec, cfg)
    if args.out is not None:
        save_report(report, args.out, timing=args.timing)
    if args.format == "table":
        print(render_summary(report))
    elif args.out is None:
        write_report(report, sys.stdout, timing=args.timing)
    if report.disagreements:
        logger.error(f"{len(report.disagreements)} disagreement(s) found.")
        return EXIT_DISAGREEMENT
    return EXIT_OK


def _cmd_tables(args: argparse.Namespace) -> int:
    names = [args.name] if args.name else list(TABLE_NAMES)
    for name in names:
        if args.format == "text":
            print(render_table(name), end="")
            continue
        header, rows = table_columns(name)
        table = PrettyTable(list(header))
        table.title = name
        table.align = "l"
        for row in rows:
            table.add_row(list(row))
        print(table)
    return EXIT_OK


_COMMANDS = {
    "localdata": _cmd_localdata,
    "strongmin": _cmd_strongmin,
    "twist": _cmd_twist,
    "verify": _cmd_verify,
    "tables": _cmd_tables,
}


def main(argv: Sequence[str] | None = None) -> int:
    """Run the command line and return the exit code."""
    try:
        args = build_parser().parse_args(argv)
    except UsageError as err:
        print(err, file=sys.stderr)
        return EXIT_ERROR
    if args.verbose:
        set_verbosity(logging.DEBUG)
    elif args.quiet:
        set_verbosity(logging.WARNING)
    else:
        set_verbosity(logging.INFO)
    try:
        return _COMMANDS[args.command](args)
    except UsageError as err:
        print(f"twistforge {args.command}: {err}", file=sys.stderr)
        return EXIT_ERROR
    except (TwistforgeError, FileNotFoundError) as err:
        logger.error(f"{type(err).__name__}: {err}")
        return EXIT_ERROR
    except ValueError as err:
        logger.error(str(err))
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
