"""Command-line front end.

Subcommands:

    verify      run the verification suite and write a JSON report
    solve       complete an initial-value field file on one 4-cell
    decompose   decompose a flower chain file into 4D corners
    dilog-test  print the golden-ratio dilogarithm value table

Exit codes: 0 all checks passed, 1 check failure, 2 usage or configuration
error, 3 singular data, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import Sequence

from . import config
from .cells import (
    CellKind,
    OrientedCell,
    cubic_point_flower,
    decompose_flower,
    format_cell,
    parse_chain,
    qan_point_flower,
)
from .dkp import (
    Branch,
    read_field_file,
    solve_ambo_ivp,
    solve_cube_ivp,
    write_field_file,
)
from .errors import (
    ConfigError,
    FormatError,
    InitialDataError,
    PluriKPError,
    SingularFieldError,
)
from .lagrangian import exterior_derivative
from .verify import SuiteConfig, classify_branch, run_suite

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_SINGULAR = 3
EXIT_IO = 4

_REPORT_FORMAT = "plurikp-report/1"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plurikp",
        description="Variational verification of the dKP lattice equation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run the verification suite")
    verify.add_argument("--lattice", choices=("qan", "cubic"), default="qan")
    verify.add_argument("--dim", type=int, default=config.DEFAULT_DIM)
    verify.add_argument("--trials", type=int, default=config.DEFAULT_TRIALS)
    verify.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    verify.add_argument(
        "--tol",
        action="append",
        default=[],
        metavar="NAME=VALUE",
        help="tolerance override; also spelled --tol.NAME=VALUE",
    )
    verify.add_argument("--out", default=None, help="report file path")

    solve = sub.add_parser("solve", help="complete an initial-value field")
    solve.add_argument("kind", choices=("ambo-black", "ambo-white", "cube4"))
    solve.add_argument("input", help="initial field file (JSON)")
    solve.add_argument("output", help="completed field file (JSON)")
    solve.add_argument(
        "--branch", choices=("dkp", "dkp-minus"), default="dkp",
        help="solution branch to complete toward",
    )

    decomp = sub.add_parser("decompose", help="decompose a flower into corners")
    decomp.add_argument("flower", nargs="?", help="chain file, one cell per line")
    decomp.add_argument(
        "--standard", choices=("qa3", "z3"), default=None,
        help="use a built-in full-star flower instead of a file",
    )
    decomp.add_argument("--dim", type=int, default=config.DEFAULT_DIM)
    decomp.add_argument(
        "--vertex", default=None, help="flower center, e.g. '(0,0,0,0,0)'"
    )
    decomp.add_argument("--out", default=None, help="corner list file")

    sub.add_parser("dilog-test", help="print the dilogarithm special values")
    return parser


def _split_tolerances(argv: Sequence[str]) -> tuple[list[str], dict[str, float]]:
    # Accept --tol.name=value as sugar for --tol name=value.
    passthrough: list[str] = []
    overrides: dict[str, float] = {}
    for token in argv:
        if token.startswith("--tol.") and "=" in token:
            name, _, raw = token[len("--tol."):].partition("=")
            try:
                overrides[name] = float(raw)
            except ValueError as exc:
                raise ConfigError(f"invalid tolerance value in {token!r}") from exc
        else:
            passthrough.append(token)
    return passthrough, overrides


def _parse_vertex(text: str, expected: int) -> tuple[int, ...]:
    try:
        inner = text.strip().strip("()")
        vertex = tuple(int(t) for t in inner.split(","))
    except ValueError as exc:
        raise ConfigError(f"cannot parse vertex {text!r}") from exc
    if len(vertex) != expected:
        raise ConfigError(
            f"vertex {text!r} has {len(vertex)} coordinates, expected {expected}"
        )
    return vertex


def _write_json(path: str, payload: dict) -> None:
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, indent=1, sort_keys=True)
        handle.write("\n")
    os.replace(tmp, path)


def _cmd_verify(args: argparse.Namespace, overrides: dict[str, float]) -> int:
    for item in args.tol:
        name, _, raw = item.partition("=")
        if not raw:
            raise ConfigError(f"tolerance override {item!r} is not NAME=VALUE")
        overrides[name] = float(raw)
    cfg = SuiteConfig(
        lattice=args.lattice,
        dim=args.dim,
        trials=args.trials,
        seed=args.seed,
        tolerances=overrides,
    )
    result = run_suite(cfg)
    for record in result.records:
        status = "PASS" if record.passed else "FAIL"
        print(
            f"{status} {record.check_id}: observed={record.observed:.6e}"
            f" expected={record.expected:.6e} tol={record.tolerance:.1e}"
        )
    summary = result.summary()
    print(
        f"summary: {summary['passed']}/{summary['total']} passed,"
        f" max deviation {summary['max_deviation']:.3e}"
    )
    if args.out:
        payload = {
            "format": _REPORT_FORMAT,
            "config": {
                "lattice": cfg.lattice,
                "dim": cfg.dim,
                "trials": cfg.trials,
                "seed": cfg.seed,
                "tolerances": overrides,
            },
            "records": [r.as_dict() for r in result.records],
            "summary": summary,
        }
        _write_json(args.out, payload)
    return EXIT_OK if result.all_passed else EXIT_CHECK_FAILED


def _default_cell(kind_token: str, lattice: str, dim: int) -> OrientedCell:
    if kind_token == "cube4":
        return OrientedCell(CellKind.CUBE4, (0,) * dim, tuple(range(4)))
    kind = CellKind.BLACK_AMBO4 if kind_token == "ambo-black" else CellKind.WHITE_AMBO4
    return OrientedCell(kind, (0,) * (dim + 1), tuple(range(5)))


def _cmd_solve(args: argparse.Namespace) -> int:
    data, lattice, dim = read_field_file(args.input)
    branch = Branch.DKP if args.branch == "dkp" else Branch.DKP_MINUS
    if args.kind == "cube4":
        if lattice != "cubic":
            raise ConfigError("cube4 completion needs a cubic-lattice field file")
        cell = _default_cell(args.kind, lattice, dim)
        solution = solve_cube_ivp(cell, data, branch)
    else:
        if lattice != "qan":
            raise ConfigError("ambo completion needs a root-lattice field file")
        cell = _default_cell(args.kind, lattice, dim)
        solution = solve_ambo_ivp(cell, data, branch)
    report = classify_branch(solution, cell)
    s_value = exterior_derivative(solution, cell)
    write_field_file(args.output, solution, lattice, dim)
    print(f"branch: {report.branch.value}")
    print(f"action on facets: {s_value!r}  (pi^2/4 = {math.pi ** 2 / 4!r})")
    print(f"wrote {args.output}")
    return EXIT_OK


def _cmd_decompose(args: argparse.Namespace) -> int:
    if (args.flower is None) == (args.standard is None):
        raise ConfigError("give either a flower chain file or --standard")
    if args.standard == "qa3":
        dim = max(args.dim, 3)
        center = (0,) * (dim + 1)
        chain = qan_point_flower(center, range(4))
    elif args.standard == "z3":
        dim = max(args.dim, 3)
        center = (0,) * dim
        chain = cubic_point_flower(center, range(3))
    else:
        with open(args.flower, "r", encoding="utf-8") as handle:
            chain = parse_chain(handle.read())
        if not chain:
            raise FormatError(f"{args.flower}: empty chain")
        ambient = len(chain.cells()[0].base)
        if args.vertex is None:
            raise ConfigError("--vertex is required with a flower file")
        center = _parse_vertex(args.vertex, ambient)
    pairs = decompose_flower(chain, center)
    lines = [f"{format_cell(cell4)} @corner {','.join(map(str, point))}"
             for cell4, point in pairs]
    for line in lines:
        print(line)
    print("residual chain: empty")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write("\n".join(lines) + "\n")
    return EXIT_OK


def _cmd_dilog_test() -> int:
    from .dilog import special_value_table

    worst = 0.0
    for label, computed, exact in special_value_table():
        worst = max(worst, abs(computed - exact))
        print(f"{label:10s} computed={computed:+.15f} exact={exact:+.15f}")
    print(f"max deviation: {worst:.3e}")
    return EXIT_OK if worst <= config.TOLERANCES["special_values"] else EXIT_CHECK_FAILED


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        argv, overrides = _split_tolerances(argv)
        parser = _build_parser()
        try:
            args = parser.parse_args(argv)
        except SystemExit as exc:
            # argparse exits 2 on usage errors and 0 on --help.
            return EXIT_USAGE if exc.code else EXIT_OK
        if args.command == "verify":
            return _cmd_verify(args, overrides)
        if args.command == "solve":
            return _cmd_solve(args)
        if args.command == "decompose":
            return _cmd_decompose(args)
        return _cmd_dilog_test()
    except (SingularFieldError, InitialDataError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except (ConfigError, FormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except PluriKPError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
