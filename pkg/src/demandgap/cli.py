"""Command-line workflow: analyze, equilibrium, demo.

Exit codes: 0 success, 2 schema error, 3 computation/config error,
4 equilibrium not certified.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .demo import run_demo
from .errors import DemandGapError, RhoNotOne, SchemaError
from .leontief import AggregationMap, aggregate_accounts, check_value_equilibrium, solve_national_equilibrium
from .niot import RunConfig, parse_blocks, parse_niot, parse_pi
from .recession import analyze_accounts
from .registries import registry_for
from . import reporting

EXIT_OK = 0
EXIT_SCHEMA = 2
EXIT_COMPUTE = 3
EXIT_UNCERTIFIED = 4


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--pi", default="1.0", help="taxation shares: scalar or CSV file")
    parser.add_argument("--format", default="text", choices=["json", "csv", "text"])
    parser.add_argument("--tol", type=float, default=1e-9, help="equality tolerance")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized demos")
    parser.add_argument("--top", type=int, default=4, help="rows per ranking table")
    parser.add_argument("--aggregate", default=None, help="aggregation map file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="demandgap",
        description="Input-output recession diagnostics and equilibrium checks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_an = sub.add_parser("analyze", help="demand/supply deficits, recession ratio, rankings")
    p_an.add_argument("table", help="normalized table CSV")
    p_an.add_argument("--out", default=".", help="directory for report files")
    _add_common(p_an)

    p_eq = sub.add_parser("equilibrium", help="national equilibrium solve and value test")
    p_eq.add_argument("table", help="normalized table CSV")
    p_eq.add_argument("--out", default=".", help="directory for report files")
    _add_common(p_eq)

    p_demo = sub.add_parser("demo", help="built-in construction walkthroughs")
    p_demo.add_argument("fixture", help="E1, E2 or random:seed=42,n=4,l=3,I=2")
    _add_common(p_demo)
    return parser


def _load(args) -> tuple:
    config = RunConfig(
        pi=parse_pi(args.pi),
        tol=args.tol,
        top=args.top,
        format=args.format,
        seed=args.seed,
        blocks=parse_blocks(args.aggregate) if args.aggregate else None,
    )
    table = parse_niot(args.table)
    names = table.names
    if not any(names):
        builtin = registry_for(table.m)
        if builtin:
            names = builtin
    acc = table.to_accounts(pi=config.pi_for(table.m) if config.blocks is None else 1.0)
    indices = table.indices
    if config.blocks is not None:
        mapping = AggregationMap(config.blocks)
        acc = aggregate_accounts(acc, mapping, pi=config.pi_for(mapping.m))
        names = tuple(
            " + ".join(names[k] for k in block) for block in mapping.blocks
        )
        indices = tuple(range(1, mapping.m + 1))
    return table, acc, names, indices, config


def _cmd_analyze(args) -> int:
    table, acc, names, indices, config = _load(args)
    report = analyze_accounts(acc, names=names, indices=indices, tol=0.0, top=config.top)
    payload = reporting.analysis_dict(
        table.country,
        table.year,
        acc.pi,
        report,
        diagnostics={"currency": table.currency, "tol": config.tol},
    )
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    stem = f"{table.country}_{table.year}"
    (out / f"{stem}_report.json").write_text(reporting.to_json(payload))
    (out / f"{stem}_deficit.csv").write_text(reporting.deficit_csv(report))
    (out / f"{stem}_histogram.csv").write_text(reporting.histogram_csv(report))

    if config.format == "json":
        sys.stdout.write(reporting.to_json(payload))
    elif config.format == "csv":
        sys.stdout.write(reporting.deficit_csv(report))
    else:
        sys.stdout.write(reporting.analysis_text(table.country, table.year, report))
    return EXIT_OK


def _cmd_equilibrium(args) -> int:
    table, acc, names, indices, config = _load(args)
    solution = solve_national_equilibrium(
        acc,
        rho_tol=config.rho_tol,
        cone_tol=config.cone_tol,
        tol=config.tol,
        strict=False,
    )
    balance = check_value_equilibrium(acc, tol=config.tol)
    payload = reporting.equilibrium_dict(table.country, table.year, acc.pi, solution, balance)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    stem = f"{table.country}_{table.year}"
    (out / f"{stem}_equilibrium.json").write_text(reporting.to_json(payload))

    if config.format == "json":
        sys.stdout.write(reporting.to_json(payload))
    else:
        sys.stdout.write(
            reporting.equilibrium_text(table.country, table.year, solution, balance)
        )
    return EXIT_OK if solution.certified else EXIT_UNCERTIFIED


def _cmd_demo(args) -> int:
    transcript = run_demo(args.fixture, seed=args.seed if args.seed else None)
    if args.format == "json":
        sys.stdout.write(json.dumps(transcript, indent=2) + "\n")
    else:
        for key, value in transcript.items():
            sys.stdout.write(f"{key}: {value}\n")
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "analyze":
            return _cmd_analyze(args)
        if args.command == "equilibrium":
            return _cmd_equilibrium(args)
        return _cmd_demo(args)
    except SchemaError as e:
        print(f"schema error: {e}", file=sys.stderr)
        return EXIT_SCHEMA
    except RhoNotOne as e:
        print(f"not certified: {e}", file=sys.stderr)
        return EXIT_UNCERTIFIED
    except (DemandGapError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
