"""Command-line interface.

Subcommands::

    popdim solve INSTANCE [--verify] [--trace] [--max-edges N]
    popdim verify INSTANCE WINNING_SET [--max-edges N]
    popdim dimension INSTANCE [--max-k K] [--certificate] [--max-edges N]
    popdim gen --kind KIND --agents N [--items M] [--ties] [--weights LO:HI]
               [--density P] [--seed S] [-o FILE]
    popdim demo NAME [-o FILE]

Exit status is 0 on success, 1 when a verification fails, 2 on bad input.
``--trace`` on a house instance appends the step dump: one block per step,
opened by ``step <t>`` and closed by ``end``, with one ``key: values`` line
each for the agent and house sets, dropped agents, weight order, prefix
length, fitted prefix, threshold weight, pruning log, allocated agents,
step matching, full houses and accumulated edges.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from .core import InstanceError, MatchingError, ProblemKind
from .house import solve_house
from .instances import GADGETS, GeneratorConfig, gadget, random_instance
from .oracle import DEFAULT_MAX_EDGES, OracleGuardError, popular_dimension, verify_winning_set
from .solvers import solve
from .textio import (ParseError, format_dimension, format_report, parse_instance,
                     parse_winning_set, serialize_instance, serialize_winning_set)

EXIT_OK, EXIT_DEFEATED, EXIT_INPUT = 0, 1, 2


def _weights(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition(":")
    try:
        return (int(lo), int(hi)) if sep else (int(lo), int(lo))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}") from None


def _max_edges(text: str) -> Optional[int]:
    return None if text == "none" else int(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="popdim", description="Popular winning sets of matchings.")
    sub = parser.add_subparsers(dest="verb", required=True)

    guard = argparse.ArgumentParser(add_help=False)
    guard.add_argument("--max-edges", type=_max_edges, default=DEFAULT_MAX_EDGES,
                       help="enumeration guard for the oracle ('none' disables it)")

    p = sub.add_parser("solve", parents=[guard], help="compute a popular winning set")
    p.add_argument("instance", type=Path)
    p.add_argument("--verify", action="store_true", help="check the output with the oracle")
    p.add_argument("--trace", action="store_true", help="dump the house-allocation steps")

    p = sub.add_parser("verify", parents=[guard], help="check a winning-set file")
    p.add_argument("instance", type=Path)
    p.add_argument("winning_set", type=Path)

    p = sub.add_parser("dimension", parents=[guard], help="exact popular dimension")
    p.add_argument("instance", type=Path)
    p.add_argument("--max-k", type=int, default=3)
    p.add_argument("--certificate", action="store_true",
                   help="also print a smallest winning set")

    p = sub.add_parser("gen", help="write a random instance")
    p.add_argument("--kind", required=True, choices=[k.value for k in ProblemKind])
    p.add_argument("--agents", type=int, required=True,
                   help="agents (house, roommates) or left side size (marriage)")
    p.add_argument("--items", type=int, default=0,
                   help="houses (house) or right side size (marriage)")
    p.add_argument("--ties", action="store_true")
    p.add_argument("--weights", type=_weights, default=None, metavar="LO:HI")
    p.add_argument("--density", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", type=Path)

    p = sub.add_parser("demo", help="write a named gadget instance")
    p.add_argument("name", choices=GADGETS)
    p.add_argument("-o", "--output", type=Path)
    return parser


def _emit(text: str, output: Optional[Path]) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        output.write_text(text, encoding="utf-8")


def run_command(args: argparse.Namespace) -> int:
    if args.verb == "solve":
        instance = parse_instance(args.instance.read_text(encoding="utf-8"))
        if instance.kind is ProblemKind.HOUSE:
            ws, trace = solve_house(instance)
        else:
            ws, trace = solve(instance), None
        out = serialize_winning_set(ws)
        if args.trace and trace is not None:
            out += "# trace\n" + "".join(f"# {line}\n" for line in trace.dump().splitlines())
        if args.verify:
            report = verify_winning_set(instance, ws, args.max_edges)
            out += format_report(report)
            sys.stdout.write(out)
            return EXIT_OK if report.verdict else EXIT_DEFEATED
        sys.stdout.write(out)
        return EXIT_OK
    if args.verb == "verify":
        instance = parse_instance(args.instance.read_text(encoding="utf-8"))
        ws = parse_winning_set(args.winning_set.read_text(encoding="utf-8"))
        report = verify_winning_set(instance, ws, args.max_edges)
        sys.stdout.write(format_report(report))
        return EXIT_OK if report.verdict else EXIT_DEFEATED
    if args.verb == "dimension":
        instance = parse_instance(args.instance.read_text(encoding="utf-8"))
        result = popular_dimension(instance, args.max_k, args.max_edges)
        out = format_dimension(result)
        if args.certificate and result.certificate is not None:
            out += serialize_winning_set(result.certificate)
        sys.stdout.write(out)
        return EXIT_OK
    if args.verb == "gen":
        config = GeneratorConfig(ProblemKind(args.kind), args.agents, args.items, args.ties,
                                 args.weights, args.density, args.seed)
        _emit(serialize_instance(random_instance(config)), args.output)
        return EXIT_OK
    if args.verb == "demo":
        _emit(serialize_instance(gadget(args.name)), args.output)
        return EXIT_OK
    raise AssertionError(f"unhandled verb {args.verb}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return run_command(args)
    except OracleGuardError as exc:
        print(f"error: oracle guard exceeded: {exc}", file=sys.stderr)
    except (ParseError, InstanceError, MatchingError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
