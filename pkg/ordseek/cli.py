from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path
from typing import Any, Optional, Sequence, TextIO

from config import Config

from . import configure
from .errors import InvariantError, PreconditionError
from .models import Outcome, OutcomeKind
from .services import reference
from .services.highorder import run_high_order
from .services.lattice import LatticeBasis, lll_reduce
from .services.order import order_upto
from .services.residue_factor import divisors_in_class, search_range
from .services.smallfactor import smallest_prime_factor_upto


EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PRECONDITION = 2
EXIT_INVARIANT = 3

_DECIMAL = re.compile(r"[0-9]+")
_HEX = re.compile(r"0[xX][0-9a-fA-F]+")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(f"{self.format_usage().strip()}\n{self.prog}: error: {message}")


def parse_integer(text: str) -> int:
    """Decimal or 0x-prefixed hex; no signs, blanks or underscores."""
    if _DECIMAL.fullmatch(text):
        return int(text, 10)
    if _HEX.fullmatch(text):
        return int(text, 16)
    raise argparse.ArgumentTypeError(f"{text!r} is not a decimal or 0x-hex integer")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ordseek", description="High-order elements and residue-class divisors.")
    parser.add_argument("--config", metavar="FILE", help="YAML settings file overriding the environment.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    highorder = sub.add_parser("highorder", help="Element of order > D, a factor of N, or 'prime'.")
    highorder.add_argument("--n", type=parse_integer, required=True)
    highorder.add_argument("--d", type=parse_integer, required=True)
    highorder.add_argument("--r", type=parse_integer, default=1)
    highorder.add_argument("--permissive", action="store_true", help="Allow D below ceil(N^(1/6r)).")
    highorder.add_argument("--threads", type=parse_integer)
    highorder.add_argument("--verify", action="store_true")
    highorder.add_argument("--json", action="store_true")

    order = sub.add_parser("order", help="ord_N(a) if it is at most D.")
    order.add_argument("--n", type=parse_integer, required=True)
    order.add_argument("--a", type=parse_integer, required=True)
    order.add_argument("--d", type=parse_integer, required=True)
    order.add_argument("--verify", action="store_true")
    order.add_argument("--json", action="store_true")

    small = sub.add_parser("small-factor", help="Smallest prime factor of N up to L.")
    small.add_argument("--n", type=parse_integer, required=True)
    small.add_argument("--l", type=parse_integer, required=True)
    small.add_argument("--verify", action="store_true")
    small.add_argument("--json", action="store_true")

    divisors = sub.add_parser("divisors-in-class", help="All p with p^r | N and p = 1 (mod s).")
    divisors.add_argument("--n", type=parse_integer, required=True)
    divisors.add_argument("--s", type=parse_integer, required=True)
    divisors.add_argument("--r", type=parse_integer, default=1)
    divisors.add_argument("--t-min", type=parse_integer)
    divisors.add_argument("--t-max", type=parse_integer)
    divisors.add_argument("--threads", type=parse_integer)
    divisors.add_argument("--scan-limit", type=parse_integer)
    divisors.add_argument("--verify", action="store_true")
    divisors.add_argument("--json", action="store_true")

    lll = sub.add_parser("lll", help="LLL-reduce a JSON basis (debug tool).")
    lll.add_argument("--input", required=True, metavar="FILE")
    return parser


def _verify_outcome(n: int, outcome: Outcome) -> bool:
    if outcome.kind is OutcomeKind.ELEMENT:
        return reference.naive_order_exceeds(n, outcome.value, outcome.target_order)
    if outcome.kind is OutcomeKind.FACTOR:
        return 1 < outcome.value < n and n % outcome.value == 0
    return reference.naive_factorization(n) == [(n, 1)]


def _cmd_highorder(args: argparse.Namespace) -> tuple[str, dict[str, Any], Optional[bool]]:
    outcome, _ = run_high_order(args.n, args.d, args.r, permissive=args.permissive)
    agrees = _verify_outcome(args.n, outcome) if args.verify else None
    return str(outcome), outcome.to_dict(), agrees


def _cmd_order(args: argparse.Namespace) -> tuple[str, dict[str, Any], Optional[bool]]:
    result = order_upto(args.n, args.a, args.d)
    agrees = None
    if args.verify:
        if result.is_exact:
            agrees = reference.naive_order(args.n, args.a) == result.value
        else:
            agrees = reference.naive_order_exceeds(args.n, args.a, args.d)
    return str(result), {"status": result.status.value, "value": str(result.value)}, agrees


def _cmd_small_factor(args: argparse.Namespace) -> tuple[str, dict[str, Any], Optional[bool]]:
    found = smallest_prime_factor_upto(args.n, args.l).found
    agrees = reference.naive_smallest_prime_factor(args.n, args.l) == found if args.verify else None
    text = "none" if found is None else f"factor {found}"
    return text, {"factor": None if found is None else str(found)}, agrees


def _cmd_divisors(args: argparse.Namespace) -> tuple[str, Any, Optional[bool]]:
    if (args.t_min is None) != (args.t_max is None):
        raise UsageError("--t-min and --t-max must be given together")

    if args.t_min is None:
        found = divisors_in_class(args.n, args.r, args.s)
    else:
        found = search_range(args.n, args.r, args.s, args.t_min, args.t_max)

    agrees = None
    if args.verify:
        expected = reference.naive_divisors_in_class(args.n, args.r, args.s)
        if args.t_min is not None:
            expected = [p for p in expected if args.t_min <= p <= args.t_max]
        agrees = expected == found

    values = [str(p) for p in found]
    payload: Any = values if agrees is None else {"divisors": values}
    return "\n".join(values), payload, agrees


def _cmd_lll(args: argparse.Namespace) -> tuple[str, Any, Optional[bool]]:
    try:
        rows = json.loads(Path(args.input).read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(f"Basis file {args.input} could not be read: {exc.strerror}") from exc
    if not isinstance(rows, list) or not all(isinstance(row, list) for row in rows):
        raise UsageError("Basis file must hold a JSON array of arrays")

    basis = LatticeBasis.of([[_json_integer(v) for v in row] for row in rows])
    reduced = [[str(v) for v in row] for row in lll_reduce(basis).rows]
    return json.dumps(reduced), reduced, None


def _json_integer(value: Any) -> int:
    if isinstance(value, int) and not isinstance(value, bool):
        return value
    if isinstance(value, str) and re.fullmatch(r"-?[0-9]+", value):
        return int(value)
    raise UsageError(f"Basis entry {value!r} is not an integer")


COMMANDS = {
    "highorder": _cmd_highorder,
    "order": _cmd_order,
    "small-factor": _cmd_small_factor,
    "divisors-in-class": _cmd_divisors,
    "lll": _cmd_lll,
}


def _render(text: str, payload: Any, agrees: Optional[bool], as_json: bool) -> str:
    if as_json:
        if agrees is not None:
            payload = dict(payload, oracle_agrees=agrees)
        return json.dumps(payload)
    if agrees is not None:
        suffix = f"oracle-agrees {'true' if agrees else 'false'}"
        text = f"{text}\n{suffix}" if text else suffix
    return text


def run_command(
    argv: Optional[Sequence[str]] = None,
    *,
    config_class: type[Config] = Config,
    stdout: Optional[TextIO] = None,
    stderr: Optional[TextIO] = None,
) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr

    try:
        args = build_parser().parse_args(argv)
        configure(
            config_class,
            {
                "settings_file": args.config,
                "threads": getattr(args, "threads", None),
                "scan_limit": getattr(args, "scan_limit", None),
            },
        )
        text, payload, agrees = COMMANDS[args.command](args)
    except UsageError as exc:
        print(exc, file=stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (None, 0) else EXIT_USAGE
    except PreconditionError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_PRECONDITION
    except InvariantError as exc:
        print(f"internal error: {exc}", file=stderr)
        return EXIT_INVARIANT
    except ValueError as exc:
        # settings files and malformed JSON
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE

    output = _render(text, payload, agrees, getattr(args, "json", False) or args.command == "lll")
    if output:
        print(output, file=stdout)
    return EXIT_OK


def main() -> None:
    sys.exit(run_command())
