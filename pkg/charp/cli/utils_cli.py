"""
Argument parsing and text rendering for the charp command line.
"""

from __future__ import annotations

import argparse
from typing import Any, Sequence

from ascii_colors import ASCIIColors

from .. import __version__
from ..exceptions import PreconditionError
from ..utils import get_env_value


def parse_prime_list(value: str) -> list[int]:
    try:
        return [int(piece) for piece in value.split(",") if piece.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {value!r}") from None


def parse_name_list(value: str) -> tuple[str, ...]:
    names = tuple(piece.strip() for piece in value.split(",") if piece.strip())
    if not names:
        raise argparse.ArgumentTypeError("expected at least one variable name")
    return names


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--p",
        type=parse_prime_list,
        default=None,
        help="Characteristic; verify-paper and sweep accept a comma list such as 2,3,5",
    )
    common.add_argument("--e", type=int, default=1, help="Frobenius exponent, q = p^e (default: 1)")
    common.add_argument(
        "--vars",
        type=parse_name_list,
        default=("t", "x", "y"),
        help="Ring variables; t is the coefficient variable (default: t,x,y)",
    )
    common.add_argument(
        "--order",
        choices=["grevlex", "lex", "block"],
        default=get_env_value("CHARP_ORDER", "grevlex"),
        help="Monomial order for ideal commands (default: from env or grevlex)",
    )
    common.add_argument("--json", action="store_true", help="Print deterministic JSON instead of text")
    common.add_argument(
        "--seed",
        type=int,
        default=get_env_value("CHARP_SEED", 0, int),
        help="Seed for polynomial factorisation (default: from env CHARP_SEED or 0)",
    )
    common.add_argument(
        "--log-level",
        default=get_env_value("LOG_LEVEL", "INFO"),
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        help="Logging level (default: from env or INFO)",
    )
    common.add_argument(
        "--verbose",
        action="store_true",
        default=get_env_value("VERBOSE", False, bool),
        help="Untruncated debug payloads (only useful with DEBUG log-level)",
    )
    return common


def parse_args(argv: Sequence[str] | None = None) -> argparse.Namespace:
    """
    Parse command line arguments with environment variable fallback

    Args:
        argv: Arguments without the program name; sys.argv[1:] when None

    Returns:
        argparse.Namespace: Parsed arguments
    """
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="charp",
        description="Exact ideal calculus over F_p[t, x, y] and Frobenius power experiments",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    gb = sub.add_parser("gb", parents=[common], help="Reduced Gröbner basis of an ideal")
    gb.add_argument("ideal", nargs="+", help="Generators, comma separated or one per argument")

    member = sub.add_parser("member", parents=[common], help="Ideal membership test")
    member.add_argument("f", help="Polynomial to test")
    member.add_argument("ideal", nargs="+", help="Generators of the ideal (put them after --)")

    for name, text in (
        ("colon", "Colon ideal (I : J)"),
        ("intersect", "Intersection of two ideals"),
        ("saturate", "Saturation (I : J^infinity)"),
    ):
        cmd = sub.add_parser(name, parents=[common], help=text)
        cmd.add_argument("I", help="Comma-separated generators of I")
        cmd.add_argument("J", help="Comma-separated generators of J")

    eliminate = sub.add_parser("eliminate", parents=[common], help="Eliminate variables")
    eliminate.add_argument("ideal", nargs="+", help="Generators of the ideal")
    eliminate.add_argument("--drop", type=parse_name_list, required=True, help="Variables to eliminate, e.g. x,y")

    bracket = sub.add_parser("bracket-power", parents=[common], help="Frobenius bracket power I^[q]")
    bracket.add_argument("ideal", nargs="+", help="Generators of the ideal")

    tau = sub.add_parser("tau", parents=[common], help="The polynomial 1 + t + ... + t^(q-2)")
    tau.add_argument("--factor", action="store_true", help="Also factor it over F_p")

    ass = sub.add_parser("frobenius-ass", parents=[common], help="Torsion and maximal associated primes of F^e(M_F)")
    ass.add_argument("--F", dest="F", default=None, help="Hypersurface equation (default: x*y*(x-y)*(x-t*y))")
    ass.add_argument("--split", default=None, help='Linear factors, e.g. "x,y,x-y,x-t*y" (each may end in ^r)')

    verify = sub.add_parser("verify-paper", parents=[common], help="Run every check asserted for the flagship hypersurface")
    verify.add_argument("--emax", type=int, default=None, help="Check e = 1..emax instead of the single --e")

    sweep = sub.add_parser("sweep", parents=[common], help="Persistent sweep over (p, e, F)")
    sweep.add_argument("--emax", type=int, default=1, help="Largest exponent (default: 1)")
    sweep.add_argument("--F", dest="F", action="append", default=None, help="Hypersurface; repeat for several")
    sweep.add_argument("--split", default=None, help="Split form applied to every --F")
    sweep.add_argument(
        "--out",
        default=get_env_value("CHARP_SWEEP_OUT", "results.jsonl"),
        help="JSONL output file (default: from env or results.jsonl)",
    )
    sweep.add_argument(
        "--jobs",
        type=int,
        default=get_env_value("CHARP_JOBS", 1, int),
        help="Concurrent cells (default: from env or 1)",
    )

    return parser.parse_args(argv)


def single_prime(args: argparse.Namespace) -> int:
    if not args.p:
        raise PreconditionError("--p is required")
    if len(args.p) != 1:
        raise PreconditionError(f"{args.command} takes a single prime, got {args.p}")
    return args.p[0]


def mark(ok: bool | None) -> None:
    if ok is None:
        ASCIIColors.yellow("-", end="")
    elif ok:
        ASCIIColors.green("✓", end="")
    else:
        ASCIIColors.red("✗", end="")


def show_lines(title: str, lines: Sequence[str]) -> None:
    ASCIIColors.magenta(title)
    for line in lines:
        ASCIIColors.white(f"    {line}")
    if not lines:
        ASCIIColors.white("    0")


def show_field(label: str, value: Any, last: bool = False) -> None:
    branch = "└─" if last else "├─"
    ASCIIColors.white(f"    {branch} {label}: ", end="")
    ASCIIColors.yellow(f"{value}")


def show_check(label: str, ok: bool | None, last: bool = False) -> None:
    branch = "└─" if last else "├─"
    ASCIIColors.white(f"    {branch} {label}: ", end="")
    mark(ok)
    ASCIIColors.white("")
