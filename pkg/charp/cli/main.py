"""
Entry point of the charp command line.

Exit codes: 0 success, 1 an identity asserted for the flagship hypersurface
evaluated false, 2 usage, parse or precondition error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from ascii_colors import ASCIIColors

from ..algebra.field import tau, uni_factor
from ..algebra.groebner import (
    Ideal,
    bracket_power,
    colon_element,
    colon_ideal,
    eliminate,
    intersect,
    saturate,
)
from ..algebra.multipoly import MonomialOrder, PolyRing
from ..base import LabConfig
from ..exceptions import CharpError, PolynomialSyntaxError
from ..frobenius import (
    FLAGSHIP_F,
    Hypersurface,
    is_flagship,
    maximal_ass_primes,
    torsion_elementary_divisors,
)
from ..lab import FrobeniusLab
from ..types import FlagshipCheck
from ..utils import logger, set_factor_seed, set_verbose_debug, setup_logger
from .utils_cli import mark, parse_args, show_check, show_field, show_lines, single_prime

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


def _emit_json(payload: Any) -> None:
    print(json.dumps(payload, indent=2, ensure_ascii=False))


def _ring(args: argparse.Namespace) -> PolyRing:
    return PolyRing(single_prime(args), args.vars)


def _basis_strings(ideal: Ideal, order: MonomialOrder) -> list[str]:
    return [g.to_string(order) for g in ideal.groebner(order)]


def _ideal_result(args: argparse.Namespace, config: LabConfig, title: str, ideal: Ideal) -> int:
    order = MonomialOrder.from_name(config.order, ideal.ring)
    basis = _basis_strings(ideal, order)
    if args.json:
        _emit_json({"order": config.order, "generators": basis})
    else:
        show_lines(title, basis)
    return EXIT_OK


def cmd_gb(args: argparse.Namespace, config: LabConfig) -> int:
    ring = _ring(args)
    return _ideal_result(args, config, f"Reduced Gröbner basis ({config.order}):", Ideal.parse(ring, args.ideal))


def cmd_member(args: argparse.Namespace, config: LabConfig) -> int:
    ring = _ring(args)
    order = MonomialOrder.from_name(config.order, ring)
    f = ring.parse(args.f)
    ideal = Ideal.parse(ring, args.ideal)
    remainder = ideal.reduce(f, order)
    result = not remainder
    if args.json:
        _emit_json({"member": result, "normal_form": remainder.to_string(order)})
    else:
        ASCIIColors.white(f"{f} in {ideal}: ", end="")
        mark(result)
        ASCIIColors.white(f"  (normal form {remainder.to_string(order)})")
    return EXIT_OK


def cmd_binary(args: argparse.Namespace, config: LabConfig) -> int:
    ring = _ring(args)
    first = Ideal.parse(ring, args.I)
    second = Ideal.parse(ring, args.J)
    if args.command == "colon":
        if len(second.gens) == 1:
            result = colon_element(first, second.gens[0])
        else:
            result = colon_ideal(first, second)
        title = f"{first} : {second} ="
    elif args.command == "intersect":
        result = intersect(first, second)
        title = f"{first} ∩ {second} ="
    else:
        result = saturate(first, second)
        title = f"{first} : {second}^∞ ="
    return _ideal_result(args, config, title, result)


def cmd_eliminate(args: argparse.Namespace, config: LabConfig) -> int:
    ring = _ring(args)
    ideal = Ideal.parse(ring, args.ideal)
    result = eliminate(ideal, args.drop)
    return _ideal_result(args, config, f"{ideal} ∩ F_{ring.p}[{', '.join(v for v in ring.variables if v not in args.drop)}] =", result)


def cmd_bracket_power(args: argparse.Namespace, config: LabConfig) -> int:
    ring = _ring(args)
    q = ring.p**args.e
    ideal = Ideal.parse(ring, args.ideal)
    return _ideal_result(args, config, f"{ideal}^[{q}] =", bracket_power(ideal, q))


def cmd_tau(args: argparse.Namespace, config: LabConfig) -> int:
    p = single_prime(args)
    poly = tau(p, args.e)
    payload: dict[str, Any] = {"p": p, "e": args.e, "q": p**args.e, "tau": str(poly)}
    if args.factor:
        factors = uni_factor(poly)
        payload["factorization"] = str(factors)
        payload["factors"] = [{"factor": str(f), "multiplicity": m} for f, m in factors.factors]
    if args.json:
        _emit_json(payload)
    elif args.factor:
        ASCIIColors.yellow(f"{payload['tau']} = {payload['factorization']}")
    else:
        ASCIIColors.yellow(payload["tau"])
    return EXIT_OK


def cmd_frobenius_ass(args: argparse.Namespace, config: LabConfig) -> int:
    ring = _ring(args)
    p, e = ring.p, args.e
    F = Hypersurface.parse(ring, args.F or FLAGSHIP_F, args.split)
    divisors = torsion_elementary_divisors(F, p, e)
    tq = tau(p, e)
    divides = tq.divides(divisors.largest())
    probes = maximal_ass_primes(F, p, e)
    payload = {
        "p": p,
        "e": e,
        "q": p**e,
        "f_expr": F.source,
        "divisors": [str(d) for d in divisors.torsion],
        "free_rank": divisors.free_rank,
        "tau": str(tq),
        "tau_divides": divides,
        "probes": [r.to_record().model_dump() for r in probes],
    }
    if args.json:
        _emit_json(payload)
    else:
        ASCIIColors.magenta(f"F^{e}(M_F) for F = {F.source} over F_{p}[t] (q = {p**e}):")
        show_field("torsion divisors", ", ".join(payload["divisors"]) or "none")
        show_field("free rank", divisors.free_rank)
        show_check(f"tau = {tq} divides the annihilator", divides)
        for i, r in enumerate(probes):
            label = f"({r.prime}, x, y)" + (f" witness {r.witness}" if r.witness is not None else "")
            show_check(label, r.associated, last=i == len(probes) - 1)
    if is_flagship(F.F) and p**e >= 3 and not divides:
        return EXIT_CHECK_FAILED
    return EXIT_OK


def _show_flagship_check(check: FlagshipCheck) -> None:
    ASCIIColors.magenta(f"p={check.p} e={check.e} (q={check.q}):")
    show_check("(x^(q-1), y^(q-1)) : (x - y) = (y^(q-1), gamma)", check.lemma11)
    if check.degenerate:
        show_field("tau*G in I_q, G not in I_q, (I_q : G) ∩ F_p[t] = (tau)", "degenerate (q = 2)")
    else:
        t12 = check.theorem12
        ASCIIColors.white("    ├─ tau*G in I_q, G not in I_q, (I_q : G) ∩ F_p[t] = (tau): ", end="")
        for ok in (t12.member_tau_g, t12.not_member_g, t12.contraction_equals_tau):
            mark(ok)
        ASCIIColors.white(f"  (contraction {t12.contraction})")
        show_check(f"witness colon equals tau = {check.tau}", check.witness_colon == check.tau)
    show_check("tau divides the torsion annihilator", check.tau_divides_torsion)
    show_check("tight closure of 0 is the image of (x,y)^q", check.remark13.ge_check)
    show_check("G^e(M_F) has no associated maximal prime (pi, x, y)", check.remark13.probes_tame, last=True)


def cmd_verify_paper(args: argparse.Namespace, config: LabConfig) -> int:
    if not args.p:
        args.p = [2, 3, 5]
    lab = FrobeniusLab(config=config)
    exponents = range(1, args.emax + 1) if args.emax is not None else [args.e]
    checks = lab.verify_flagship(args.p, exponents=exponents)
    if args.json:
        _emit_json([c.model_dump() for c in checks])
    else:
        for check in checks:
            _show_flagship_check(check)
    return EXIT_OK if all(c.passed for c in checks) else EXIT_CHECK_FAILED


def cmd_sweep(args: argparse.Namespace, config: LabConfig) -> int:
    if not args.p:
        args.p = [2, 3]
    lab = FrobeniusLab(config=config)
    f_exprs = args.F or [FLAGSHIP_F]
    records = lab.sweep(args.p, args.emax, f_exprs, out=args.out, jobs=args.jobs, split=args.split)
    holds = {r.key: r.checks_hold(flagship=lab.is_flagship_record(r)) for r in records}
    failed = [key for key, ok in holds.items() if not ok]
    if args.json:
        _emit_json([r.model_dump() for r in records])
    else:
        ASCIIColors.magenta(f"Sweep wrote {len(records)} new records to {args.out}")
        for r in records:
            ASCIIColors.white(f"    p={r.p} e={r.e} F={r.f_expr}: ", end="")
            mark(holds[r.key])
            ASCIIColors.white(f"  torsion [{', '.join(r.divisors)}] {r.duration_ms} ms")
    return EXIT_CHECK_FAILED if failed else EXIT_OK


COMMANDS = {
    "gb": cmd_gb,
    "member": cmd_member,
    "colon": cmd_binary,
    "intersect": cmd_binary,
    "saturate": cmd_binary,
    "eliminate": cmd_eliminate,
    "bracket-power": cmd_bracket_power,
    "tau": cmd_tau,
    "frobenius-ass": cmd_frobenius_ass,
    "verify-paper": cmd_verify_paper,
    "sweep": cmd_sweep,
}


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    setup_logger("charp", level=args.log_level)
    set_verbose_debug(args.verbose)
    set_factor_seed(args.seed)
    config = LabConfig(seed=args.seed, order=args.order, variables=tuple(args.vars))

    try:
        if args.command == "sweep":
            config.jobs = args.jobs
            config.sweep_out = args.out
        return COMMANDS[args.command](args, config)
    except PolynomialSyntaxError as e:
        logger.error(str(e))
        print(e.caret(), file=sys.stderr)
        return EXIT_USAGE
    except CharpError as e:
        logger.error(str(e))
        return EXIT_USAGE


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
