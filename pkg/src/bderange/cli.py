"""Command-line front end.

Exit codes: 0 on success, 1 when a verification fails, 2 on usage, parse or
size-cap errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Callable

from . import analysis, decomp, typea, typeb
from .polyseries import IntPolynomial
from .sigperm import EnumerationCapError, exc_b, is_derangement_b, parse_signed_permutation
from .verify import SUITES, run_suite

TABLE_CAP = 200
ROOTS_CAP = 40
MOMENTS_CAP = 2000
NORMALITY_CAP = 2000

FAMILIES: dict[str, Callable[[int], IntPolynomial]] = {
    "derangement_b": typeb.derangement_b,
    "eulerian_b": typeb.eulerian_b,
    "derangement_a": typea.derangement_a,
    "eulerian_a_exc": typea.eulerian_a_exc,
}


class UsageError(Exception):
    pass


def _emit(text: str, out: str | None) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2)


def _cap(value: int, cap: int, what: str) -> int:
    if value < 0:
        raise UsageError(f"{what} must be nonnegative")
    if value > cap:
        raise UsageError(f"{what}={value} exceeds the cap {cap}")
    return value


# -- commands -------------------------------------------------------------------------


def cmd_table(args) -> int:
    n_max = _cap(args.n_max, TABLE_CAP, "n-max")
    members = FAMILIES[args.family]
    if args.format == "json":
        text = typeb.family_json(args.family, n_max, members)
    elif args.format == "csv":
        text = typeb.triangle_csv([list(members(n).coeffs) for n in range(n_max + 1)])
    else:
        # the printed d_n^B table starts at n = 1; d_0 = 1 is shown only on its own
        start = 1 if args.family == "derangement_b" and n_max >= 1 else 0
        text = "\n".join(members(n).to_compact() for n in range(start, n_max + 1))
    _emit(text, args.out)
    return 0


def cmd_verify(args) -> int:
    reports = run_suite(args.suite, args.n_max)
    if args.format == "json":
        text = _dump({"passed": all(r.passed for r in reports), "suites": [r.to_dict() for r in reports]})
    else:
        text = "\n".join(r.to_text() for r in reports)
    _emit(text, args.out)
    return 0 if all(r.passed for r in reports) else 1


def _cycles_text(cycles) -> str:
    return "".join(str(c) for c in cycles)


def cmd_decompose(args) -> int:
    try:
        sigma = parse_signed_permutation(args.permutation)
    except ValueError as err:
        raise UsageError(str(err)) from None
    cycles = list(decomp.cycle_decompose(sigma).cycles)
    if args.listing == "magnitude":
        cycles.sort(key=lambda c: abs(c.minimum), reverse=True)
    record = {
        "permutation": sigma.to_text(),
        "exc_b": exc_b(sigma),
        "cycles": [list(c.entries) for c in cycles],
    }
    if is_derangement_b(sigma):
        u, primes = decomp.decompose_sequence(cycles)
        record["u_stage"] = [list(c.entries) for c in u]
        record["p_decomposition"] = [list(c.entries) for c in primes]
        record["weight_exponent"] = decomp.PDecomposition(tuple(primes)).weight_exponent
    else:
        # positive singletons are fixed points and pass through U untouched
        u = [x for c in cycles for x in ([c] if len(c) == 1 and c.minimum > 0 else decomp.u_algorithm(c))]
        record["u_stage"] = [list(c.entries) for c in u]
        record["note"] = "not a derangement: P-decomposition skipped"
    if args.format == "json":
        text = _dump(record)
    else:
        lines = [
            f"permutation: {sigma.to_text()}",
            f"cycles:      {_cycles_text(cycles)}",
            f"U:           {_cycles_text(u)}",
        ]
        if "note" in record:
            lines.append(f"note:        {record['note']}")
        else:
            lines.append(f"V o U:       {_cycles_text(primes)}")
            lines.append(f"weight:      q^{record['weight_exponent']}")
        lines.append(f"exc_B:       {record['exc_b']}")
        text = "\n".join(lines)
    _emit(text, args.out)
    return 0


def cmd_moments(args) -> int:
    n = _cap(args.n, MOMENTS_CAP, "n")
    if n < 1:
        raise UsageError("moments need n >= 1")
    rep = analysis.moments(n)
    if args.format == "json":
        text = _dump(rep.to_dict())
    else:
        text = "\n".join(
            [
                f"n = {n}",
                f"mean            = {rep.mean_exact}  (~{float(rep.mean_exact):.12f})",
                f"variance        = {rep.var_exact}  (~{float(rep.var_exact):.12f})",
                f"mean - (n/2+1/4)       = {float(rep.mean_asymptotic_gap):.6e}",
                f"var - n/12             = {float(rep.var_gap_derived):.6e}",
                f"var - (n/12 - 1/16)    = {float(rep.var_gap_shifted):.6e}"
                "   <- the -1/16 constant is not borne out by the exact values",
            ]
        )
    _emit(text, args.out)
    return 0


def _parse_n_list(text: str) -> list[int]:
    try:
        ns = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad n list {text!r}") from None
    for n in ns:
        _cap(n, NORMALITY_CAP, "n")
        if n < 2:
            raise UsageError("normality needs n >= 2")
    return ns


def cmd_normality(args) -> int:
    ns = _parse_n_list(args.n)
    reps = [analysis.normality_report(n) for n in ns]
    if args.format == "json":
        text = _dump([r.to_dict() for r in reps])
    elif args.format == "csv":
        text = "n,sup_cdf_distance,continuity_corrected_distance\n" + "\n".join(
            f"{r.n},{r.to_dict()['sup_cdf_distance']},{r.to_dict()['continuity_corrected_distance']}" for r in reps
        )
    else:
        text = "\n".join(f"n={r.n}: sup |F - Phi| = {r.to_dict(15)['sup_cdf_distance']}" for r in reps)
    _emit(text, args.out)
    return 0


def cmd_roots(args) -> int:
    n = _cap(args.n, ROOTS_CAP, "n")
    p = FAMILIES[args.family](n)
    if p.is_zero():
        raise UsageError(f"{args.family}({n}) is the zero polynomial")
    iso = analysis.isolate_roots(p, (args.family, n))
    if args.format == "json":
        text = _dump(iso.to_dict())
    else:
        lines = [f"{args.family}({n}) = {p}", f"root at 0 with multiplicity {iso.multiplicity_at_zero}"]
        for a, b in iso.intervals:
            lines.append(f"one root in ({a}, {b}]")
        text = "\n".join(lines)
    _emit(text, args.out)
    return 0


def cmd_egf(args) -> int:
    order = _cap(args.order, 60, "order")
    rep = SUITES["egf"](order)
    text = _dump(rep.to_dict()) if args.format == "json" else rep.to_text()
    _emit(text, args.out)
    return 0 if rep.passed else 1


# -- parser -------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bderange", description="Type B derangement polynomials.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=("text", "json")):
        p.add_argument("--format", choices=formats, default="text")
        p.add_argument("--out", metavar="PATH", default=None)

    p = sub.add_parser("table", help="coefficient table of a polynomial family")
    p.add_argument("family", choices=sorted(FAMILIES))
    p.add_argument("n_max_pos", nargs="?", type=int, metavar="N_MAX")
    p.add_argument("--n-max", type=int, default=None)
    common(p, ("text", "json", "csv"))
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=sorted(SUITES) + ["all"])
    p.add_argument("n_max_pos", nargs="?", type=int, metavar="N_MAX")
    p.add_argument("--n-max", type=int, default=None)
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("decompose", help="cycles, U and V o U stages of a signed permutation")
    p.add_argument("permutation", help='e.g. "3,-5,4,2,9,-6,8,7,-1"')
    p.add_argument(
        "--listing",
        choices=("canonical", "magnitude"),
        default="canonical",
        help="cycle order: decreasing minimum (canonical) or decreasing |minimum|",
    )
    common(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("moments", help="exact mean and variance of exc_B on D_n^B")
    p.add_argument("n_pos", nargs="?", type=int, metavar="N")
    p.add_argument("--n", type=int, default=None)
    common(p)
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("normality", help="distance to the standard normal CDF")
    p.add_argument("n_pos", nargs="?", metavar="N_LIST", help="comma separated, e.g. 20,50,100")
    p.add_argument("--n", default=None)
    common(p, ("text", "json", "csv"))
    p.set_defaults(func=cmd_normality)

    p = sub.add_parser("roots", help="isolating intervals for the real roots")
    p.add_argument("n_pos", nargs="?", type=int, metavar="N")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--family", choices=sorted(FAMILIES), default="derangement_b")
    common(p)
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("egf", help="check the generating-function identities")
    p.add_argument("--order", type=int, default=typeb.DEFAULT_EGF_ORDER)
    common(p)
    p.set_defaults(func=cmd_egf)
    return parser


def _merge_positional(args) -> None:
    for name in ("n_max", "n"):
        pos = getattr(args, f"{name}_pos", None)
        if pos is not None:
            if getattr(args, name, None) is not None:
                raise UsageError(f"give {name} either positionally or as a flag, not both")
            setattr(args, name, pos)
    if args.command == "table" and args.n_max is None:
        args.n_max = 10
    if args.command in ("moments", "roots") and args.n is None:
        raise UsageError("n is required")
    if args.command == "normality" and args.n is None:
        args.n = "10,20,50,100"


_NEGATIVE_LIST = re.compile(r"^-\d+(\s*,\s*-?\d+)+$")


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    # argparse reads "-1,-2" as an option; a leading space keeps it positional
    argv = [" " + a if _NEGATIVE_LIST.match(a) else a for a in argv]
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _merge_positional(args)
        return args.func(args)
    except (UsageError, EnumerationCapError) as err:
        print(f"bderange {args.command}: error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
