"""``drf`` command line: construct, verify and bound reports.

Exit codes: 0 ok, 1 property violated, 2 invalid input, 3 budget exhausted.
Report lines on stdout start with SIZE, FORMULA, VERIFIED, WITNESS or BOUND.
"""

from __future__ import annotations

import argparse
import math
import sys
import warnings
from fractions import Fraction

from . import bounds, drf, families, gfq, gvcode, hitter, oracle
from .errors import BudgetExceeded, DRestrictError

EXIT_OK, EXIT_VIOLATED, EXIT_INVALID, EXIT_BUDGET = 0, 1, 2, 3
CLI_BUDGET = 10**8


def _fraction(text: str) -> Fraction:
    try:
        num, _, den = text.partition("/")
        value = Fraction(int(num), int(den) if den else 1)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational A/B, got {text!r}") from None
    return value


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="drf", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    con = sub.add_parser("construct", help="build an object and write a DRF file")
    csub = con.add_subparsers(dest="kind", required=True, parser_class=_Parser)

    p = csub.add_parser("code")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--n", type=int, required=True)

    p = csub.add_parser("hitting")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--eps", type=_fraction)

    p = csub.add_parser("phf")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--dense", type=_fraction, metavar="A/B")
    p.add_argument("--small-d", action="store_true")

    p = csub.add_parser("cff")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--w", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--qmult", type=_fraction, default=Fraction(3))

    p = csub.add_parser("shf")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int)
    p.add_argument("--ds", type=_int_list, required=True)
    p.add_argument("--small-alphabet", action="store_true")

    for p in csub.choices.values():
        p.add_argument("-o", "--output", metavar="FILE")

    ver = sub.add_parser("verify", help="check a DRF file exhaustively")
    ver.add_argument("file")
    ver.add_argument("--budget", type=int, default=CLI_BUDGET)

    bnd = sub.add_parser("bounds", help="evaluate bound formulas")
    bsub = bnd.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    p = bsub.add_parser("phf")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p = bsub.add_parser("dense-phf")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--eps", type=_fraction, required=True)
    p.add_argument("--n", type=int)
    p = bsub.add_parser("cff")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--w", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p = bsub.add_parser("shf")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--ds", type=_int_list, required=True)
    p = bsub.add_parser("entropy")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--p", type=_fraction, required=True)
    return parser


# -- construct ---------------------------------------------------------------

def _construct(args, out) -> int:
    kind = args.kind
    if kind == "code":
        params = hitter.code_params_for(args.q, args.h, args.n)
        obj = gvcode.construct_code(params)
        size, formula = obj.m, f"{params.m} (code length, h={args.h})"
        size_line = f"SIZE m={obj.m} k={obj.k} codewords={args.n}"
    elif kind == "hitting":
        if args.eps is None:
            obj = hitter.build_hitting(args.n, args.d, args.q)
            formula = f"{hitter.hitting_size(args.n, args.d, args.q)} (hitting set, h={obj.h})"
        else:
            obj = hitter.build_dense_hitting(args.n, args.d, args.q, args.eps)
            formula = f"{hitter.dense_hitting_size(args.n, args.d, args.q, args.eps)} (dense hitting set, h={obj.h})"
        size = obj.m
        size_line = f"SIZE m={size}"
    elif kind == "phf":
        if args.dense is not None:
            obj = families.build_dense_phf(args.n, args.q, args.d, args.dense)
            formula = f"{families.dense_phf_size(args.n, args.q, args.d, args.dense)} (dense PHF)"
        elif args.small_d:
            obj = families.build_phf_small_d(args.n, args.q, args.d)
            if args.q > args.d**2:
                formula = f"{families.phf_size(args.n, args.q, args.d)} (PHF, q > d^2)"
            else:
                q1 = gfq.next_prime_power(args.d**3)
                m1 = families.phf_size(args.n, q1, args.d)
                cap = families.greedy_bound(q1, args.q, args.d)
                formula = f"{m1} x |H2| <= {m1} x {cap} = {m1 * cap} (composed PHF, q1={q1})"
        else:
            obj = families.build_phf(args.n, args.q, args.d)
            formula = f"{families.phf_size(args.n, args.q, args.d)} (PHF, q'={obj.field_q})"
        size = obj.m
        size_line = f"SIZE m={size}"
    elif kind == "cff":
        obj = families.build_cff(args.n, args.w, args.r, args.qmult)
        q = obj.field_q
        s = hitter.hitting_size(args.n, args.w * args.r, q)
        formula = f"C({q},{args.w}) x {s} = {math.comb(q, args.w) * s} (CFF)"
        size = obj.m
        size_line = f"SIZE m={size}"
    else:
        if args.small_alphabet:
            obj = families.build_shf_small_alphabet(args.n, args.ds)
            count = obj.m // hitter.hitting_size(args.n, obj.D2, obj.field_q)
            formula = f"{count} x {obj.m // count} = {obj.m} (SHF over {len(args.ds)} symbols, q'={obj.field_q})"
        else:
            if args.q is None:
                raise DRestrictError("--q is required unless --small-alphabet is given")
            obj = families.build_shf(args.n, args.q, args.ds)
            D2 = families.shf_degrees(args.ds)[1]
            if len(args.ds) > 1:
                formula = f"{hitter.hitting_size(args.n, D2, obj.field_q)} (SHF, q'={obj.field_q})"
            else:
                formula = "1 (single class)"
        size = obj.m
        size_line = f"SIZE m={size}"
    doc = drf.to_document(obj)
    if args.output:
        drf.dump(doc, args.output)
    print(size_line, file=out)
    print(f"FORMULA {formula}", file=out)
    return EXIT_OK


# -- verify ------------------------------------------------------------------

def _fast_verdict(doc, budget):
    obj = drf.from_document(doc)
    kind, eps = doc.kind, doc.eps
    if kind == "code":
        weight = gvcode.min_weight_bruteforce(obj, budget)
        ok = weight >= obj.params.min_weight
        return ok, None, weight
    if kind == "hitting":
        v = (hitter.verify_hitting_density(obj, budget=budget) if eps is not None
             else hitter.verify_hitting(obj, budget=budget))
    elif kind == "phf":
        v = (families.verify_phf_density(obj, budget=budget) if eps is not None
             else families.verify_phf(obj, budget=budget))
    elif kind == "cff":
        v = families.verify_cff(obj, budget=budget)
    else:
        v = families.verify_shf(obj, budget=budget)
    return v.ok, v.witness, v.checks


def _verify(args, out) -> int:
    try:
        doc = drf.load(args.file)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    fast_ok, fast_witness, info = _fast_verdict(doc, args.budget)
    ref = oracle.oracle_check(doc, args.budget)
    if fast_ok != ref.ok:
        print(f"WITNESS verifier/oracle disagreement: fast={fast_ok} oracle={ref.ok} "
              f"({fast_witness!r} vs {ref.witness!r})", file=out)
        return EXIT_VIOLATED
    if not ref.ok:
        print(f"WITNESS {doc.kind} {_render(ref.witness)}", file=out)
        return EXIT_VIOLATED
    checks = info if doc.kind != "code" else ref.checks
    print(f"VERIFIED {doc.kind} checks={checks}", file=out)
    return EXIT_OK


def _render(witness) -> str:
    return repr(witness).replace(" ", "")


# -- bounds ------------------------------------------------------------------

def _bounds(args, out) -> int:
    kind = args.kind
    if kind == "phf":
        rep = bounds.phf_lower_bound(args.n, args.q, args.d)
        try:
            rep.add("construction_size", families.phf_size(args.n, args.q, args.d), False,
                    "rows produced by build_phf")
        except DRestrictError as exc:
            rep.add("construction_size", float("nan"), False, str(exc))
    elif kind == "dense-phf":
        rep = bounds.dense_phf_feasibility(args.q, args.d, args.eps, args.n)
    elif kind == "cff":
        rep = bounds.cff_bounds(args.n, args.w, args.r)
    elif kind == "shf":
        rep = bounds.shf_lower_bound(args.n, args.q, args.ds)
    else:
        rep = bounds.BoundReport({"q": args.q, "p": args.p})
        rep.add("H_q(p)", bounds.entropy_q(args.q, args.p), False)
    width = max((len(v.name) for v in rep.values), default=0)
    for v in rep.values:
        tag = "asymptotic, constants omitted" if v.asymptotic else "exact"
        value = f"{float(v.value):.6g}" if not isinstance(v.value, int) else str(v.value)
        if isinstance(v.value, Fraction):
            value += f" ({v.value})"
        note = f"  # {v.note}" if v.note else ""
        print(f"BOUND {v.name:<{width}} = {value} [{tag}]{note}", file=out)
    if "infeasible" in rep.verdicts:
        word = "INFEASIBLE" if rep.verdicts["infeasible"] else "FEASIBLE"
        regime = "" if rep.verdicts.get("regime") else " (q <= d^2/2: threshold not applicable)"
        print(f"BOUND verdict = {word}{regime}", file=out)
    return EXIT_OK


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            if args.command == "construct":
                return _construct(args, out)
            if args.command == "verify":
                return _verify(args, out)
            return _bounds(args, out)
    except BudgetExceeded as exc:
        print(f"error: budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except DRestrictError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
