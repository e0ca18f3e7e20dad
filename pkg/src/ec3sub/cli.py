"""Command-line interface.

Usage::

    $ ec3sub classify -p 7 --general 0,0,1,0,0
    $ ec3sub enumerate -p 5 --family q2mod3
    $ ec3sub verify -p 13 --json
    $ ec3sub divpoly -p 7 --short 0,2 -n 3
    $ ec3sub orbit -p 7 -a 4
    $ ec3sub fermat -p 13

Exit codes: 0 success, 1 bad input or failed precondition, 2 conformance
mismatch (``verify`` only).  Negative curve coefficients need the ``=``
form, e.g. ``--short=-1,2``.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import oracle, torsion3
from .conformance import SCHEMA_VERSION, verify
from .curve import Curve, to_short
from .errors import Ec3Error
from .ff import make_field
from .poly import division_polynomial

EXIT_OK, EXIT_INPUT, EXIT_MISMATCH = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for mismatches here
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def render_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _ints(text: str, n: int, what: str) -> list[int]:
    try:
        vals = [int(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"{what} must be {n} comma-separated integers, got {text!r}") from None
    if len(vals) != n:
        raise UsageError(f"{what} must be {n} comma-separated integers, got {text!r}")
    return vals


def _curve(args) -> Curve:
    ctx = make_field(args.p)
    if args.short is not None:
        return Curve.short(ctx, *_ints(args.short, 2, "--short"))
    if args.general is not None:
        return Curve.general(ctx, *_ints(args.general, 5, "--general"))
    raise UsageError("give the curve with --short A,B or --general a1,a2,a3,a4,a6")


def _conventions(ctx) -> str:
    if ctx.rho is None:
        return f"F_{ctx.p}: p = 2 mod 3 (no ρ, b0); t = {ctx.t}, F_p^2 = F_p(√{ctx.d})"
    return f"F_{ctx.p}: ρ = {ctx.rho}, b0 = {ctx.b0} (χ(b0) = ρ), t = {ctx.t}, F_p^2 = F_p(√{ctx.d})"


def _num(v) -> str:
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return str(v)


# -- commands ------------------------------------------------------------------


def cmd_classify(args):
    E = _curve(args)
    r = torsion3.classify(E)
    doc = {"schema_version": SCHEMA_VERSION, "report": r.to_dict()}
    lines = [
        _conventions(E.ctx),
        f"curve        {E}",
        f"short form   y^2 = x^3 + {r.short[0]}x + {r.short[1]}",
        f"Δ = {r.discriminant}   j = {r.j_invariant}",
        f"#E(F_p) = {r.point_count}   t = {r.trace}   #E(F_p^2) = {r.point_count_fp2}",
        f"group        Z/{r.group.n1} x Z/{r.group.n2}",
        f"E(F_p)[3]    order {r.rational_3torsion_order}",
        f"ψ3 pattern   {list(r.psi3_pattern)}",
        f"stable order-3 subgroups: {len(r.stable_subgroups)}",
    ]
    for s in r.stable_subgroups:
        flag = "pointwise rational" if s.pointwise_rational else "not pointwise rational"
        lines.append(f"  x = {s.abscissa}  {flag}")
    fam = r.family
    lines.append("family       none" if fam is None else f"family       {fam.kind.value} a = {fam.a}, i = {fam.i}")
    return doc, "\n".join(lines) + "\n", EXIT_OK


FAMILIES = ("cyclic", "noncyclic", "twist-cyclic", "twist-noncyclic", "q2mod3")


def _enumerate(ctx, family: str):
    p = ctx.p
    if family == "q2mod3":
        ctx.require_class(2)
        reps = [(c, torsion3.family_curve(ctx, c.a, c.i)) for c in torsion3.cyclic_representatives(ctx)]
        return reps, Fraction(p - 1), "q - 1"
    ctx.require_class(1)
    cyc = Fraction(2 * p + 4, 3)
    full = Fraction(p + 12 - p % 12, 12)
    if family == "cyclic":
        reps = [(c, torsion3.family_curve(ctx, c.a, c.i)) for c in torsion3.cyclic_representatives(ctx)]
        return reps, cyc, "(2q+4)/3"
    if family == "noncyclic":
        reps = [(c, torsion3.noncyclic_curve(ctx, c.a)) for c in torsion3.noncyclic_representatives(ctx)]
        return reps, full, "(q+12-(q mod 12))/12"
    kind = torsion3.FamilyKind.TWIST_CYCLIC if family == "twist-cyclic" else torsion3.FamilyKind.TWIST_NONCYCLIC
    reps = [(t.coords, t.curve(ctx)) for t in torsion3.twist_representatives(ctx, kind)]
    return reps, (cyc if family == "twist-cyclic" else full), ("(2q+4)/3" if family == "twist-cyclic" else "(q+12-(q mod 12))/12")


def cmd_enumerate(args):
    ctx = make_field(args.p)
    reps, formula, formula_text = _enumerate(ctx, args.family)
    verdict = "match" if formula == len(reps) else "mismatch"
    rows = []
    for coords, E in reps:
        A, B, _ = to_short(E)
        rows.append({"coords": coords.to_dict(), "curve": {"p": ctx.p, "general": list(E.coeffs), "short": [A, B]}})
    doc = {
        "schema_version": SCHEMA_VERSION,
        "p": ctx.p,
        "family": args.family,
        "count": len(reps),
        "formula": formula_text,
        "formula_value": _num(formula),
        "verdict": verdict,
        "representatives": rows,
    }
    lines = [_conventions(ctx), f"family {args.family}, representatives: {len(reps)}"]
    for row in rows:
        c, s = row["coords"], row["curve"]["short"]
        lines.append(f"  a = {c['a']}, i = {c['i']}   short ({s[0]}, {s[1]})")
    lines.append(f"formula {formula_text} = {_num(formula)}   verdict {verdict}")
    return doc, "\n".join(lines) + "\n", EXIT_OK


def cmd_verify(args):
    ctx = make_field(args.p)
    rep = verify(ctx)
    doc = rep.to_dict()
    lines = [_conventions(ctx)]
    if rep.cm is not None:
        lines.append(f"4q = A^2 + 27B^2 with A = {rep.cm.A}, B = {rep.cm.B}")
    lines.append(f"Skolem convention: {torsion3.SKOLEM_CONVENTION}")
    width = max(len(c.id) for c in rep.claims)
    for c in rep.claims:
        d = c.to_dict()
        vals = "" if not c.applicable else f"claimed {d['claimed']}, observed {d['observed']}"
        extra = f"  [{c.detail}]" if c.detail else ""
        lines.append(f"{c.verdict:<14} {c.id:<{width}}  {vals}{extra}")
    counts = {v: sum(1 for c in rep.claims if c.verdict == v) for v in ("match", "mismatch", "not-applicable")}
    lines.append(", ".join(f"{n} {v}" for v, n in counts.items()))
    return doc, "\n".join(lines) + "\n", rep.exit_code


def cmd_divpoly(args):
    ctx = make_field(args.p)
    A, B = _ints(args.short, 2, "--short")
    d = division_polynomial(ctx, A, B, args.n)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "curve": {"p": ctx.p, "short": [A % ctx.p, B % ctx.p]},
        "n": args.n,
        "x_part": list(d.x_part.coeffs),
        "y_factor": d.y_factor,
        "text": str(d),
    }
    return doc, f"{d}\n", EXIT_OK


def cmd_orbit(args):
    ctx = make_field(args.p)
    ctx.require_class(1)
    images = torsion3.ga_action(ctx, args.a)
    orbit = torsion3.ga_orbit(ctx, args.a)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "p": ctx.p,
        "a": args.a % ctx.p,
        "images": [{"map": g.label, "value": g.value, "valid": g.valid} for g in images],
        "orbit": orbit,
    }
    lines = [_conventions(ctx), f"excluded parameters {torsion3.excluded_parameters(ctx)}"]
    for g in images:
        val = "undefined" if g.value is None else str(g.value)
        lines.append(f"  {g.label:<34} {val:>9}  {'valid' if g.valid else 'outside domain'}")
    lines.append("orbit {" + ", ".join(map(str, orbit)) + "}")
    return doc, "\n".join(lines) + "\n", EXIT_OK


def cmd_fermat(args):
    ctx = make_field(args.p)
    cm = oracle.cm_decompose(ctx)
    n = oracle.fermat_cubic_count(ctx)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "p": ctx.p,
        "solutions": n,
        "cm_decomposition": {"A": cm.A, "B": cm.B},
        "formula_value": ctx.p - 2 + cm.A,
    }
    text = f"{n} solutions; 4q = ({cm.A})^2 + 27·{cm.B}^2; q - 2 + A = {ctx.p - 2 + cm.A}\n"
    return doc, text, EXIT_OK


COMMANDS = {
    "classify": cmd_classify,
    "enumerate": cmd_enumerate,
    "verify": cmd_verify,
    "divpoly": cmd_divpoly,
    "orbit": cmd_orbit,
    "fermat": cmd_fermat,
}


def build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("-p", type=int, required=True, help="prime p > 3")
    common.add_argument("--json", action="store_true", help="print the JSON document instead of text")
    common.add_argument("--json-out", metavar="PATH", help="also write the JSON document to PATH")

    parser = _Parser(prog="ec3sub", description="Order-3 subgroups of elliptic curves over prime fields.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("classify", parents=[common], help="torsion report for one curve")
    p.add_argument("--short", metavar="A,B")
    p.add_argument("--general", metavar="a1,a2,a3,a4,a6")

    p = sub.add_parser("enumerate", parents=[common], help="representatives of a family")
    p.add_argument("--family", choices=FAMILIES, required=True)

    sub.add_parser("verify", parents=[common], help="run the claim catalogue")

    p = sub.add_parser("divpoly", parents=[common], help="n-th division polynomial")
    p.add_argument("--short", metavar="A,B", required=True)
    p.add_argument("-n", type=int, required=True)

    p = sub.add_parser("orbit", parents=[common], help="G_a orbit of a parameter")
    p.add_argument("-a", type=int, required=True)

    sub.add_parser("fermat", parents=[common], help="solutions of x^3 + y^3 = 1")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        doc, text, code = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (Ec3Error, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    rendered = render_json(doc)
    if args.json_out:
        with open(args.json_out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(rendered)
    sys.stdout.write(rendered if args.json else text)
    return code


if __name__ == "__main__":
    sys.exit(main())
