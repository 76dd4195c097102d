"""Command-line front end: expansions, verification sweeps, JSON/LaTeX output.

Verbs map one-to-one onto module entry points; every sweep bound and the RNG
seed are flags with documented defaults, so identical invocations produce
byte-identical output.  Exit codes: 0 success, 1 verification failure, 2
usage error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from .ring import QT, Context, factor_poly, factorize
from .weights import DominantWeight, Partition
from .macdonald import macdonald_P_branching, schur_specialize
from . import matinv, pieri, recurrence, verify


# ---------------------------------------------------------------------------
# LaTeX rendering


def _latex_poly(p):
    """One integer MultiPoly in LaTeX, terms in graded-lex order."""
    if p.is_zero:
        return "0"
    names = p.ctx.names
    out = []
    for e, c in p.sorted_terms():
        mono = ""
        for name, k in zip(names, e):
            if k == 1:
                mono += name
            elif k:
                mono += "%s^{%d}" % (name, k)
        a = abs(c)
        body = mono if mono and a == 1 else "%d%s" % (a, mono) if mono else str(a)
        if not out:
            out.append(body if c > 0 else "-" + body)
        else:
            out.append(("+" if c > 0 else "-") + body)
    return "".join(out)


def _latex_monomial(coeff, exps, ctx):
    """coeff * x^exps as a LaTeX prefix string ('' when equal to one)."""
    body = ""
    for name, e in zip(ctx.names, exps):
        if e == 1:
            body += name
        elif e:
            body += "%s^{%d}" % (name, e)
    c = Fraction(coeff)
    if c == 1:
        return body
    if c == -1:
        return "-" + body if body else "-1"
    num = str(abs(c.numerator))
    s = "-" if c < 0 else ""
    if c.denominator != 1:
        return "%s\\frac{%s}{%d}%s" % (s, num, c.denominator, body)
    return s + num + body


def _latex_factored(poly):
    """Integer MultiPoly as prefix + product of parenthesized factors."""
    content, low, keys = factorize(poly)
    sign = 1
    pieces = []
    for key in sorted(keys, key=repr):
        p = factor_poly(poly.ctx, key)
        mult = keys[key]
        body = _latex_poly(p)
        if body.startswith("-"):
            # lowest-term-first rendering: (q - 1) becomes -(1 - q)
            body = _latex_poly(-p)
            if mult % 2:
                sign = -sign
        pieces.append((body, mult))
    prefix = _latex_monomial(content * sign, low, poly.ctx)
    if prefix == "1":
        prefix = ""
    elif prefix == "-1":
        prefix = "-"
    if len(pieces) == 1 and pieces[0][1] == 1 and not prefix:
        return pieces[0][0]
    out = prefix
    for body, mult in pieces:
        out += "(%s)" % body if mult == 1 else "(%s)^{%d}" % (body, mult)
    return out or "1"


def latex_rational(c):
    """A coefficient as a canonical \\frac{num}{den} (or bare) string."""
    if c.is_zero:
        return "0"
    num, den = c.as_num_den()
    dstr = _latex_factored(den)
    nstr = _latex_factored(num)
    if dstr == "1":
        return nstr
    if dstr.startswith("-"):
        dstr = dstr[1:]
        nstr = _latex_factored(-num)
    if dstr.startswith("(") and dstr.endswith(")") and ")" not in dstr[1:-1]:
        dstr = dstr[1:-1]
    return "\\frac{%s}{%s}" % (nstr, dstr)


def _latex_terms(pairs):
    """Sum of coefficient * label pairs; '0' when empty, bare label on 1."""
    if not pairs:
        return "0"
    out = []
    for coeff, label in pairs:
        cs = latex_rational(coeff)
        out.append(label if cs == "1" else "%s\\,%s" % (cs, label))
    return " + ".join(out)


def render_latex(expansion):
    """Deterministic LaTeX for an expansion in any of the artifact shapes."""
    if hasattr(expansion, "sorted_terms"):  # PExpansion / SymPoly
        basis = "P" if hasattr(expansion, "to_sympoly") else "m"
        return _latex_terms(
            [
                (c, "%s_{(%s)}" % (basis, ",".join(str(x) for x in k.parts)))
                for k, c in expansion.sorted_terms()
            ]
        )
    pairs = []
    for term in expansion:
        if hasattr(term, "row_factor"):
            label = "P_{%d\\omega_1}\\,P_{(%s)}" % (term.row_factor, term.target)
            pairs.append((term.coeff, label))
        else:
            theta, coeff, target = term
            pairs.append((coeff, "P_{(%s)}" % (target,)))
    return _latex_terms(pairs)


# ---------------------------------------------------------------------------
# verbs


def _emit(obj, fmt, text_fn, latex_fn):
    if fmt == "json":
        return json.dumps(obj, sort_keys=True)
    if fmt == "latex":
        return latex_fn()
    return text_fn()


def _cmd_poly(args):
    mu = Partition.parse(args.partition)
    if args.q_equals_t:
        p = schur_specialize(mu, args.vars)
    else:
        p = macdonald_P_branching(mu, args.vars)
    print(_emit(p.to_json(), args.format, lambda: str(p), lambda: render_latex(p)))
    return 0


def _pieri_terms(args):
    lam = DominantWeight.parse(args.weight, args.n)
    if args.k is not None:
        return pieri.pieri_expand_reduced(lam, args.r, args.k)
    expansion = pieri.pieri_expand(lam, args.r)
    ordered = []
    for theta in pieri.compositions(args.r, args.n + 1):
        comps = [lam.coords[i] + theta[i] - theta[i + 1] for i in range(args.n)]
        if any(x < 0 for x in comps):
            continue
        target = DominantWeight(comps)
        if target in expansion:
            ordered.append((pieri.MultiIndex(theta), expansion[target], target))
    assert len(ordered) == len(expansion)
    return ordered


def _cmd_pieri(args):
    terms = _pieri_terms(args)
    obj = {
        "n": args.n,
        "weight": list(DominantWeight.parse(args.weight, args.n).coords),
        "r": args.r,
        "k": args.k,
        "terms": [
            {"theta": list(theta), "target": list(target.coords),
             "coeff": coeff.to_json()}
            for theta, coeff, target in terms
        ],
    }
    text = lambda: "\n".join(
        "theta=%s  target=%s  coeff=%s" % (tuple(th), tg, c) for th, c, tg in terms
    ) or "0"
    print(_emit(obj, args.format, text, lambda: render_latex(terms)))
    return 0


def _cmd_recur(args):
    lam = DominantWeight.parse(args.weight, args.n)
    terms = recurrence.recurrence_expand(lam, args.k)
    obj = {
        "n": args.n,
        "weight": list(lam.coords),
        "k": args.k,
        "terms": [
            {"theta": list(t.theta), "row_factor": t.row_factor,
             "target": list(t.target.coords), "coeff": t.coeff.to_json()}
            for t in terms
        ],
    }
    text = lambda: "\n".join(
        "theta=%s  r'=%d  target=%s  coeff=%s"
        % (tuple(t.theta), t.row_factor, t.target, t.coeff)
        for t in terms
    ) or "0"
    print(_emit(obj, args.format, text, lambda: render_latex(terms)))
    return 0


def _parse_box(text, n):
    lo_s, hi_s = text.split("..")
    lo = tuple(int(x) for x in lo_s.split(","))
    hi = tuple(int(x) for x in hi_s.split(","))
    if len(lo) != n or len(hi) != n:
        raise ValueError("box endpoints must have %d entries" % n)
    return matinv.BoxRange(lo, hi)


def _cmd_matinv(args):
    box = _parse_box(args.box, args.n)
    reports = []
    if args.trials is None:
        ctx = Context(tuple("u%d" % i for i in range(args.n + 1)))
        u = [ctx.var("u%d" % i) for i in range(args.n + 1)]
        p = matinv.AppendixParams(args.n, args.k, args.r, u)
        reports.append(matinv.verify_inverse(box, p))
    else:
        rng = random.Random(args.rng_seed)
        done = 0
        while done < args.trials:
            draws = [
                Fraction(rng.randint(-9, 9), rng.randint(1, 9))
                for _ in range(args.n + 1)
            ]
            if any(d == 0 for d in draws):
                continue
            u = [QT.monomial(d) for d in draws]
            try:
                rep = matinv.verify_inverse(
                    box, matinv.AppendixParams(args.n, args.k, args.r, u)
                )
            except (matinv.SingularDifference, ArithmeticError,
                    ZeroDivisionError):
                continue
            done += 1
            reports.append(rep)
    merged = {
        "pairs_checked": sum(r["pairs_checked"] for r in reports),
        "failures": [f for r in reports for f in r["failures"]],
    }
    print(json.dumps(merged, sort_keys=True))
    return 1 if merged["failures"] else 0


def _cmd_verify(args):
    report = verify.run_suite(
        args.suite, max_size=args.max_size, rng_seed=args.rng_seed
    )
    for cell in report["cells"]:
        if cell["status"] != "pass":
            print("FAIL %s %r: %s" % (cell["check"], cell["params"],
                                      cell["detail"]), file=sys.stderr)
    print(json.dumps(
        {"suite": report["suite"], "totals": report["totals"],
         "ok": report["ok"]},
        sort_keys=True,
    ))
    return 0 if report["ok"] else 1


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="macpieri",
        description="Exact Pieri and recurrence expansions for Macdonald "
        "polynomials in type A.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    fmt = {"choices": ("json", "latex", "text"), "default": "text"}

    p = sub.add_parser("poly", help="print P_mu in the monomial basis")
    p.add_argument("--partition", required=True,
                   help="comma-separated parts, e.g. 2,1")
    p.add_argument("--vars", type=int, required=True)
    p.add_argument("--q-equals-t", action="store_true",
                   help="specialize to the Schur polynomial")
    p.add_argument("--format", **fmt)
    p.set_defaults(fn=_cmd_poly)

    p = sub.add_parser("pieri", help="expand P_{r omega_1} * P_lambda")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--weight", required=True,
                   help="comma-separated fundamental-weight coefficients")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--k", type=int, default=None,
                   help="reduced expansion at a slot with lambda_k = 0")
    p.add_argument("--format", **fmt)
    p.set_defaults(fn=_cmd_pieri)

    p = sub.add_parser("recur", help="expand P_lambda by lowering slot k")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--weight", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--format", **fmt)
    p.set_defaults(fn=_cmd_recur)

    p = sub.add_parser("matinv", help="check the inverse-pair property on a box")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--box", default=None,
                   help="LO..HI with comma-separated corners; default 0,..0..2,..2")
    p.add_argument("--symbolic", action="store_true",
                   help="free parameters u_i (default unless --trials is given)")
    p.add_argument("--trials", type=int, default=None,
                   help="number of exact-rational parameter draws")
    p.add_argument("--rng-seed", type=int, default=0)
    p.set_defaults(fn=_cmd_matinv)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True,
                   choices=sorted(verify.SUITES) + ["all"])
    p.add_argument("--max-size", type=int, default=None,
                   help="sweep bound override (default 5)")
    p.add_argument("--rng-seed", type=int, default=0)
    p.set_defaults(fn=_cmd_verify)
    return parser


def run(argv):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if e.code else 0
    if args.verb == "matinv" and args.box is None:
        args.box = "%s..%s" % (",".join("0" * args.n), ",".join("2" * args.n))
    try:
        return args.fn(args)
    except (ValueError, KeyError, ArithmeticError) as e:
        print("error: %s" % (e,), file=sys.stderr)
        return 2


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
