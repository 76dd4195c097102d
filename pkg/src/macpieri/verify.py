"""Verification sweeps over every identity implemented by the package.

Each check walks a finite, deterministic grid of parameters and compares two
independently computed exact values.  Results come back as lists of cells
{params, status, detail}; `run_suite` groups the checks into named suites and
wraps them into a report with totals and an overall pass flag.
"""

from __future__ import annotations

import itertools
import os
import random
from fractions import Fraction

from .ring import QT, Context, factored_equal, poch
from .weights import DominantWeight, Partition, weight_to_partition
from .symfun import SymPoly, multiply
from .macdonald import (
    eigenvalue,
    expand_in_P,
    is_horizontal_strip,
    macdonald_P_branching,
    macdonald_P_eigen,
    macdonald_operator_apply,
    schur_specialize,
)
from . import pieri
from . import recurrence
from . import matinv


def _cell(params, ok, detail=""):
    return {"params": params, "status": "pass" if ok else "fail", "detail": detail}


def _weights_by_partition_size(n, max_size):
    """All dominant weights of A_n whose attached partition has size <= max_size."""
    out = []
    # |weight_to_partition(lam)| = sum_i i * lam_i
    def rec(prefix, i, budget):
        if i > n:
            out.append(DominantWeight(tuple(prefix)))
            return
        for c in range(budget // i + 1):
            rec(prefix + [c], i + 1, budget - i * c)

    rec([], 1, max_size)
    return out


def _partitions_up_to(max_size, max_len):
    out = []

    def rec(prefix, rest, cap):
        out.append(Partition(tuple(prefix)))
        if len(prefix) == max_len:
            return
        for part in range(1, min(rest, cap) + 1):
            rec(prefix + [part], rest - part, part)

    rec([], max_size, max_size)
    return out


# ---------------------------------------------------------------------------
# dual oracle


def check_dual_oracle(max_size=6, max_vars=4):
    """Branching and eigenfunction routes agree; D has the stated eigenvalue."""
    cells = []
    for m in range(1, max_vars + 1):
        for mu in _partitions_up_to(max_size, m):
            pb = macdonald_P_branching(mu, m)
            pe = macdonald_P_eigen(mu, m)
            ok = pb == pe
            detail = "" if ok else "branching != eigen"
            if ok:
                image = macdonald_operator_apply(pb, m)
                ok = image == pb.scale(eigenvalue(mu, m))
                detail = "" if ok else "operator image is not e_mu * P_mu"
            cells.append(_cell({"m": m, "mu": mu.parts}, ok, detail))
    return cells


# ---------------------------------------------------------------------------
# row-multiplication expansion against the product oracle


def _expand_product_by_weight(kappa, r, m):
    """P_(r) * P_kappa in m variables, re-keyed by dominant weight."""
    prod = multiply(macdonald_P_branching(Partition((r,)) if r else Partition(()), m),
                    macdonald_P_branching(kappa, m))
    out = {}
    for nu, c in expand_in_P(prod).terms.items():
        padded = nu.padded(m)
        w = DominantWeight(tuple(padded[i] - padded[i + 1] for i in range(m - 1)))
        assert w not in out
        out[w] = c
    return out


def check_pieri_oracle(max_size=5, max_r=3, ns=(1, 2, 3)):
    cells = []
    for n in ns:
        for lam in _weights_by_partition_size(n, max_size):
            kappa = weight_to_partition(lam)
            for r in range(1, max_r + 1):
                got = pieri.pieri_expand(lam, r)
                want = _expand_product_by_weight(kappa, r, n + 1)
                ok = set(got) == set(want) and all(
                    got[w] == want[w] for w in got
                )
                cells.append(
                    _cell({"n": n, "lam": lam.coords, "r": r}, ok,
                          "" if ok else "expansion differs from product oracle")
                )
    return cells


# ---------------------------------------------------------------------------
# coefficient reduction chain


def check_reduction_chain(max_n=4, max_exp=3, max_r=3, max_theta=3):
    """The three rewrite steps and the relabelling identity, step by step."""
    cells = []
    for n in range(1, max_n + 1):
        hat = tilde = relabel = 0
        bad = []
        for coords in itertools.product(range(max_exp + 1), repeat=n):
            lam = DominantWeight(coords)
            for k in range(1, n + 1):
                for r in range(max_r + 1):
                    for theta in pieri.box_compositions(min(max_theta, r), n + 1):
                        if theta[k - 1] != 0:
                            continue
                        full = list(theta)
                        full[k - 1] = r - sum(theta)
                        hat += 1
                        if not factored_equal(
                            pieri.dhat_factored(lam, r, k, theta),
                            pieri.d_factored(lam, r, full),
                        ):
                            bad.append(("hat", coords, k, r, theta))
                if coords[k - 1] != 0:
                    continue
                for r in range(max_r + 1):
                    for theta in pieri.box_compositions(min(max_theta, r), n - 1):
                        tilde += 1
                        if not factored_equal(
                            pieri.dtilde_factored(lam, r, k, theta),
                            pieri.dhat_factored(
                                lam, r, k, pieri._full_theta(theta, k, n)
                            ),
                        ):
                            bad.append(("tilde", coords, k, r, theta))
                        relabel += 1
                        if not pieri.lemma32_check(n, k, r, theta, lam=lam):
                            bad.append(("relabel", coords, k, r, theta))
        cells.append(
            _cell({"n": n, "mode": "instantiated",
                   "checks": hat + tilde + relabel},
                  not bad, "" if not bad else "first failure: %r" % (bad[0],))
        )
        sym_bad = [
            (k, r, theta)
            for k in range(1, n + 1)
            for r in range(max_r + 1)
            for theta in pieri.box_compositions(min(max_theta, r), n - 1)
            if not pieri.lemma32_check(n, k, r, theta)
        ]
        cells.append(
            _cell({"n": n, "mode": "symbolic"}, not sym_bad,
                  "" if not sym_bad else "first failure: %r" % (sym_bad[0],))
        )
    return cells


# ---------------------------------------------------------------------------
# recurrence reconstruction


def _lifted_P(kappa, m, lift):
    """P of kappa with `lift` columns of height m prepended, as a SymPoly."""
    padded = tuple(p + lift for p in kappa.padded(m))
    return macdonald_P_branching(Partition(padded), m)


def _reconstruct(lam, terms):
    """Assemble sum coeff * P_{r' omega_1} * P_target and compare with P_lam.

    Each summand is only determined up to a power of x_1...x_m, so all
    degrees are first lifted to a common value by full columns.
    """
    n = lam.n
    m = n + 1
    lam_part = weight_to_partition(lam)
    degs = [lam_part.size]
    parts = []
    for term in terms:
        tpart = weight_to_partition(term.target)
        degs.append(term.row_factor + tpart.size)
        parts.append((term, tpart))
    top = max(degs)
    assert all((top - d) % m == 0 for d in degs), "degree defect not divisible"
    total = SymPoly.zero(m, degree=top)
    for (term, tpart), d in zip(parts, degs[1:]):
        row = macdonald_P_branching(
            Partition((term.row_factor,) if term.row_factor else ()), m
        )
        piece = multiply(row, _lifted_P(tpart, m, (top - d) // m))
        total = total + piece.scale(term.coeff)
    return total == _lifted_P(lam_part, m, (top - lam_part.size) // m)


def check_recurrence_reconstruction(max_size=6, ns=(2, 3)):
    cells = []
    for n in ns:
        for lam in _weights_by_partition_size(n, max_size):
            for k in range(1, n + 1):
                terms = recurrence.recurrence_expand(lam, k)
                ok = all(t.target[k] == 0 for t in terms)
                detail = "" if ok else "target with nonzero slot-k component"
                if ok:
                    ok = _reconstruct(lam, terms)
                    detail = "" if ok else "sum does not rebuild P_lambda"
                cells.append(
                    _cell({"n": n, "lam": lam.coords, "k": k}, ok, detail)
                )
    return cells


def _terms_equal(a, b):
    if len(a) != len(b):
        return False
    return all(
        x.theta == y.theta
        and x.row_factor == y.row_factor
        and x.target == y.target
        and x.coeff == y.coeff
        for x, y in zip(a, b)
    )


def check_shifted_agreement(max_size=6, ns=(2, 3)):
    """The self-contained expansion equals the shifted one term by term."""
    cells = []
    for n in ns:
        for lam in _weights_by_partition_size(n, max_size):
            for k in range(1, n + 1):
                r = lam[k]
                mu = list(lam.coords)
                mu[k - 1] = 0
                if k >= 2:
                    mu[k - 2] += r
                base = DominantWeight(mu)
                got = recurrence.recurrence_expand_shifted(base, k, r)
                want = recurrence.recurrence_expand(lam, k)
                ok = _terms_equal(got, want)
                cells.append(
                    _cell({"n": n, "lam": lam.coords, "k": k}, ok,
                          "" if ok else "term lists differ")
                )
    return cells


def _last_slot_terms(lam):
    """The k = n expansion written out directly from its printed data."""
    n = lam.n
    ln = lam[n]
    u = [QT.monomial(1, q=-ln, t=-2)] + [
        QT.monomial(1, q=sum(lam.coords[i - 1 : n - 1]), t=n - i - 1)
        for i in range(1, n)
    ]
    out = []
    for theta in pieri.box_compositions(ln, n - 1):
        c = recurrence.C_coeff(u, n, ln, theta)
        if c.is_zero:
            continue
        comps = [
            lam[i] + theta[i - 1] - theta[i] for i in range(1, n - 1)
        ]
        if n >= 2:
            comps.append(lam[n - 1] + lam[n] + theta[n - 2])
        comps.append(0)
        out.append(
            recurrence.RecurrenceTerm(theta, c, ln - sum(theta),
                                      DominantWeight(comps))
        )
    return out


def _b_lambda_exponent_form(lam):
    """The normalization scalar from its explicit q,t-exponent product."""
    n = lam.n
    val = QT.one
    for j in range(1, n + 1):
        for i in range(1, j + 1):
            e = sum(lam.coords[i - 1 : j - 1])
            num = poch(QT.monomial(1, q=e, t=j - i + 1), lam[j])
            den = poch(QT.monomial(1, q=e + 1, t=j - i), lam[j])
            val = val * num.evaluate() / den.evaluate()
    return val


def check_last_slot_form(max_size=6, ns=(2, 3)):
    cells = []
    for n in ns:
        for lam in _weights_by_partition_size(n, max_size):
            ok = _terms_equal(_last_slot_terms(lam), recurrence.recurrence_expand(lam, n))
            detail = "" if ok else "explicit k=n terms differ"
            if ok:
                ok = recurrence.b_lambda(lam) == _b_lambda_exponent_form(lam)
                detail = "" if ok else "normalization scalar differs"
            cells.append(_cell({"n": n, "lam": lam.coords}, ok, detail))
    return cells


# ---------------------------------------------------------------------------
# rank-two and rank-three closed forms


def check_rank_two_closed_forms(max_part=4, max_theta=4):
    cells = []
    for l1 in range(max_part + 1):
        for l2 in range(max_part + 1):
            u2 = [QT.monomial(1, q=-l2, t=-2), QT.monomial(1, q=l1)]
            u1 = [QT.monomial(1, q=-l1, t=-2), QT.monomial(1, q=-l1 - l2, t=-3)]
            bad = []
            for theta in range(max_theta + 1):
                a2k2 = recurrence.closed_form_coeff("A2K2", (l1, l2, theta))
                if a2k2 != recurrence.C_coeff(u2, 2, l2, (theta,)):
                    bad.append(("A2K2", theta))
                if a2k2 != recurrence.closed_form_coeff("JJ", (l1 + l2, l2, theta)):
                    bad.append(("JJ", theta))
                a2k1 = recurrence.closed_form_coeff("A2K1", (l1, l2, theta))
                if a2k1 != recurrence.C_coeff(u1, 1, l1, (theta,)):
                    bad.append(("A2K1", theta))
            cells.append(
                _cell({"l1": l1, "l2": l2}, not bad,
                      "" if not bad else "mismatch at %r" % (bad[0],))
            )
    return cells


def check_rank_three_identities(max_ij=3, max_r=3, max_m=3):
    cells = []
    ctx2 = Context(("u1", "u2"))
    w = [ctx2.var("u1"), ctx2.var("u2")]
    bad = [
        (i, j)
        for i in range(max_ij + 1)
        for j in range(max_ij + 1)
        if recurrence.det_quotient(w, (i, j))
        != recurrence.a3_det_identity_rhs(w[0], w[1], i, j)
    ]
    cells.append(_cell({"identity": "determinant-quotient"}, not bad,
                       "" if not bad else "mismatch at %r" % (bad[0],)))
    ctx3 = Context(("u0", "u1", "u2"))
    u = [ctx3.var("u0"), ctx3.var("u1"), ctx3.var("u2")]
    bad = [
        (k, r, i, j)
        for k in (1, 2, 3)
        for r in range(max_r + 1)
        for i in range(3)
        for j in range(3)
        if not recurrence.a3_ratio_identity_check(u, k, r, i, j)
    ]
    cells.append(_cell({"identity": "kernel-ratio"}, not bad,
                       "" if not bad else "mismatch at %r" % (bad[0],)))
    bad = []
    for m1 in range(max_m + 1):
        for m2 in range(m1 + 1):
            for m3 in range(m2 + 1):
                lam = (m1 - m2, m2 - m3, m3)
                for i in range(m3 + 1):
                    for j in range(m3 + 1 - i):
                        la = recurrence.closed_form_coeff("LA", (m1, m2, m3, i, j))
                        a3 = recurrence.closed_form_coeff("A3", (3, lam, i, j))
                        if la != a3:
                            bad.append((m1, m2, m3, i, j))
    cells.append(_cell({"identity": "rank-three closed form"}, not bad,
                       "" if not bad else "mismatch at %r" % (bad[0],)))
    return cells


# ---------------------------------------------------------------------------
# matrix inversion


def _symbolic_params(n, k, r):
    ctx = Context(tuple("u%d" % i for i in range(n + 1)))
    u = [ctx.var("u%d" % i) for i in range(n + 1)]
    return matinv.AppendixParams(n, k, r, u)


def check_matrix_inverse(box_hi=4, max_r=3, trials=5, rng_seed=0, trial_box=2):
    cells = []
    for k in (1, 2):
        for r in range(max_r + 1):
            p = _symbolic_params(1, k, r)
            rep = matinv.verify_inverse(matinv.BoxRange((0,), (box_hi,)), p)
            cells.append(
                _cell({"n": 1, "k": k, "r": r, "mode": "symbolic"},
                      not rep["failures"],
                      "" if not rep["failures"] else repr(rep["failures"][0]))
            )
    rng = random.Random(rng_seed)
    ctx = QT
    box2 = matinv.BoxRange((0, 0), (trial_box, trial_box))
    done = 0
    while done < trials:
        draws = [
            Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(3)
        ]
        if any(d == 0 for d in draws):
            continue
        u = [ctx.monomial(d) for d in draws]
        k = 1 + done % 3
        r = done % (max_r + 1)
        try:
            rep = matinv.verify_inverse(box2, matinv.AppendixParams(2, k, r, u))
        except (matinv.SingularDifference, ArithmeticError, ZeroDivisionError):
            continue
        done += 1
        cells.append(
            _cell({"n": 2, "k": k, "r": r, "mode": "rational",
                   "u": [str(x.coeff) for x in u]},
                  not rep["failures"],
                  "" if not rep["failures"] else repr(rep["failures"][0]))
        )
    for k, r in ((1, 1), (2, 2)):
        p = _symbolic_params(1, k, r)
        ok = matinv.conjugate_check(p, matinv.BoxRange((0,), (3,)))
        cells.append(
            _cell({"n": 1, "k": k, "r": r, "mode": "conjugated"}, ok,
                  "" if ok else "conjugated pair is not inverse")
        )
    return cells


# ---------------------------------------------------------------------------
# Schur degeneration


def check_schur_degeneration(max_size=5, max_r=3, ns=(1, 2, 3)):
    cells = []
    t = QT.monomial(1, t=1)
    one, zero = QT.one, QT.zero
    for n in ns:
        for lam in _weights_by_partition_size(n, max_size):
            kappa = weight_to_partition(lam).padded(n + 1)
            bad = []
            for r in range(1, max_r + 1):
                for theta in pieri.compositions(r, n + 1):
                    nu = tuple(kappa[i] + theta[i] for i in range(n + 1))
                    strip = all(
                        nu[i] >= nu[i + 1] for i in range(n)
                    ) and is_horizontal_strip(Partition(nu), Partition(kappa))
                    got = pieri.d_coeff(lam, r, theta).substitute({"q": t})
                    if got != (one if strip else zero):
                        bad.append((r, theta))
            cells.append(
                _cell({"n": n, "lam": lam.coords}, not bad,
                      "" if not bad else "q->t value wrong at %r" % (bad[0],))
            )
    s21 = schur_specialize(Partition((2, 1)), 3)
    want = SymPoly(3, {
        Partition((2, 1)): QT.one,
        Partition((1, 1, 1)): QT.rational(2),
    })
    cells.append(
        _cell({"schur": (2, 1), "vars": 3}, s21 == want,
              "" if s21 == want else "monomial expansion differs")
    )
    return cells


# ---------------------------------------------------------------------------
# suites


SUITES = {
    "oracle": (check_dual_oracle,),
    "pieri": (check_pieri_oracle, check_schur_degeneration),
    "lemma32": (check_reduction_chain,),
    "recurrence": (
        check_recurrence_reconstruction,
        check_shifted_agreement,
        check_last_slot_form,
    ),
    "closedforms": (check_rank_two_closed_forms, check_rank_three_identities),
    "matinv": (check_matrix_inverse,),
}


def _default_options(name, max_size=None, rng_seed=0):
    opts = {}
    if name == "oracle":
        opts["oracle"] = {"max_size": max_size if max_size is not None else 5}
    elif name == "pieri":
        size = max_size if max_size is not None else 5
        opts["pieri"] = {"max_size": size}
        opts["schur"] = {"max_size": size}
    elif name == "lemma32":
        opts["chain"] = {"max_exp": min(max_size, 3) if max_size else 2}
    elif name == "recurrence":
        size = max_size if max_size is not None else 5
        opts["rec"] = {"max_size": size}
    elif name == "closedforms":
        opts["a2"] = {"max_part": max_size if max_size is not None else 4}
    elif name == "matinv":
        opts["inv"] = {"rng_seed": rng_seed}
    return opts


def run_suite(name, max_size=None, rng_seed=0, threads=None):
    """Run one named suite (or "all") and assemble the report."""
    if name == "all":
        names = list(SUITES)
    elif name in SUITES:
        names = [name]
    else:
        raise KeyError("unknown suite %r" % (name,))
    if threads is None:
        threads = int(os.environ.get("MACPIERI_THREADS", "1") or "1")
    jobs = []
    for suite in names:
        opts = _default_options(suite, max_size=max_size, rng_seed=rng_seed)
        for check in SUITES[suite]:
            kwargs = {}
            if check is check_dual_oracle and "oracle" in opts:
                kwargs = opts["oracle"]
            elif check is check_pieri_oracle and "pieri" in opts:
                kwargs = opts["pieri"]
            elif check is check_schur_degeneration and "schur" in opts:
                kwargs = opts["schur"]
            elif check is check_reduction_chain and "chain" in opts:
                kwargs = opts["chain"]
            elif check in (
                check_recurrence_reconstruction,
                check_shifted_agreement,
                check_last_slot_form,
            ) and "rec" in opts:
                kwargs = opts["rec"]
            elif check is check_rank_two_closed_forms and "a2" in opts:
                kwargs = opts["a2"]
            elif check is check_matrix_inverse and "inv" in opts:
                kwargs = opts["inv"]
            jobs.append((check, kwargs))
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda job: job[0](**job[1]), jobs))
    else:
        results = [check(**kwargs) for check, kwargs in jobs]
    cells = []
    for (check, _), got in zip(jobs, results):
        for cell in got:
            cell = dict(cell)
            cell["check"] = check.__name__
            cells.append(cell)
    totals = {
        "pass": sum(1 for c in cells if c["status"] == "pass"),
        "fail": sum(1 for c in cells if c["status"] == "fail"),
        "skip": sum(1 for c in cells if c["status"] == "skip"),
    }
    return {"suite": name, "cells": cells, "totals": totals,
            "ok": totals["fail"] == 0}
