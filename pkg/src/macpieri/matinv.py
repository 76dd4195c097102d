"""Mutually inverse lower-triangular multidimensional matrices.

The pair (f, g) is indexed by integer vectors; each entry is a product of
q-shifted factorials, and f carries an n x n determinant divided by the
differences q^{beta_i}u_i - q^{beta_j}u_j.  Box-truncated sums make the
inverse property checkable exactly: triangularity means the infinite sums
collapse to the finite range gamma <= kappa <= beta.
"""

from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction

from .ring import FactoredProduct, PoleError, QtRational, poch, rational_sum


class SingularDifference(ArithmeticError):
    """Two of the shifted parameters q^{beta_i}u_i coincide."""


class ZeroScaling(ArithmeticError):
    """A conjugation weight vanishes at a box point."""


class BoxRange:
    """The integer box {kappa : lo <= kappa <= hi} (componentwise)."""

    __slots__ = ("dim", "lo", "hi")

    def __init__(self, lo, hi):
        self.lo = tuple(int(x) for x in lo)
        self.hi = tuple(int(x) for x in hi)
        if len(self.lo) != len(self.hi):
            raise ValueError("lo and hi have different lengths")
        if any(a > b for a, b in zip(self.lo, self.hi)):
            raise ValueError("empty box: %r..%r" % (self.lo, self.hi))
        self.dim = len(self.lo)

    def __iter__(self):
        ranges = [range(a, b + 1) for a, b in zip(self.lo, self.hi)]
        return iter(tuple(reversed(p)) for p in itertools.product(*reversed(ranges)))

    def __contains__(self, kappa):
        return all(a <= x <= b for a, x, b in zip(self.lo, kappa, self.hi))

    def __repr__(self):
        return "BoxRange(%r, %r)" % (self.lo, self.hi)


class AppendixParams:
    """Dimension n, slot k (1 <= k <= n+1), depth r, parameters u_0..u_n."""

    __slots__ = ("n", "k", "r", "u")

    def __init__(self, n, k, r, u):
        if not 1 <= k <= n + 1:
            raise ValueError("k=%d out of range for n=%d" % (k, n))
        if len(u) != n + 1:
            raise ValueError("expected %d parameters, got %d" % (n + 1, len(u)))
        self.n = n
        self.k = k
        self.r = r
        self.u = list(u)


def _zero(ctx):
    return QtRational.from_fraction(ctx, Fraction(0))


def _one(ctx):
    return QtRational.from_fraction(ctx, Fraction(1))


def _ratio(fp, a, b, idx):
    return fp.times_poch_ratio(a, b, idx)


def dominates(beta, kappa):
    return all(b >= c for b, c in zip(beta, kappa))


def _f_parts(beta, kappa, p):
    """(prefactor FactoredProduct, determinant QtRational), or None if zero."""
    beta = tuple(beta)
    kappa = tuple(kappa)
    n, k, r, u = p.n, p.k, p.r, p.u
    ctx = u[0].ctx
    q, t = ctx.var("q"), ctx.var("t")
    ab, ak = sum(beta), sum(kappa)
    fp = FactoredProduct.one(ctx).times_monomial(ctx.monomial(1, q=ab - ak))
    fp = _ratio(fp, t**2 * u[0], q * t * u[0], ab)
    fp = _ratio(fp, q * t * u[0], t**2 * u[0], ak)
    for i in range(1, n + 1):
        d = beta[i - 1] - kappa[i - 1]
        fp = _ratio(fp, q / t, q, d)
        off = kappa[i - 1] + ak + 1
        fp = _ratio(fp, u[i].q_power(off), (t * u[i]).q_power(off), d)
    for i in range(1, k):
        fp = _ratio(fp, u[i] / (t * u[0]), q * u[i] / (t**2 * u[0]), beta[i - 1])
        fp = _ratio(fp, q * u[i] / (t * u[0]), u[i] / u[0], kappa[i - 1])
        idx = ak - r + kappa[i - 1]
        fp = _ratio(fp, u[i] / u[0], q * u[i] / (t * u[0]), idx)
        fp = _ratio(fp, q * u[i] / (t**2 * u[0]), u[i] / (t * u[0]), idx)
    for i in range(k, n + 1):
        fp = _ratio(fp, t * u[i] / u[0], q * u[i] / u[0], beta[i - 1])
        fp = _ratio(fp, q * u[i] / u[0], t * u[i] / u[0], kappa[i - 1])
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            d = beta[j - 1] - kappa[j - 1]
            off = beta[i - 1] - beta[j - 1] + 1
            fp = _ratio(
                fp,
                (u[i] / (t * u[j])).q_power(off),
                (u[i] / u[j]).q_power(off),
                d,
            )
            off = kappa[i - 1] - beta[j - 1]
            fp = _ratio(
                fp,
                (t * u[i] / u[j]).q_power(off),
                (u[i] / u[j]).q_power(off),
                d,
            )
    if not dominates(beta, kappa):
        assert fp.vanishes, "triangularity must come from a vanishing factor"
        return None
    if fp.vanishes:
        return None
    return fp, _f_determinant(beta, kappa, p)


def f_entry(beta, kappa, p):
    """f_{beta kappa}: Pochhammer prefactor times determinant kernel."""
    parts = _f_parts(beta, kappa, p)
    if parts is None:
        return _zero(p.u[0].ctx)
    fp, det = parts
    return fp.evaluate() * det


def _f_determinant(beta, kappa, p):
    """The n x n determinant of f divided by prod (q^{b_i}u_i - q^{b_j}u_j)."""
    n, u = p.n, p.u
    ctx = u[0].ctx
    t = ctx.var("t")
    ak = sum(kappa)
    b = [u[i].q_power(beta[i - 1]) for i in range(1, n + 1)]
    c = [u[i].q_power(kappa[i - 1]) for i in range(1, n + 1)]
    rows = []
    for i in range(n):
        if beta[i] == kappa[i]:
            # the s = i factor (q^{beta_i}u_i - q^{kappa_i}u_i) vanishes
            a_i = _zero(ctx)
        else:
            w = u[i + 1].q_power(beta[i] + ak)
            fp = FactoredProduct.one(ctx)
            fp = fp.times_factor(t * w).times_factor(w, -1)
            for s in range(n):
                fp = fp.times_monomial(c[s] / (t * c[s]))
                fp = fp.times_factor(b[i] / c[s]).times_factor(b[i] / (t * c[s]), -1)
            try:
                a_i = fp.evaluate()
            except PoleError:
                raise SingularDifference("entry pole at row %d" % (i + 1,))
        bi = b[i].as_rational()
        entries = []
        for j in range(n):
            coef = (t**j).as_rational()  # t^{j-1} with 1-based j
            entries.append(bi ** (n - j - 1) * (_one(ctx) - coef * a_i))
        rows.append(entries)
    det = _det(rows, ctx)
    for i in range(n):
        for j in range(i + 1, n):
            diff = b[i].as_rational() - b[j].as_rational()
            if diff.is_zero:
                raise SingularDifference(
                    "q^{beta_%d}u_%d = q^{beta_%d}u_%d" % (i + 1, i + 1, j + 1, j + 1)
                )
            det = det / diff
    return det


def _det(rows, ctx):
    d = len(rows)
    if d == 0:
        return _one(ctx)
    if d == 1:
        return rows[0][0]
    total = _zero(ctx)
    for i in range(d):
        minor = [r[1:] for k, r in enumerate(rows) if k != i]
        piece = rows[i][0] * _det(minor, ctx)
        total = total + piece if i % 2 == 0 else total - piece
    return total


def _g_parts(kappa, gamma, p):
    """g_{kappa gamma} as a FactoredProduct, or None if zero."""
    kappa = tuple(kappa)
    gamma = tuple(gamma)
    n, k, r, u = p.n, p.k, p.r, p.u
    ctx = u[0].ctx
    q, t = ctx.var("q"), ctx.var("t")
    ak, ag = sum(kappa), sum(gamma)
    fp = FactoredProduct.one(ctx).times_monomial(
        ctx.monomial(1, q=ak - ag, t=-(ak - ag))
    )
    fp = _ratio(fp, t**2 * u[0], q * t * u[0], ak)
    fp = _ratio(fp, q * t * u[0], t**2 * u[0], ag)
    for i in range(1, n + 1):
        d = kappa[i - 1] - gamma[i - 1]
        fp = _ratio(fp, t, q, d)
        off = gamma[i - 1] + ak
        fp = _ratio(fp, u[i].q_power(off + 1), (t * u[i]).q_power(off), d)
    for i in range(1, k):
        fp = _ratio(fp, u[i] / u[0], q * u[i] / (t * u[0]), kappa[i - 1])
        fp = _ratio(fp, q * u[i] / (t**2 * u[0]), u[i] / (t * u[0]), gamma[i - 1])
        idx = ak - r + kappa[i - 1]
        fp = _ratio(fp, q * u[i] / (t * u[0]), u[i] / u[0], idx)
        fp = _ratio(fp, u[i] / (t * u[0]), q * u[i] / (t**2 * u[0]), idx)
    for i in range(k, n + 1):
        fp = _ratio(fp, t * u[i] / u[0], q * u[i] / u[0], kappa[i - 1])
        fp = _ratio(fp, q * u[i] / u[0], t * u[i] / u[0], gamma[i - 1])
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            d = kappa[j - 1] - gamma[j - 1]
            off = kappa[i - 1] - kappa[j - 1]
            fp = _ratio(
                fp,
                (t * u[i] / u[j]).q_power(off),
                (u[i] / u[j]).q_power(off + 1),
                d,
            )
            off = gamma[i - 1] - kappa[j - 1]
            fp = _ratio(
                fp,
                (u[i] / (t * u[j])).q_power(off + 1),
                (u[i] / u[j]).q_power(off),
                d,
            )
    if not dominates(kappa, gamma):
        assert fp.vanishes, "triangularity must come from a vanishing factor"
        return None
    if fp.vanishes:
        return None
    return fp


def g_entry(kappa, gamma, p):
    """g_{kappa gamma}: a pure product of q-shifted factorial ratios."""
    fp = _g_parts(kappa, gamma, p)
    if fp is None:
        return _zero(p.u[0].ctx)
    return fp.evaluate()


def xi_weight(kappa, p):
    """The first conjugation sequence from the inverse-pair construction."""
    return _xi_fp(kappa, p).evaluate()


def zeta_weight(kappa, p):
    """The second conjugation sequence; differs from xi only on 1 <= i < k."""
    return _zeta_fp(kappa, p).evaluate()


def _xi_fp(kappa, p):
    kappa = tuple(kappa)
    n, k, u = p.n, p.k, p.u
    ctx = u[0].ctx
    q, t = ctx.var("q"), ctx.var("t")
    ak = sum(kappa)
    fp = FactoredProduct.one(ctx).times_monomial(ctx.monomial(1, q=ak, t=-ak))
    fp = _ratio(fp, t**2 * u[0], q * t * u[0], ak)
    for i in range(1, k):
        fp = _ratio(fp, u[i] / (t * u[0]), q * u[i] / (t**2 * u[0]), kappa[i - 1])
    for i in range(k, n + 1):
        fp = _ratio(fp, t * u[i] / u[0], q * u[i] / u[0], kappa[i - 1])
    return _xi_pair_block(fp, kappa, p)


def _zeta_fp(kappa, p):
    kappa = tuple(kappa)
    n, k, r, u = p.n, p.k, p.r, p.u
    ctx = u[0].ctx
    q, t = ctx.var("q"), ctx.var("t")
    ak = sum(kappa)
    fp = FactoredProduct.one(ctx).times_monomial(ctx.monomial(1, q=ak, t=-ak))
    fp = _ratio(fp, t**2 * u[0], q * t * u[0], ak)
    for i in range(1, k):
        fp = _ratio(fp, u[i] / u[0], q * u[i] / (t * u[0]), kappa[i - 1])
        idx = ak - r + kappa[i - 1]
        fp = _ratio(fp, q * u[i] / (t * u[0]), u[i] / u[0], idx)
        fp = _ratio(fp, u[i] / (t * u[0]), q * u[i] / (t**2 * u[0]), idx)
    for i in range(k, n + 1):
        fp = _ratio(fp, t * u[i] / u[0], q * u[i] / u[0], kappa[i - 1])
    return _xi_pair_block(fp, kappa, p)


def _xi_pair_block(fp, kappa, p):
    n, u = p.n, p.u
    ctx = u[0].ctx
    q, t = ctx.var("q"), ctx.var("t")
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            d = kappa[i - 1] - kappa[j - 1]
            fp = _ratio(fp, q * u[i] / u[j], t * u[i] / u[j], d)
            fp = _ratio(fp, u[i] / u[j], q * u[i] / (t * u[j]), d)
    return fp


def _structural_sum(terms, ctx):
    """Sum of fp * extra over (fp, extra) pairs, with the common factored
    part pulled out first.

    Returns (common FactoredProduct or None, residual QtRational); the full
    sum is common * residual, and since every factor key is a nonvanishing
    rational function the sum is zero iff the residual is.
    """
    terms = [t for t in terms if t is not None]
    if not terms:
        return None, _zero(ctx)
    keys = set()
    for fp, _extra in terms:
        keys.update(fp.factors)
    common = Counter()
    for key in keys:
        m = min(fp.factors.get(key, 0) for fp, _extra in terms)
        if m:
            common[key] = m
    pref = terms[0][0].prefactor
    residuals = []
    for fp, extra in terms:
        red_factors = Counter()
        for k, m in fp.factors.items():
            d = m - common.get(k, 0)
            if d:
                red_factors[k] = d
        for k, m in common.items():
            if k not in fp.factors:
                red_factors[k] = -m
        red = FactoredProduct(
            ctx, fp.prefactor / pref, red_factors, fp.num_zero, fp.den_zero
        )
        residuals.append(red.evaluate().mul_nocancel(extra))
    gcd = FactoredProduct(ctx, pref, common)
    return gcd, rational_sum(residuals + [_zero(ctx)])


def verify_inverse(box, p, f=None, g=None, fparts=None, gparts=None):
    """Check both composition orders of (f, g) on every pair in the box.

    Returns {"pairs_checked": int, "failures": [...]}; each failure records
    the order, beta, gamma and the stringified off-by value.  With the
    default entries the sums are evaluated in factored form, pulling out the
    common Pochhammer content of each kappa-sum before expanding.
    """
    ctx = p.u[0].ctx
    structural = f is None and g is None
    if fparts is None:
        fparts = lambda b, c: _f_parts(b, c, p)
    if gparts is None:
        gparts = lambda b, c: _g_parts(b, c, p)
    if f is None:
        f = lambda b, c: f_entry(b, c, p)
    if g is None:
        g = lambda b, c: g_entry(b, c, p)
    points = list(box)
    fcache, gcache = {}, {}

    def fc(b, c):
        key = (b, c)
        if key not in fcache:
            fcache[key] = fparts(b, c) if structural else f(b, c)
        return fcache[key]

    def gc(b, c):
        key = (b, c)
        if key not in gcache:
            gcache[key] = gparts(b, c) if structural else g(b, c)
        return gcache[key]

    one = _one(ctx)

    def total(entries):
        # entries: list of pairs (left, right) per kappa
        if structural:
            terms = []
            for left, right in entries:
                if left is None or right is None:
                    continue
                if isinstance(left, tuple):  # (fp, det) from _f_parts
                    fp, extra = left
                    fp = fp * right
                else:
                    fp, extra = left * right[0], right[1]
                if fp.vanishes:
                    continue
                terms.append((fp, extra))
            gcd, residual = _structural_sum(terms, ctx)
            if gcd is None or residual.is_zero:
                return _zero(ctx)
            return gcd.evaluate() * residual
        vals = [_zero(ctx)]
        for left, right in entries:
            vals.append(left.mul_nocancel(right))
        return rational_sum(vals)

    pairs = 0
    failures = []
    for beta in points:
        for gamma in points:
            if not dominates(beta, gamma):
                continue
            pairs += 1
            expect = one if beta == gamma else _zero(ctx)
            mid = list(BoxRange(gamma, beta))
            total_fg = total([(fc(beta, k), gc(k, gamma)) for k in mid])
            total_gf = total([(gc(beta, k), fc(k, gamma)) for k in mid])
            if total_fg != expect:
                failures.append(
                    {"order": "fg", "beta": beta, "gamma": gamma, "sum": str(total_fg)}
                )
            if total_gf != expect:
                failures.append(
                    {"order": "gf", "beta": beta, "gamma": gamma, "sum": str(total_gf)}
                )
    return {"pairs_checked": pairs, "failures": failures}


def conjugate_check(p, box, xi=None, zeta=None):
    """Verify that the conjugated pair is again mutually inverse on the box.

    The conjugation rescales f_{beta kappa} by xi_beta/zeta_kappa and
    g_{kappa gamma} by zeta_kappa/xi_gamma; with the default weights these
    are the two sequences from the inverse-pair construction.
    """
    if xi is None and zeta is None:
        xifp, zetafp = {}, {}
        for kappa in box:
            wx, wz = _xi_fp(kappa, p), _zeta_fp(kappa, p)
            if wx.vanishes or wz.vanishes:
                raise ZeroScaling("conjugation weight vanishes at %r" % (kappa,))
            xifp[kappa] = wx
            zetafp[kappa] = wz

        def fparts_conj(beta, kappa):
            parts = _f_parts(beta, kappa, p)
            if parts is None:
                return None
            fp, det = parts
            return fp * xifp[beta] / zetafp[kappa], det

        def gparts_conj(kappa, gamma):
            fp = _g_parts(kappa, gamma, p)
            if fp is None:
                return None
            return fp * zetafp[kappa] / xifp[gamma]

        report = verify_inverse(box, p, fparts=fparts_conj, gparts=gparts_conj)
        return not report["failures"]

    if xi is None:
        xi = lambda kappa: xi_weight(kappa, p)
    if zeta is None:
        zeta = lambda kappa: zeta_weight(kappa, p)
    weights = {}
    for kappa in box:
        wx, wz = xi(kappa), zeta(kappa)
        if wx.is_zero or wz.is_zero:
            raise ZeroScaling("conjugation weight vanishes at %r" % (kappa,))
        weights[kappa] = (wx, wz)

    def f_conj(beta, kappa):
        return f_entry(beta, kappa, p) * weights[beta][0] / weights[kappa][1]

    def g_conj(kappa, gamma):
        return g_entry(kappa, gamma, p) * weights[kappa][1] / weights[gamma][0]

    report = verify_inverse(box, p, f=f_conj, g=g_conj)
    return not report["failures"]


def f_from_C(beta, kappa, u, k, r):
    """f rebuilt from the inverse coefficient C under the parameter shifts."""
    from .recurrence import C_coeff

    ak = sum(kappa)
    shifted = [u[0].q_power(ak)] + [
        u[i].q_power(kappa[i - 1] + ak) for i in range(1, len(u))
    ]
    theta = tuple(b - c for b, c in zip(beta, kappa))
    return C_coeff(shifted, k, r - ak, theta)


def g_from_D(kappa, gamma, u, k, r):
    """g rebuilt from the Pieri coefficient D under the parameter shifts."""
    from .pieri import D_coeff

    ag = sum(gamma)
    shifted = [u[0].q_power(ag)] + [
        u[i].q_power(gamma[i - 1] + ag) for i in range(1, len(u))
    ]
    theta = tuple(b - c for b, c in zip(kappa, gamma))
    if any(x < 0 for x in theta):
        return _zero(u[0].ctx)
    return D_coeff(shifted, k, r - ag, theta)
