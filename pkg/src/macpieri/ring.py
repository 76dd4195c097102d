"""Exact sparse multivariate Laurent-rational arithmetic over the integers.

The coefficient field used everywhere in this package is the field of
rational functions in q, t (plus optional symbolic parameters) with integer
coefficients.  Denominators are kept as multisets of irreducible factors:
every denominator that arises from q-shifted factorials is a product of
"cyclotomic" polynomials evaluated at a Laurent monomial, and cancelling
matching factors by exact trial division is then a complete reduction --
no general multivariate gcd is ever needed.

Main types:

  Context         fixed variable list (q, t, then declared parameters)
  MultiPoly       sparse integer-coefficient polynomial, graded-lex canonical
  Monomial        unit c * q^a t^b u0^c ... with rational c, integer exponents
  QtRational      reduced fraction, stored as content * monomial * num / factors
  FactoredProduct product of (1 - monomial)^{+-1} with exact zero/pole counts
"""

from __future__ import annotations

import heapq
import math
from collections import Counter
from fractions import Fraction
from functools import lru_cache


class PoleError(ArithmeticError):
    """A coefficient evaluated to an ill-posed value (division by zero or 0/0)."""


class DenominatorVanishes(ZeroDivisionError):
    """A substitution sent a denominator to zero."""


def _grlex_key(exps):
    return (sum(exps), exps)


# ---------------------------------------------------------------------------
# contexts


_EVAL_PRIMES = (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


class Context:
    """Fixed variable universe: q, t, then declared symbolic parameters."""

    _cache: dict = {}

    def __new__(cls, params=()):
        params = tuple(params)
        ctx = cls._cache.get(params)
        if ctx is None:
            ctx = object.__new__(cls)
            ctx.params = params
            ctx.names = ("q", "t") + params
            ctx.nvars = len(ctx.names)
            ctx.index = {name: i for i, name in enumerate(ctx.names)}
            ctx._factor_polys = {}
            ctx._factor_evals = {}
            cls._cache[params] = ctx
        return ctx

    def __repr__(self):
        return "Context(%r)" % (self.params,)

    def var(self, name, power=1):
        exps = [0] * self.nvars
        exps[self.index[name]] = power
        return Monomial(self, Fraction(1), tuple(exps))

    @property
    def q(self):
        return self.var("q")

    @property
    def t(self):
        return self.var("t")

    def monomial(self, coeff=1, **powers):
        exps = [0] * self.nvars
        for name, e in powers.items():
            exps[self.index[name]] = e
        return Monomial(self, Fraction(coeff), tuple(exps))

    def rational(self, value):
        return QtRational.from_fraction(self, Fraction(value))

    @property
    def zero(self):
        return QtRational.from_fraction(self, Fraction(0))

    @property
    def one(self):
        return QtRational.from_fraction(self, Fraction(1))


QT = Context()


# ---------------------------------------------------------------------------
# integer polynomials


class MultiPoly:
    """Sparse polynomial with integer coefficients and nonnegative exponents."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx, terms):
        self.ctx = ctx
        self.terms = terms  # dict exponent-tuple -> nonzero int

    @classmethod
    def const(cls, ctx, c):
        c = int(c)
        if c == 0:
            return cls(ctx, {})
        return cls(ctx, {(0,) * ctx.nvars: c})

    @classmethod
    def monomial(cls, ctx, exps, c=1):
        if c == 0:
            return cls(ctx, {})
        return cls(ctx, {tuple(exps): int(c)})

    @property
    def is_zero(self):
        return not self.terms

    def degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def eval_point(self):
        """Integer value at the fixed point (3, 5, 7, ...), one prime per var."""
        pt = _EVAL_PRIMES[: self.ctx.nvars]
        total = 0
        for e, c in self.terms.items():
            v = c
            for p, k in zip(pt, e):
                if k:
                    v *= p**k
            total += v
        return total

    def __eq__(self, other):
        if isinstance(other, int):
            return self.terms == MultiPoly.const(self.ctx, other).terms
        return isinstance(other, MultiPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return MultiPoly(self.ctx, terms)

    def __neg__(self):
        return MultiPoly(self.ctx, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(e, 0) + ca * cb
                if s:
                    out[e] = s
                else:
                    del out[e]
        return MultiPoly(self.ctx, out)

    def scale(self, c):
        c = int(c)
        if c == 0:
            return MultiPoly(self.ctx, {})
        return MultiPoly(self.ctx, {e: k * c for e, k in self.terms.items()})

    def shift(self, exps):
        """Multiply by the monomial with exponent vector `exps` (>= 0)."""
        if not any(exps):
            return self
        return MultiPoly(
            self.ctx,
            {tuple(a + b for a, b in zip(e, exps)): c for e, c in self.terms.items()},
        )

    def __pow__(self, n):
        r = MultiPoly.const(self.ctx, 1)
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def content(self):
        g = 0
        for c in self.terms.values():
            g = math.gcd(g, c)
            if g == 1:
                return 1
        return g

    def leading(self):
        """(exps, coeff) of the graded-lex leading term."""
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def monomial_content(self):
        """Componentwise minimum exponent vector over the support."""
        it = iter(self.terms)
        m = list(next(it))
        for e in it:
            for i, x in enumerate(e):
                if x < m[i]:
                    m[i] = x
        return tuple(m)

    def divexact(self, f):
        """Exact quotient self / f, or None when f does not divide self."""
        if f.is_zero:
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero:
            return self
        fe, fc = f.leading()
        rest = [(e, c) for e, c in f.terms.items() if e != fe]
        p = dict(self.terms)
        # max-heap on the grlex order with lazy deletion: stale entries are
        # skipped when their key is no longer present in p
        heap = [(-sum(e), tuple(-x for x in e), e) for e in p]
        heapq.heapify(heap)
        quo = {}
        while heap:
            e = heapq.heappop(heap)[2]
            c = p.get(e)
            if c is None:
                continue
            qe = tuple(a - b for a, b in zip(e, fe))
            if any(x < 0 for x in qe) or c % fc:
                return None
            qc = c // fc
            quo[qe] = qc
            del p[e]
            for re, rc in rest:
                ee = tuple(a + b for a, b in zip(qe, re))
                s = p.get(ee, 0) - qc * rc
                if s:
                    if ee not in p:
                        heapq.heappush(heap, (-sum(ee), tuple(-x for x in ee), ee))
                    p[ee] = s
                else:
                    p.pop(ee, None)
        return MultiPoly(self.ctx, quo)

    def substitute_terms(self, values):
        """Sum of coeff * prod(values[i]**e_i); `values` are QtRationals."""
        ctx_out = values[0].ctx if values else self.ctx
        out = QtRational.from_fraction(ctx_out, Fraction(0))
        for e, c in self.terms.items():
            term = QtRational.from_fraction(ctx_out, Fraction(c))
            for v, k in zip(values, e):
                if k:
                    term = term * v**k
            out = out + term
        return out

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda ec: _grlex_key(ec[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ctx.names
        parts = []
        for e, c in self.sorted_terms():
            factors = []
            for name, k in zip(names, e):
                if k == 1:
                    factors.append(name)
                elif k:
                    factors.append("%s^%d" % (name, k))
            mono = "*".join(factors)
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = "%d*%s" % (a, mono)
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    __repr__ = __str__


# ---------------------------------------------------------------------------
# cyclotomic factor bookkeeping
#
# Factor keys:
#   ("cyc", d, evec)  : the d-th cyclotomic polynomial at the Laurent monomial
#                       with primitive canonical exponent vector evec, cleared
#                       of monomial content and sign-normalized.
#   ("opq", terms)    : an opaque primitive polynomial (sorted term tuple).


@lru_cache(maxsize=None)
def _cyclotomic(d):
    """Coefficient dict {i: c} of the d-th cyclotomic polynomial."""
    poly = {d: 1, 0: -1}  # z^d - 1
    for e in range(1, d):
        if d % e == 0:
            phi = _cyclotomic(e)
            poly = _univariate_divexact(poly, phi)
    return poly


def _univariate_divexact(p, f):
    p = dict(p)
    fd = max(f)
    fc = f[fd]
    quo = {}
    while p:
        d = max(p)
        c = p[d]
        assert d >= fd and c % fc == 0, "inexact cyclotomic division"
        qd, qc = d - fd, c // fc
        quo[qd] = qc
        for e, k in f.items():
            s = p.get(e + qd, 0) - qc * k
            if s:
                p[e + qd] = s
            else:
                p.pop(e + qd, None)
    return quo


def _primitive(evec):
    """(g, e', flipped): evec = +-g * e' with e' primitive, first nonzero > 0."""
    g = 0
    for x in evec:
        g = math.gcd(g, abs(x))
    assert g > 0
    e = tuple(x // g for x in evec)
    for x in e:
        if x > 0:
            return g, e, False
        if x < 0:
            return g, tuple(-y for y in e), True
    raise AssertionError("zero exponent vector")


def factor_poly(ctx, key):
    """The canonical polynomial of a factor key (cached per context)."""
    poly = ctx._factor_polys.get(key)
    if poly is not None:
        return poly
    if key[0] == "cyc":
        _, d, evec = key
        coeffs = _cyclotomic(d)
        deg = max(coeffs)
        low = tuple(deg * x if x < 0 else 0 for x in evec)
        terms = {}
        for i, c in coeffs.items():
            terms[tuple(i * x - m for x, m in zip(evec, low))] = c
        poly = MultiPoly(ctx, terms)
        le, lc = poly.leading()
        if lc < 0:  # keep a positive graded-lex leading coefficient
            poly = -poly
    else:
        poly = MultiPoly(ctx, dict(key[1]))
    ctx._factor_polys[key] = poly
    return poly


def _factor_eval(ctx, key):
    v = ctx._factor_evals.get(key)
    if v is None:
        v = factor_poly(ctx, key).eval_point()
        ctx._factor_evals[key] = v
    return v


def _cyc_keys(g, evec):
    """Keys of the factorization -(1 - z^g) = prod_{d|g} Phi_d(z), z = x^evec."""
    return [("cyc", d, evec) for d in range(1, g + 1) if g % d == 0]


def _cyc_keys_plus(g, evec):
    """Keys of (1 + z^g) = prod_{d | 2g, d not| g} Phi_d(z)."""
    return [("cyc", d, evec) for d in range(1, 2 * g + 1) if (2 * g) % d == 0 and g % d]


def _one_minus(ctx, coeff, exps):
    """Factor (1 - coeff * x^exps) as (frac, shift, Counter-of-keys).

    The value equals frac * x^shift * prod factor_poly(key).  Requires the
    factor to be nonzero (coeff != 1 or exps != 0).
    """
    if not any(exps):
        c = 1 - coeff
        assert c != 0, "vanishing factor must be handled by the caller"
        return c, (0,) * ctx.nvars, Counter()
    g, e, flipped = _primitive(exps)
    if coeff == 1:
        if flipped:
            # 1 - x^{-g e} = -x^{-g e} (1 - x^{g e})
            frac, shift, keys = _signed_cyc(ctx, g, e, minus=True)
            frac = -frac
            shift = tuple(s - g * x for s, x in zip(shift, e))
            return frac, shift, keys
        return _signed_cyc(ctx, g, e, minus=True)
    if coeff == -1:
        if flipped:
            frac, shift, keys = _signed_cyc(ctx, g, e, minus=False)
            shift = tuple(s - g * x for s, x in zip(shift, e))
            return frac, shift, keys
        return _signed_cyc(ctx, g, e, minus=False)
    # general rational coefficient: opaque primitive binomial
    p, s = coeff.numerator, coeff.denominator
    low = tuple(min(x, 0) for x in exps)
    e0 = tuple(-m for m in low)
    e1 = tuple(x - m for x, m in zip(exps, low))
    terms = {e0: s}
    terms[e1] = terms.get(e1, 0) - p
    poly = MultiPoly(ctx, terms)
    c = poly.content()
    if c > 1:
        poly = MultiPoly(ctx, {e: k // c for e, k in poly.terms.items()})
    sign = 1
    if poly.leading()[1] < 0:
        poly, sign = -poly, -1
    key = ("opq", tuple(poly.sorted_terms()))
    factor_poly(ctx, key)  # prime the cache
    return Fraction(sign * c, s), low, Counter({key: 1})


def _signed_cyc(ctx, g, e, minus):
    """Factor (1 -+ x^{g e}) with e primitive canonical."""
    frac = Fraction(1)
    shift = [0] * ctx.nvars
    keys = Counter()
    key_list = _cyc_keys(g, e) if minus else _cyc_keys_plus(g, e)
    if minus:
        frac = -frac
    for key in key_list:
        keys[key] += 1
        # account for monomial clearing and sign normalization of the factor
        d = key[1]
        coeffs = _cyclotomic(d)
        deg = max(coeffs)
        for i, x in enumerate(e):
            if x < 0:
                shift[i] += deg * x
        raw_lead = _raw_cyc_leading_sign(d, e)
        if raw_lead < 0:
            frac = -frac
    return frac, tuple(shift), keys


def _raw_cyc_leading_sign(d, e):
    """Sign of the graded-lex leading coefficient of the cleared Phi_d(x^e)."""
    coeffs = _cyclotomic(d)
    deg = max(coeffs)
    low = tuple(deg * x if x < 0 else 0 for x in e)
    best = None
    lead = 0
    for i, c in coeffs.items():
        exps = tuple(i * x - m for x, m in zip(e, low))
        k = _grlex_key(exps)
        if best is None or k > best:
            best, lead = k, c
    return 1 if lead > 0 else -1


def factorize(poly):
    """Split an integer polynomial into content, monomial shift and factor keys.

    Complete for products of cyclotomic-at-monomial factors; any unresolved
    part is kept as a single opaque key.  Returns (Fraction, shift, Counter).
    """
    ctx = poly.ctx
    assert not poly.is_zero
    low = poly.monomial_content()
    if any(low):
        poly = MultiPoly(
            ctx, {tuple(a - b for a, b in zip(e, low)): c for e, c in poly.terms.items()}
        )
    c = poly.content()
    if c > 1:
        poly = MultiPoly(ctx, {e: k // c for e, k in poly.terms.items()})
    sign = 1
    if poly.leading()[1] < 0:
        poly, sign = -poly, -1
    keys = Counter()
    if poly.terms == MultiPoly.const(ctx, 1).terms:
        return Fraction(sign * c), low, keys
    progress = True
    while progress and poly.degree() > 0:
        progress = False
        for key in _candidate_keys(poly):
            fp = factor_poly(ctx, key)
            while True:
                quo = poly.divexact(fp)
                if quo is None:
                    break
                poly = quo
                keys[key] += 1
                progress = True
            if poly.degree() <= 0:
                break
    if poly.degree() > 0 or poly.terms != MultiPoly.const(ctx, 1).terms:
        cc = poly.content()
        if cc > 1:
            c *= cc
            poly = MultiPoly(ctx, {e: k // cc for e, k in poly.terms.items()})
        if poly.leading()[1] < 0:
            poly, sign = -poly, -sign
        if poly.degree() > 0:
            keys[("opq", tuple(poly.sorted_terms()))] += 1
            factor_poly(ctx, ("opq", tuple(poly.sorted_terms())))
    return Fraction(sign * c), low, keys


def _candidate_keys(poly):
    """Plausible cyclotomic divisors, generated from support differences."""
    terms = sorted(poly.terms, key=_grlex_key)
    if len(terms) > 10:
        pool = [terms[0], terms[1], terms[-2], terms[-1]]
    else:
        pool = terms
    seen = set()
    out = []
    deg = poly.degree()
    for i in range(len(pool)):
        for j in range(i + 1, len(pool)):
            diff = tuple(a - b for a, b in zip(pool[j], pool[i]))
            if not any(diff):
                continue
            g, e, _ = _primitive(diff)
            for d in range(1, 2 * g + 1):
                if (2 * g) % d and g % d:
                    continue
                key = ("cyc", d, e)
                if key in seen:
                    continue
                seen.add(key)
                coeffs = _cyclotomic(d)
                if max(coeffs) * sum(abs(x) for x in e) <= deg:
                    out.append(key)
    return out


# ---------------------------------------------------------------------------
# monomials


class Monomial:
    """Unit coeff * x^exps with nonzero rational coeff and integer exponents."""

    __slots__ = ("ctx", "coeff", "exps")

    def __init__(self, ctx, coeff, exps):
        assert coeff != 0
        self.ctx = ctx
        self.coeff = coeff if isinstance(coeff, Fraction) else Fraction(coeff)
        self.exps = tuple(exps)

    @classmethod
    def one(cls, ctx):
        return cls(ctx, Fraction(1), (0,) * ctx.nvars)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Monomial(self.ctx, self.coeff * other, self.exps)
        if other.coeff == 1:
            c = self.coeff
        elif self.coeff == 1:
            c = other.coeff
        else:
            c = self.coeff * other.coeff
        return Monomial(
            self.ctx, c, tuple(a + b for a, b in zip(self.exps, other.exps))
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Monomial(self.ctx, self.coeff / other, self.exps)
        if other.coeff == 1:
            c = self.coeff
        else:
            c = self.coeff / other.coeff
        return Monomial(
            self.ctx, c, tuple(a - b for a, b in zip(self.exps, other.exps))
        )

    def __pow__(self, n):
        return Monomial(self.ctx, self.coeff**n, tuple(n * e for e in self.exps))

    def __eq__(self, other):
        return (
            isinstance(other, Monomial)
            and self.coeff == other.coeff
            and self.exps == other.exps
        )

    def __hash__(self):
        return hash((self.coeff, self.exps))

    @property
    def is_one(self):
        return self.coeff == 1 and not any(self.exps)

    def q_power(self, j):
        """This monomial times q^j."""
        e = list(self.exps)
        e[0] += j
        return Monomial(self.ctx, self.coeff, tuple(e))

    def as_rational(self):
        return QtRational(
            self.ctx, self.coeff, self.exps, MultiPoly.const(self.ctx, 1), Counter()
        )

    def __str__(self):
        parts = [] if self.coeff == 1 and any(self.exps) else [str(self.coeff)]
        for name, e in zip(self.ctx.names, self.exps):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append("%s^%d" % (name, e))
        return "*".join(parts) if parts else "1"

    __repr__ = __str__


# ---------------------------------------------------------------------------
# reduced rational functions


class QtRational:
    """value = coeff * x^shift * num / prod factor_poly(key)^mult, reduced."""

    __slots__ = ("ctx", "coeff", "shift", "num", "den")

    def __init__(self, ctx, coeff, shift, num, den):
        self.ctx = ctx
        self.coeff = coeff
        self.shift = shift
        self.num = num
        self.den = den

    @classmethod
    def from_fraction(cls, ctx, value):
        value = Fraction(value)
        return cls(ctx, value, (0,) * ctx.nvars, MultiPoly.const(ctx, 1), Counter())

    @classmethod
    def _make(cls, ctx, coeff, shift, num, den):
        """Normalize: extract content/monomial from num, cancel den factors."""
        if coeff == 0 or num.is_zero:
            return cls.from_fraction(ctx, 0)
        low = num.monomial_content()
        if any(low):
            shift = tuple(a + b for a, b in zip(shift, low))
            num = MultiPoly(
                ctx,
                {tuple(a - b for a, b in zip(e, low)): c for e, c in num.terms.items()},
            )
        c = num.content()
        if num.leading()[1] < 0:
            c = -c
        if c != 1:
            coeff *= c
            num = MultiPoly(ctx, {e: k // c for e, k in num.terms.items()})
        if den:
            newden = Counter()
            nval = None
            for key in sorted(den, key=_key_order):
                mult = den[key]
                if mult <= 0:
                    continue
                fp = factor_poly(ctx, key)
                if fp.degree() > 0 and num.degree() >= fp.degree():
                    # integer-point filter: if fp | num in Z[x] then
                    # fp(a) | num(a) at any integer point a
                    fval = _factor_eval(ctx, key)
                    if nval is None:
                        nval = num.eval_point()
                    while mult:
                        if fval and nval % fval:
                            break
                        quo = num.divexact(fp)
                        if quo is None:
                            break
                        num = quo
                        nval = nval // fval if fval else num.eval_point()
                        mult -= 1
                if mult:
                    newden[key] = mult
            den = newden
        return cls(ctx, coeff, shift, num, den)

    @property
    def is_zero(self):
        return self.coeff == 0

    @property
    def is_one(self):
        return (
            self.coeff == 1
            and not any(self.shift)
            and not self.den
            and self.num.degree() == 0
        )

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QtRational.from_fraction(self.ctx, Fraction(other))
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        ctx = self.ctx
        den = Counter()
        for key in set(self.den) | set(other.den):
            den[key] = max(self.den.get(key, 0), other.den.get(key, 0))
        na = self._scaled_num(den)
        nb = other._scaled_num(den)
        shift = tuple(min(a, b) for a, b in zip(self.shift, other.shift))
        na = na.shift(tuple(a - b for a, b in zip(self.shift, shift)))
        nb = nb.shift(tuple(a - b for a, b in zip(other.shift, shift)))
        dena, denb = self.coeff.denominator, other.coeff.denominator
        l = dena * denb // math.gcd(dena, denb)
        A = self.coeff.numerator * (l // dena)
        B = other.coeff.numerator * (l // denb)
        num = na.scale(A) + nb.scale(B)
        return QtRational._make(ctx, Fraction(1, l), shift, num, den)

    __radd__ = __add__

    def mul_nocancel(self, other):
        """Product without normalization; pair with rational_sum."""
        if self.is_zero or other.is_zero:
            return QtRational.from_fraction(self.ctx, 0)
        return QtRational(
            self.ctx,
            self.coeff * other.coeff,
            tuple(a + b for a, b in zip(self.shift, other.shift)),
            self.num * other.num,
            self.den + other.den,
        )

    def _scaled_num(self, den):
        num = self.num
        for key, mult in den.items():
            extra = mult - self.den.get(key, 0)
            if extra:
                num = num * factor_poly(self.ctx, key) ** extra
        return num

    def __neg__(self):
        if self.is_zero:
            return self
        return QtRational(self.ctx, -self.coeff, self.shift, self.num, self.den)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QtRational.from_fraction(self.ctx, Fraction(other))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0 or self.is_zero:
                return QtRational.from_fraction(self.ctx, 0)
            return QtRational(
                self.ctx, self.coeff * other, self.shift, self.num, self.den
            )
        if isinstance(other, Monomial):
            other = other.as_rational()
        if self.is_zero or other.is_zero:
            return QtRational.from_fraction(self.ctx, 0)
        return QtRational._make(
            self.ctx,
            self.coeff * other.coeff,
            tuple(a + b for a, b in zip(self.shift, other.shift)),
            self.num * other.num,
            self.den + other.den,
        )

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero")
        ctx = self.ctx
        num = MultiPoly.const(ctx, 1)
        for key, mult in self.den.items():
            num = num * factor_poly(ctx, key) ** mult
        c, low, den = factorize(self.num)
        return QtRational._make(
            ctx,
            1 / (self.coeff * c),
            tuple(-a - b for a, b in zip(self.shift, low)),
            num,
            den,
        )

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * Fraction(1, 1) / QtRational.from_fraction(self.ctx, other)
        return self * other.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        r = QtRational.from_fraction(self.ctx, 1)
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QtRational.from_fraction(self.ctx, Fraction(other))
        if not isinstance(other, QtRational):
            return NotImplemented
        if (
            self.coeff == other.coeff
            and self.shift == other.shift
            and self.num == other.num
            and self.den == other.den
        ):
            return True
        if self.is_zero or other.is_zero:
            return False
        # cross-multiplied fallback: robust against incomplete factorization
        lhs = self._scaled_num(self.den + other.den).scale(
            self.coeff.numerator * other.coeff.denominator
        )
        rhs = other._scaled_num(self.den + other.den).scale(
            other.coeff.numerator * self.coeff.denominator
        )
        shift = tuple(min(a, b) for a, b in zip(self.shift, other.shift))
        lhs = lhs.shift(tuple(a - b for a, b in zip(self.shift, shift)))
        rhs = rhs.shift(tuple(a - b for a, b in zip(other.shift, shift)))
        return lhs == rhs

    def __hash__(self):
        return hash((self.coeff, self.shift, self.num, frozenset(self.den.items())))

    # -- conversions --------------------------------------------------------

    def as_num_den(self):
        """(N, D): integer MultiPolys with value N/D, D graded-lex-positive."""
        ctx = self.ctx
        num = self.num.scale(self.coeff.numerator)
        den = MultiPoly.const(ctx, self.coeff.denominator)
        for key, mult in self.den.items():
            den = den * factor_poly(ctx, key) ** mult
        up = tuple(e if e > 0 else 0 for e in self.shift)
        dn = tuple(-e if e < 0 else 0 for e in self.shift)
        return num.shift(up), den.shift(dn)

    def substitute(self, assignment, target_ctx=None):
        """Exact substitution of variables by QtRationals (or numbers)."""
        ctx = target_ctx or self.ctx
        values = []
        for name in self.ctx.names:
            v = assignment.get(name)
            if v is None:
                if name not in ctx.index:
                    raise KeyError("variable %r absent from target context" % name)
                v = ctx.var(name).as_rational()
            elif isinstance(v, (int, Fraction)):
                v = QtRational.from_fraction(ctx, Fraction(v))
            elif isinstance(v, Monomial):
                v = v.as_rational()
            values.append(v)
        if self.is_zero:
            return QtRational.from_fraction(ctx, 0)
        num, den = self.as_num_den()
        dnew = den.substitute_terms(values)
        if dnew.is_zero:
            raise DenominatorVanishes("denominator vanishes under substitution")
        nnew = num.substitute_terms(values)
        return nnew / dnew

    def __str__(self):
        num, den = self.as_num_den()
        if den.degree() == 0 and den.terms.get((0,) * self.ctx.nvars) == 1:
            return str(num)
        return "(%s)/(%s)" % (num, den)

    __repr__ = __str__

    def to_json(self):
        num, den = self.as_num_den()
        return {"num": str(num), "den": str(den)}


def rational_sum(values):
    """Sum a sequence of QtRationals, normalizing once at the end.

    Much cheaper than repeated `+` for long sums whose terms share most of
    their denominator factors (e.g. box-truncated matrix products).
    """
    values = list(values)
    if not values:
        raise ValueError("empty sum has no context")
    ctx = values[0].ctx
    values = [v for v in values if not v.is_zero]
    if not values:
        return QtRational.from_fraction(ctx, 0)
    if len(values) == 1:
        return values[0]
    den = Counter()
    for v in values:
        for key, mult in v.den.items():
            if mult > den[key]:
                den[key] = mult
    shift = tuple(min(s) for s in zip(*(v.shift for v in values)))
    l = 1
    for v in values:
        d = v.coeff.denominator
        l = l * d // math.gcd(l, d)
    num = MultiPoly(ctx, {})
    for v in values:
        n = v._scaled_num(den)
        n = n.shift(tuple(a - b for a, b in zip(v.shift, shift)))
        num = num + n.scale(v.coeff.numerator * (l // v.coeff.denominator))
    return QtRational._make(ctx, Fraction(1, l), shift, num, den)


def _key_order(key):
    if key[0] == "cyc":
        return (0, key[1], key[2])
    return (1, key[1])


# ---------------------------------------------------------------------------
# q-shifted factorials with zero/pole bookkeeping


class FactoredProduct:
    """prefactor * prod (1 - base)^mult with explicit vanishing-factor counts.

    Zero factors (base == 1) are never stored: they are counted in
    ``num_zero`` / ``den_zero`` so that exact cancellations between vanishing
    numerator and denominator factors survive until :meth:`evaluate`.
    """

    __slots__ = ("ctx", "prefactor", "factors", "num_zero", "den_zero")

    def __init__(self, ctx, prefactor=None, factors=None, num_zero=0, den_zero=0):
        self.ctx = ctx
        self.prefactor = prefactor if prefactor is not None else Monomial.one(ctx)
        self.factors = factors if factors is not None else Counter()
        self.num_zero = num_zero
        self.den_zero = den_zero

    @classmethod
    def one(cls, ctx):
        return cls(ctx)

    def times_factor(self, base, mult=1):
        """Multiply by (1 - base)^mult."""
        if mult == 0:
            return self
        out = FactoredProduct(
            self.ctx, self.prefactor, Counter(self.factors), self.num_zero, self.den_zero
        )
        if base.is_one:
            if mult > 0:
                out.num_zero += mult
            else:
                out.den_zero -= mult
            return out
        key = (base.coeff, base.exps)
        out.factors[key] += mult
        if not out.factors[key]:
            del out.factors[key]
        return out

    def times_monomial(self, mono):
        return FactoredProduct(
            self.ctx, self.prefactor * mono, Counter(self.factors),
            self.num_zero, self.den_zero,
        )

    def times_poch_ratio(self, a, b, r):
        """Multiply by (a; q)_r / (b; q)_r in place and return self.

        Assembly-time builder: skips all intermediate copies, so it must only
        be called on a product that is not shared yet.
        """
        factors = self.factors
        for base, s in ((a, 1), (b, -1)):
            if r >= 0:
                span = range(r)
            else:
                span, s = range(-1, r - 1, -1), -s
            for j in span:
                bj = base if j == 0 else base.q_power(j)
                if bj.is_one:
                    if s > 0:
                        self.num_zero += 1
                    else:
                        self.den_zero += 1
                    continue
                key = (bj.coeff, bj.exps)
                factors[key] += s
                if not factors[key]:
                    del factors[key]
        return self

    def __mul__(self, other):
        if isinstance(other, Monomial):
            return self.times_monomial(other)
        assert self.ctx is other.ctx
        factors = Counter(self.factors)
        for key, mult in other.factors.items():
            factors[key] += mult
            if not factors[key]:
                del factors[key]
        return FactoredProduct(
            self.ctx,
            self.prefactor * other.prefactor,
            factors,
            self.num_zero + other.num_zero,
            self.den_zero + other.den_zero,
        )

    def inverse(self):
        return FactoredProduct(
            self.ctx,
            Monomial(self.ctx, 1, (0,) * self.ctx.nvars) / self.prefactor,
            Counter({k: -m for k, m in self.factors.items()}),
            self.den_zero,
            self.num_zero,
        )

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = FactoredProduct.one(self.ctx)
        for _ in range(n):
            out = out * self
        return out

    @property
    def vanishes(self):
        return self.num_zero > self.den_zero

    def evaluate(self):
        """Expand to a reduced QtRational; ZERO is the zero rational.

        Raises :class:`PoleError` when denominator zeros survive cancellation,
        including the indeterminate case num_zero == den_zero > 0.
        """
        if self.den_zero >= self.num_zero and self.den_zero > 0:
            raise PoleError(
                "pole in factored product (%d zero factors up, %d down)"
                % (self.num_zero, self.den_zero)
            )
        if self.num_zero > self.den_zero:
            return QtRational.from_fraction(self.ctx, 0)
        ctx = self.ctx
        coeff = self.prefactor.coeff
        shift = list(self.prefactor.exps)
        up = Counter()
        down = Counter()
        for (c, exps), mult in self.factors.items():
            frac, fshift, keys = _one_minus(ctx, c, exps)
            coeff *= frac**mult
            for i, s in enumerate(fshift):
                shift[i] += s * mult
            tgt = up if mult > 0 else down
            for key, km in keys.items():
                tgt[key] += abs(mult) * km
        for key in set(up) & set(down):
            m = min(up[key], down[key])
            up[key] -= m
            down[key] -= m
            if not up[key]:
                del up[key]
            if not down[key]:
                del down[key]
        num = MultiPoly.const(ctx, 1)
        for key, mult in up.items():
            num = num * factor_poly(ctx, key) ** mult
        return QtRational._make(ctx, coeff, tuple(shift), num, down)


def poch(b, r, step=None):
    """q-shifted factorial (b; q)_r as a FactoredProduct.

    For r >= 0 this is prod_{j=0}^{r-1} (1 - b q^j); for r = -m < 0 it is
    prod_{j=1}^{m} (1 - b q^{-j})^{-1}.  `step` replaces q by another
    monomial base (used for the (u; 1/q)_r forms).
    """
    ctx = b.ctx
    out = FactoredProduct.one(ctx)
    if step is None:
        stepper = lambda j: b.q_power(j)
    else:
        stepper = lambda j: b * step**j
    if r >= 0:
        for j in range(r):
            out = out.times_factor(stepper(j))
    else:
        for j in range(1, -r + 1):
            out = out.times_factor(stepper(-j), -1)
    return out


def normalized_factors(fp):
    """(prefactor, Counter of flip-normalized bases) for structural comparison.

    Each factor (1 - c x^e) whose exponent direction is reversed relative to
    the canonical primitive direction is rewritten via
    (1 - c x^e) = (-c x^e)(1 - x^{-e}/c), so products differing only by such
    rearrangements become identical multisets.
    """
    pre = fp.prefactor
    factors = Counter()
    for (c, exps), mult in fp.factors.items():
        if any(exps):
            _, _, flipped = _primitive(exps)
            if flipped:
                pre = pre * Monomial(fp.ctx, -c, exps) ** mult
                key = (1 / c, tuple(-x for x in exps))
                factors[key] += mult
                if not factors[key]:
                    del factors[key]
                continue
        factors[(c, exps)] += mult
        if not factors[(c, exps)]:
            del factors[(c, exps)]
    return pre, factors


def factored_equal(a, b):
    """Exact value equality of two FactoredProducts.

    Tries the structural route (identical normalized factor multisets) first;
    falls back to full expansion when the factorizations genuinely differ.
    """
    if a.num_zero - a.den_zero != b.num_zero - b.den_zero:
        if a.num_zero > a.den_zero and b.num_zero > b.den_zero:
            return True  # both identically zero
        return a.evaluate() == b.evaluate()
    pa, fa = normalized_factors(a)
    pb, fb = normalized_factors(b)
    if pa == pb and fa == fb:
        return True
    return a.evaluate() == b.evaluate()
