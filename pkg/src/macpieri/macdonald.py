"""Macdonald polynomials P_mu(x_1..x_m; q,t) by two independent routes.

Route 1 (branching): P_mu in m variables is built from P_nu in m-1 variables
over horizontal strips mu/nu, with branching coefficients psi.

Route 2 (eigenfunction): P_mu is the unique monic-triangular eigenvector of
the q-difference operator D with eigenvalue e_mu = sum_i q^{mu_i} t^{m-i}.

Both routes work in exact (q,t)-rational arithmetic; their agreement is the
referee for every coefficient formula in this package.
"""

from __future__ import annotations

import itertools

from .ring import QT, Counter, FactoredProduct, MultiPoly, QtRational, poch
from .symfun import SymPoly, distinct_permutations
from .weights import Partition


class LengthExceedsVariables(ValueError):
    pass


class EigenvalueCollision(ArithmeticError):
    pass


class InexactDivision(ArithmeticError):
    pass


def is_horizontal_strip(kappa, mu):
    """kappa/mu is a horizontal strip: kappa_i >= mu_i >= kappa_{i+1}."""
    if not isinstance(kappa, Partition):
        kappa = Partition(kappa)
    if not isinstance(mu, Partition):
        mu = Partition(mu)
    n = max(len(kappa), len(mu))
    for i in range(n):
        if not (kappa[i] >= mu[i] >= kappa[i + 1]):
            return False
    return True


def _w_factor(base, s):
    """w_s(u) = (tu;q)_s / (qu;q)_s as a FactoredProduct."""
    t = QT.monomial(1, t=1)
    q = QT.monomial(1, q=1)
    return poch(base * t, s) / poch(base * q, s)


def phi(kappa, mu):
    """The one-row Pieri coefficient phi_{kappa/mu}; ZERO off horizontal strips."""
    if not isinstance(kappa, Partition):
        kappa = Partition(kappa)
    if not isinstance(mu, Partition):
        mu = Partition(mu)
    if not is_horizontal_strip(kappa, mu):
        return QT.zero
    r = kappa.size - mu.size
    N = max(len(kappa), len(mu), 1)
    u = [QT.monomial(1, q=mu[i - 1], t=-i) for i in range(1, N + 2)]
    v = [QT.monomial(1, q=kappa[i - 1], t=-i) for i in range(1, N + 2)]
    theta = [kappa[i] - mu[i] for i in range(N + 1)]
    t = QT.monomial(1, t=1)
    q = QT.monomial(1, q=1)
    fp = poch(q, r) / poch(t, r)
    for j in range(N):
        fp = fp * poch(t, theta[j]) / poch(q, theta[j])
    for j in range(1, N + 1):
        for i in range(j):
            fp = fp * _w_factor(v[i] / v[j], theta[j])
            fp = fp * poch(q * u[i] / (t * v[j]), theta[j]) / poch(
                u[i] / v[j], theta[j]
            )
    return fp.evaluate()


def psi(lam, mu):
    """The branching coefficient psi_{lam/mu}; ZERO off horizontal strips."""
    if not isinstance(lam, Partition):
        lam = Partition(lam)
    if not isinstance(mu, Partition):
        mu = Partition(mu)
    if not is_horizontal_strip(lam, mu):
        return QT.zero
    fp = FactoredProduct.one(QT)
    t = QT.monomial(1, t=1)
    q = QT.monomial(1, q=1)
    for j in range(1, len(mu) + 1):
        for i in range(1, j + 1):
            x = QT.monomial(1, t=j - i)
            # f(q^a x)/f(q^b x) = (q^{b+1} x; q)_{a-b} / (t q^b x; q)_{a-b}
            a, b = mu[i - 1] - mu[j - 1], lam[i - 1] - mu[j - 1]
            fp = fp * poch(x.q_power(b + 1), a - b) / poch((t * x).q_power(b), a - b)
            a, b = lam[i - 1] - lam[j], mu[i - 1] - lam[j]
            fp = fp * poch(x.q_power(b + 1), a - b) / poch((t * x).q_power(b), a - b)
    return fp.evaluate()


# ---------------------------------------------------------------------------
# oracle 1: branching recursion


_branching_cache: dict = {}


def _branching_coeffs(mu, m):
    """Monomial-basis coefficient dict of P_mu(x_1..x_m), partition -> QtRational."""
    key = (mu.parts, m)
    hit = _branching_cache.get(key)
    if hit is not None:
        return hit
    if len(mu) > m:
        raise LengthExceedsVariables("%r needs more than %d variables" % (mu, m))
    if m == 0:
        out = {Partition(()): QT.one}
    else:
        out = {}
        for nu in _horizontal_substrips(mu):
            if len(nu) > m - 1:
                continue
            c = psi(mu, nu)
            if c.is_zero:
                continue
            last = mu.size - nu.size
            for kbar, v in _branching_coeffs(nu, m - 1).items():
                # appending `last` as the x_m exponent keeps the vector sorted
                # only when it does not exceed the smallest padded part
                if m >= 2 and kbar[m - 2] < last:
                    continue
                kappa = Partition(kbar.parts + (last,) if last else kbar.parts)
                s = out.get(kappa)
                add = v * c
                s = add if s is None else s + add
                if s.is_zero:
                    out.pop(kappa, None)
                else:
                    out[kappa] = s
    _branching_cache[key] = out
    return out


def _horizontal_substrips(mu):
    """All partitions nu with mu/nu a horizontal strip."""
    ranges = [range(mu[i + 1], mu[i] + 1) for i in range(len(mu))]
    for choice in itertools.product(*ranges):
        yield Partition(choice)


def macdonald_P_branching(mu, m):
    if not isinstance(mu, Partition):
        mu = Partition(mu)
    return SymPoly(m, dict(_branching_coeffs(mu, m)), mu.size)


# ---------------------------------------------------------------------------
# oracle 2: q-difference operator and triangular eigen solve
#
# Intermediate x-polynomials are flat dicts keyed by
# (x_1 exp, ..., x_m exp, q exp, t exp) -> int.


def _xpoly_mul_linear(p, m, i, j, ci, cj, qt_i=(0, 0), qt_j=(0, 0)):
    """Multiply by (ci * q^{a_i} t^{b_i} x_i + cj * q^{a_j} t^{b_j} x_j)."""
    out = {}
    for key, c in p.items():
        for idx, cc, (a, b) in ((i, ci, qt_i), (j, cj, qt_j)):
            k = list(key)
            k[idx] += 1
            k[m] += a
            k[m + 1] += b
            k = tuple(k)
            s = out.get(k, 0) + c * cc
            if s:
                out[k] = s
            else:
                del out[k]
    return out


def _xpoly_divexact_diff(p, m, k, l):
    """Exact division of p by (x_k - x_l)."""
    buckets = {}
    for key, c in p.items():
        buckets.setdefault(key[k], {})[key] = c
    quo = {}
    for d in range(max(buckets, default=0), 0, -1):
        layer = buckets.get(d)
        if not layer:
            continue
        for key, c in layer.items():
            if not c:
                continue
            qk = list(key)
            qk[k] -= 1
            quo[tuple(qk)] = quo.get(tuple(qk), 0) + c
            rk = list(qk)
            rk[l] += 1
            rk = tuple(rk)
            lower = buckets.setdefault(rk[k], {})
            lower[rk] = lower.get(rk, 0) + c
    if any(c for c in buckets.get(0, {}).values()):
        raise InexactDivision("nonzero remainder in Vandermonde division")
    return {k: c for k, c in quo.items() if c}


_operator_table_cache: dict = {}


def _operator_on_monomial(sigma, m):
    """D m_sigma as a dict Partition -> {(q exp, t exp) -> int}."""
    key = (sigma.parts, m)
    hit = _operator_table_cache.get(key)
    if hit is not None:
        return hit
    total = {}
    orbit = distinct_permutations(sigma.padded(m))
    for i in range(m):
        # f(x_1, .., q x_i, .., x_m), one x-monomial at a time
        p = {}
        for alpha in orbit:
            k = alpha + (alpha[i], 0)
            p[k] = p.get(k, 0) + 1
        sign = 1 if i % 2 == 0 else -1
        for j in range(m):
            if j != i:
                # times (t x_i - x_j)
                p = _xpoly_mul_linear(p, m, i, j, 1, -1, qt_i=(0, 1))
        for a in range(m):
            for b in range(a + 1, m):
                if a != i and b != i:
                    # times (x_a - x_b)
                    p = _xpoly_mul_linear(p, m, a, b, 1, -1)
        for k, c in p.items():
            s = total.get(k, 0) + sign * c
            if s:
                total[k] = s
            else:
                del total[k]
    for a in range(m):
        for b in range(a + 1, m):
            total = _xpoly_divexact_diff(total, m, a, b)
    out = {}
    for k, c in total.items():
        xexps = k[:m]
        if any(xexps[i] < xexps[i + 1] for i in range(m - 1)):
            continue  # read off only the sorted orbit representatives
        part = Partition(xexps)
        out.setdefault(part, {})
        qt = (k[m], k[m + 1])
        out[part][qt] = out[part].get(qt, 0) + c
    _operator_table_cache[key] = out
    return out


def _qt_dict_to_rational(d):
    terms = {}
    pad = (0,) * (QT.nvars - 2)
    for (a, b), c in d.items():
        if c:
            terms[(a, b) + pad] = c
    if not terms:
        return QT.zero
    return QtRational._make(QT, 1, (0,) * QT.nvars, MultiPoly(QT, terms), Counter())


def macdonald_operator_apply(f, m=None):
    """Apply the q-difference operator D to a homogeneous SymPoly."""
    if m is None:
        m = f.m
    out = SymPoly.zero(m, f.degree)
    for sigma, c in f.coeffs.items():
        table = _operator_on_monomial(sigma, m)
        piece = {nu: _qt_dict_to_rational(d) for nu, d in table.items()}
        out = out + SymPoly(m, piece, f.degree).scale(c)
    return out


def eigenvalue(mu, m):
    """e_mu = sum_{i=1}^m q^{mu_i} t^{m-i}."""
    if not isinstance(mu, Partition):
        mu = Partition(mu)
    val = QT.zero
    for i, p in enumerate(mu.padded(m), start=1):
        val = val + QT.monomial(1, q=p, t=m - i).as_rational()
    return val


def _partitions_of(n, max_len, max_part=None):
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    if max_len == 0:
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in _partitions_of(n - first, max_len - 1, first):
            yield (first,) + rest


_eigen_cache: dict = {}


def macdonald_P_eigen(mu, m):
    """P_mu as the monic triangular eigenvector of D."""
    if not isinstance(mu, Partition):
        mu = Partition(mu)
    key = (mu.parts, m)
    hit = _eigen_cache.get(key)
    if hit is not None:
        return hit
    if len(mu) > m:
        raise LengthExceedsVariables("%r needs more than %d variables" % (mu, m))
    from .symfun import dominance_leq

    support = [
        Partition(p)
        for p in _partitions_of(mu.size, m)
        if dominance_leq(Partition(p), mu)
    ]
    support.sort(key=lambda p: p.padded(m), reverse=True)  # lex descending
    assert support and support[0] == mu
    e_mu = eigenvalue(mu, m)
    coeffs = {mu: QT.one}
    tables = {nu: _operator_on_monomial(nu, m) for nu in support}
    for nu in support[1:]:
        acc = QT.zero
        for sigma, c in coeffs.items():
            entry = tables[sigma].get(nu)
            if entry:
                acc = acc + c * _qt_dict_to_rational(entry)
        gap = e_mu - eigenvalue(nu, m)
        if gap.is_zero:
            raise EigenvalueCollision("e_%s = e_%s" % (mu, nu))
        c_nu = acc / gap
        if not c_nu.is_zero:
            coeffs[nu] = c_nu
    result = SymPoly(m, coeffs, mu.size)
    _eigen_cache[key] = result
    return result


# ---------------------------------------------------------------------------
# P-basis expansion and degenerations


class PExpansion:
    """Finite expansion sum terms[kappa] * P_kappa in m variables."""

    __slots__ = ("m", "terms")

    def __init__(self, m, terms):
        self.m = m
        self.terms = {k: v for k, v in terms.items() if not v.is_zero}

    def __eq__(self, other):
        if not isinstance(other, PExpansion):
            return NotImplemented
        if self.m != other.m or set(self.terms) != set(other.terms):
            return False
        return all(v == other.terms[k] for k, v in self.terms.items())

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kc: tuple(-p for p in kc[0].parts))

    def to_sympoly(self):
        out = SymPoly.zero(self.m)
        for kappa, c in self.terms.items():
            out = out + macdonald_P_branching(kappa, self.m).scale(c)
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join("(%s)*P[%s]" % (c, k) for k, c in self.sorted_terms())

    __repr__ = __str__

    def to_json(self):
        return {
            "m": self.m,
            "basis": "P",
            "degree": next(iter(self.terms)).size if self.terms else 0,
            "terms": [
                {"partition": list(k.parts), "coeff": c.to_json()}
                for k, c in self.sorted_terms()
            ],
        }


def expand_in_P(f):
    """Triangular elimination of a homogeneous SymPoly against the P basis."""
    m = f.m
    rest = f
    out = {}
    while not rest.is_zero:
        kappa = max(rest.coeffs, key=lambda p: p.padded(m))  # lex-descending max
        c = rest.coeffs[kappa]
        out[kappa] = c
        rest = rest - macdonald_P_branching(kappa, m).scale(c)
        assert kappa not in rest.coeffs
    return PExpansion(m, out)


def schur_specialize(mu, m):
    """The Schur polynomial s_mu, obtained from P_mu by the q -> t substitution."""
    t = QT.t
    return macdonald_P_branching(mu, m).map_coeffs(
        lambda c: c.substitute({"q": t})
    )
