"""Homogeneous symmetric polynomials in the monomial basis.

A SymPoly in m variables is a finite map partition -> coefficient where the
key lambda stands for the orbit sum m_lambda = sum of x^alpha over the
distinct permutations alpha of lambda (padded with zeros to length m).
"""

from __future__ import annotations

from fractions import Fraction

from .ring import QT, QtRational
from .weights import Partition


class VariableCountMismatch(ValueError):
    pass


class SizeMismatch(ValueError):
    pass


def distinct_permutations(seq):
    """All distinct permutations of `seq`, as tuples (multiset permutations)."""
    seq = sorted(seq, reverse=True)
    n = len(seq)
    out = []
    perm = list(seq)
    while True:
        out.append(tuple(perm))
        # next permutation in decreasing lexicographic order
        i = n - 2
        while i >= 0 and perm[i] <= perm[i + 1]:
            i -= 1
        if i < 0:
            return out
        j = n - 1
        while perm[j] >= perm[i]:
            j -= 1
        perm[i], perm[j] = perm[j], perm[i]
        perm[i + 1 :] = reversed(perm[i + 1 :])


def orbit_size(kappa, m):
    """Number of distinct permutations of kappa padded to length m."""
    from math import factorial

    padded = list(kappa) + [0] * (m - len(kappa))
    count = factorial(m)
    for v in set(padded):
        count //= factorial(padded.count(v))
    return count


class SymPoly:
    """Sparse symmetric polynomial: partition keys, QtRational values."""

    __slots__ = ("m", "degree", "coeffs")

    def __init__(self, m, coeffs, degree=None):
        self.m = m
        clean = {}
        for kappa, c in coeffs.items():
            if not isinstance(kappa, Partition):
                kappa = Partition(kappa)
            if isinstance(c, (int, Fraction)):
                c = QT.rational(c)
            if c.is_zero:
                continue
            if len(kappa) > m:
                raise ValueError("key %r too long for %d variables" % (kappa, m))
            clean[kappa] = c
        if degree is None:
            degree = next(iter(clean)).size if clean else 0
        for kappa in clean:
            if kappa.size != degree:
                raise ValueError("mixed degrees: %r in degree-%d poly" % (kappa, degree))
        self.degree = degree
        self.coeffs = clean

    @classmethod
    def zero(cls, m, degree=0):
        return cls(m, {}, degree)

    @classmethod
    def monomial_basis(cls, kappa, m):
        return cls(m, {Partition(kappa): QT.one})

    @classmethod
    def unit(cls, m):
        return cls(m, {Partition(()): QT.one})

    @property
    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, SymPoly):
            return NotImplemented
        if self.m != other.m or set(self.coeffs) != set(other.coeffs):
            return False
        return all(c == other.coeffs[kappa] for kappa, c in self.coeffs.items())

    def __add__(self, other):
        if self.m != other.m:
            raise VariableCountMismatch()
        coeffs = dict(self.coeffs)
        for kappa, c in other.coeffs.items():
            s = coeffs.get(kappa)
            s = c if s is None else s + c
            if s.is_zero:
                coeffs.pop(kappa, None)
            else:
                coeffs[kappa] = s
        deg = self.degree if self.coeffs or not other.coeffs else other.degree
        return SymPoly(self.m, coeffs, deg)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        if isinstance(c, (int, Fraction)):
            c = QT.rational(c)
        if c.is_zero:
            return SymPoly.zero(self.m, self.degree)
        return SymPoly(
            self.m, {kappa: v * c for kappa, v in self.coeffs.items()}, self.degree
        )

    def coeff(self, kappa):
        if not isinstance(kappa, Partition):
            kappa = Partition(kappa)
        return self.coeffs.get(kappa, QT.zero)

    def map_coeffs(self, fn):
        return SymPoly(
            self.m, {kappa: fn(v) for kappa, v in self.coeffs.items()}, self.degree
        )

    def eval_ones(self):
        """Value at x_1 = ... = x_m = 1 (a QtRational in q, t)."""
        total = QT.zero
        for kappa, c in self.coeffs.items():
            total = total + c * orbit_size(kappa, self.m)
        return total

    def sorted_terms(self):
        return sorted(self.coeffs.items(), key=lambda kc: _partition_key(kc[0]))

    def __str__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(
            "(%s)*m[%s]" % (c, kappa) for kappa, c in self.sorted_terms()
        )

    __repr__ = __str__

    def to_json(self):
        return {
            "m": self.m,
            "degree": self.degree,
            "terms": [
                {"partition": list(kappa.parts), "coeff": c.to_json()}
                for kappa, c in self.sorted_terms()
            ],
        }


def _partition_key(kappa):
    return tuple(-p for p in kappa.parts)


def mono_mul(mu, nu, m):
    """Exact expansion of m_mu * m_nu in the monomial basis of m variables."""
    if not isinstance(mu, Partition):
        mu = Partition(mu)
    if not isinstance(nu, Partition):
        nu = Partition(nu)
    if len(mu) > m or len(nu) > m:
        raise ValueError("partition too long for %d variables" % m)
    if len(mu) > len(nu):
        mu, nu = nu, mu
    out = {}
    for key, c in _mono_mul_counts(mu, nu, m).items():
        out[Partition(key)] = QT.rational(c)
    return SymPoly(m, out, mu.size + nu.size)


def _mono_mul_counts(mu, nu, m):
    """coefficient of m_kappa in m_mu m_nu = #{(alpha,beta): alpha+beta=kappa}.

    Computed by fixing the target exponent vector kappa (sorted) and counting
    orbit pairs summing to it; equivalently, convolve orbit(mu) with
    orbit(nu) and read off sorted keys that equal their own representative.
    """
    nu_orbit = distinct_permutations(nu.padded(m))
    counts = {}
    for alpha in distinct_permutations(mu.padded(m)):
        for beta in nu_orbit:
            key = tuple(a + b for a, b in zip(alpha, beta))
            if all(key[i] >= key[i + 1] for i in range(m - 1)):
                counts[key] = counts.get(key, 0) + 1
    return counts


def multiply(f, g):
    """Bilinear extension of mono_mul."""
    if f.m != g.m:
        raise VariableCountMismatch()
    m = f.m
    out = SymPoly.zero(m, f.degree + g.degree)
    cache = {}
    for mu, a in f.coeffs.items():
        for nu, b in g.coeffs.items():
            key = (mu, nu) if _partition_key(mu) <= _partition_key(nu) else (nu, mu)
            prod = cache.get(key)
            if prod is None:
                prod = mono_mul(key[0], key[1], m)
                cache[key] = prod
            out = out + prod.scale(a * b)
    return out


def dominance_leq(mu, nu):
    """mu <= nu in dominance order (both partitions of the same size)."""
    if not isinstance(mu, Partition):
        mu = Partition(mu)
    if not isinstance(nu, Partition):
        nu = Partition(nu)
    if mu.size != nu.size:
        raise SizeMismatch("|%s| != |%s|" % (mu, nu))
    s = t = 0
    for i in range(max(len(mu), len(nu))):
        s += mu[i]
        t += nu[i]
        if s > t:
            return False
    return True
