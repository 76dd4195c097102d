"""Pieri coefficients d, d-hat, d-tilde, D and the row-multiplication expansions.

Every coefficient is assembled as a FactoredProduct in the exact factor order
of its defining display and evaluated once, so that vanishing factors cancel
exactly and a genuine pole raises instead of being silently resolved.
"""

from __future__ import annotations

import itertools

from .ring import QT, Context, FactoredProduct, Monomial, factored_equal, poch
from .weights import DominantWeight, rho_offset


class NonDominantTarget(ArithmeticError):
    """A nonzero coefficient landed on a target outside the dominant cone."""


class LambdaKNonzero(ValueError):
    pass


_Q = QT.monomial(1, q=1)
_T = QT.monomial(1, t=1)


class MultiIndex(tuple):
    """A tuple of nonnegative integers."""

    def __new__(cls, entries):
        entries = tuple(int(e) for e in entries)
        if any(e < 0 for e in entries):
            raise ValueError("negative entry in %r" % (entries,))
        return super().__new__(cls, entries)

    @property
    def size(self):
        return sum(self)


class USequence:
    """A tagged list of parameter monomials u_i."""

    __slots__ = ("values", "variant")

    def __init__(self, values, variant):
        self.values = list(values)
        self.variant = variant

    def __getitem__(self, i):
        return self.values[i]

    def __len__(self):
        return len(self.values)


def u_full(lam):
    """u_i = q^{sum_{j>=i} lambda_j} t^{-i} for 1 <= i <= n+1 (0-based list)."""
    n = lam.n
    vals = [
        QT.monomial(1, q=sum(lam.coords[i - 1 :]), t=-i) for i in range(1, n + 2)
    ]
    return USequence(vals, "theorem31")


def u_reduced(lam, k, r):
    """The three-case u_0..u_{n-1} attached to a weight with lambda_k = 0."""
    n = lam.n
    vals = [QT.monomial(1, q=-r, t=-2)]
    for i in range(1, k):
        vals.append(QT.monomial(1, q=-r + sum(lam.coords[i - 1 : k - 1]), t=k - i - 1))
    for i in range(k, n):
        vals.append(
            QT.monomial(1, q=-r - sum(lam.coords[k : i + 1]), t=k - i - 3)
        )
    return USequence(vals, "theorem33")


def compositions(total, slots):
    """All theta in N^slots with |theta| = total, in colex ascending order."""
    if slots == 0:
        return [()] if total == 0 else []
    out = [
        theta
        for theta in itertools.product(range(total + 1), repeat=slots)
        if sum(theta) == total
    ]
    out.sort(key=lambda th: tuple(reversed(th)))
    return out


def box_compositions(max_total, slots):
    """All theta in N^slots with |theta| <= max_total, colex ascending."""
    out = [
        theta
        for theta in itertools.product(range(max_total + 1), repeat=slots)
        if sum(theta) <= max_total
    ]
    out.sort(key=lambda th: (tuple(reversed(th))))
    return out


def _ratio(fp, a, b, idx):
    """fp * (a;q)_idx / (b;q)_idx, mutating the product under assembly."""
    return fp.times_poch_ratio(a, b, idx)


def d_factored(lam, r, theta):
    """d_theta(u_1..u_{n+1}; r) as a FactoredProduct."""
    n = lam.n
    theta = MultiIndex(theta)
    if len(theta) != n + 1:
        raise ValueError("theta must have %d entries" % (n + 1,))
    u = u_full(lam)
    v = [u[i].q_power(theta[i]) for i in range(n + 1)]
    fp = _ratio(FactoredProduct.one(QT), _Q, _T, r)
    for j in range(n + 1):
        fp = _ratio(fp, _T, _Q, theta[j])
    for j in range(n + 1):
        for i in range(j):
            fp = _ratio(fp, _T * v[i] / v[j], _Q * v[i] / v[j], theta[j])
            fp = _ratio(fp, _Q * u[i] / (_T * v[j]), u[i] / v[j], theta[j])
    return fp


def d_coeff(lam, r, theta):
    return d_factored(lam, r, theta).evaluate()


def pieri_expand(lam, r):
    """Full expansion of P_{r omega_1} P_lambda, weight -> coefficient."""
    n = lam.n
    out = {}
    for theta in compositions(r, n + 1):
        c = d_coeff(lam, r, theta)
        if c.is_zero:
            continue
        comps = [
            lam.coords[i] + theta[i] - theta[i + 1] for i in range(n)
        ]
        if any(x < 0 for x in comps):
            raise NonDominantTarget(
                "theta=%r gives nonzero coefficient on %r" % (theta, comps)
            )
        target = DominantWeight(comps)
        assert target not in out, "collision at %r" % (target,)
        out[target] = c
    return out


def dhat_factored(lam, r, k, theta):
    """d-hat for theta in N^{n+1} with theta_k = 0 (1-based slot k)."""
    n = lam.n
    theta = MultiIndex(theta)
    if len(theta) != n + 1 or theta[k - 1] != 0:
        raise ValueError("theta must have %d entries with slot %d zero" % (n + 1, k))
    size = theta.size
    u = u_full(lam)
    v = [u[i].q_power(theta[i]) for i in range(n + 1)]
    v[k - 1] = u[k - 1].q_power(r - size)
    fp = _ratio(FactoredProduct.one(QT), _Q, _T, r)
    fp = _ratio(fp, _T, _Q, r - size)
    for j in range(n + 1):
        if j != k - 1:
            fp = _ratio(fp, _T, _Q, theta[j])
    for j in range(n + 1):
        if j == k - 1:
            continue
        for i in range(j):
            fp = _ratio(fp, _T * v[i] / v[j], _Q * v[i] / v[j], theta[j])
            fp = _ratio(fp, _Q * u[i] / (_T * v[j]), u[i] / v[j], theta[j])
    for i in range(k - 1):
        fp = _ratio(fp, _T * v[i] / v[k - 1], _Q * v[i] / v[k - 1], r - size)
        fp = _ratio(fp, _Q * u[i] / (_T * v[k - 1]), u[i] / v[k - 1], r - size)
    return fp


def dhat_coeff(lam, r, k, theta):
    return dhat_factored(lam, r, k, theta).evaluate()


def _full_theta(theta, k, n):
    """Insert the two zero slots k, k+1 into a reduced theta in N^{n-1}."""
    full = list(theta[: k - 1]) + [0, 0] + list(theta[k - 1 :])
    assert len(full) == n + 1
    return full


def _dtilde_factored(u_map, k, r, theta, n):
    """d-tilde from a 1-based index -> Monomial map over {1..k-1, k, k+2..n+1}."""
    theta = MultiIndex(theta)
    if len(theta) != n - 1:
        raise ValueError("theta must have %d entries" % (n - 1,))
    ctx = u_map[k].ctx
    q, t = ctx.var("q"), ctx.var("t")
    full = _full_theta(theta, k, n)
    size = theta.size
    idxs = [i for i in range(1, n + 2) if i not in (k, k + 1)]
    v = {i: u_map[i].q_power(full[i - 1]) for i in idxs}
    vk = u_map[k].q_power(r - size)
    fp = _ratio(FactoredProduct.one(ctx), q, t, r)
    fp = _ratio(fp, t, q, r - size)
    for i in idxs:
        fp = _ratio(fp, t, q, full[i - 1])
    for j in idxs:
        for i in idxs:
            if i >= j:
                continue
            fp = _ratio(fp, t * v[i] / v[j], q * v[i] / v[j], full[j - 1])
            fp = _ratio(fp, q * u_map[i] / (t * v[j]), u_map[i] / v[j], full[j - 1])
    for i in range(1, k):
        fp = _ratio(fp, t * v[i] / vk, q * v[i] / vk, r - size)
        fp = _ratio(fp, q * u_map[i] / (t * vk), u_map[i] / vk, r - size)
    for j in range(k + 2, n + 2):
        fp = _ratio(fp, t * vk / v[j], q * vk / v[j], full[j - 1])
        fp = _ratio(
            fp, q * u_map[k] / (t**2 * v[j]), u_map[k] / (t * v[j]), full[j - 1]
        )
    return fp


def dtilde_factored(lam, r, k, theta):
    """d-tilde for a weight with lambda_k = 0 and theta in N^{n-1}."""
    n = lam.n
    if lam[k] != 0:
        raise LambdaKNonzero("lambda_%d = %d != 0" % (k, lam[k]))
    u31 = u_full(lam)
    u_map = {i: u31[i - 1] for i in range(1, n + 2) if i != k + 1}
    return _dtilde_factored(u_map, k, r, theta, n)


def dtilde_coeff(lam, r, k, theta):
    return dtilde_factored(lam, r, k, theta).evaluate()


def D_factored(u, k, r, theta):
    """D_theta(u_0..u_{n-1}; k, r) as a FactoredProduct; n = len(u)."""
    n = len(u)
    theta = MultiIndex(theta)
    if len(theta) != n - 1:
        raise ValueError("theta must have %d entries" % (n - 1,))
    ctx = u[0].ctx
    q, t = ctx.var("q"), ctx.var("t")
    size = theta.size
    v = [u[i].q_power(theta[i - 1]) for i in range(1, n)]  # v[i-1] = v_i
    fp = FactoredProduct.one(ctx).times_monomial(ctx.monomial(1, q=size, t=-size))
    fp = _ratio(fp, t**2 * u[0], q * t * u[0], size)
    for i in range(1, n):
        fp = _ratio(fp, t, q, theta[i - 1])
        fp = _ratio(
            fp, u[i].q_power(size + 1), (t * u[i]).q_power(size), theta[i - 1]
        )
    for j in range(2, n):
        for i in range(1, j):
            fp = _ratio(
                fp, t * v[i - 1] / v[j - 1], q * v[i - 1] / v[j - 1], theta[j - 1]
            )
            fp = _ratio(
                fp, q * u[i] / (t * v[j - 1]), u[i] / v[j - 1], theta[j - 1]
            )
    for i in range(1, k):
        fp = _ratio(fp, u[i] / u[0], q * u[i] / (t * u[0]), theta[i - 1])
        fp = _ratio(
            fp, q * u[i] / (t * u[0]), u[i] / u[0], theta[i - 1] - r + size
        )
        fp = _ratio(
            fp,
            u[i] / (t * u[0]),
            q * u[i] / (t**2 * u[0]),
            theta[i - 1] - r + size,
        )
    for i in range(k, n):
        fp = _ratio(fp, t * u[i] / u[0], q * u[i] / u[0], theta[i - 1])
    return fp


def D_coeff(u, k, r, theta):
    if isinstance(u, USequence):
        u = u.values
    return D_factored(u, k, r, theta).evaluate()


def symbolic_context(n):
    """A context carrying free parameters u1..u{n+1} besides q, t."""
    return Context(tuple("u%d" % i for i in range(1, n + 2)))


def lemma32_check(n, k, r, theta, lam=None):
    """The relabelling identity D(w; k, r) = d-tilde(u; k, r), checked exactly.

    With `lam` (a weight with lambda_k = 0) the u's are the instantiated
    monomials in q, t; without it the u's are free symbolic parameters.
    """
    if lam is not None:
        if lam[k] != 0:
            raise LambdaKNonzero("lambda_%d != 0" % k)
        u31 = u_full(lam)
        u_map = {i: u31[i - 1] for i in range(1, n + 2) if i != k + 1}
    else:
        ctx = symbolic_context(n)
        u_map = {i: ctx.var("u%d" % i) for i in range(1, n + 2) if i != k + 1}
    ctx = u_map[k].ctx
    t = ctx.var("t")
    qinv_r = ctx.monomial(1, q=-r)
    w = [ctx.monomial(1, q=-r, t=-2)]
    for i in range(1, k):
        w.append(qinv_r * u_map[i] / (t * u_map[k]))
    for i in range(k, n):
        w.append(qinv_r * u_map[i + 2] / (t * u_map[k]))
    lhs = D_factored(w, k, r, theta)
    rhs = _dtilde_factored(u_map, k, r, theta, n)
    return factored_equal(lhs, rhs)


def pieri_expand_reduced(lam, r, k):
    """Reduced Pieri expansion for lambda_k = 0: list of (theta, coeff, target)."""
    n = lam.n
    if lam[k] != 0:
        raise LambdaKNonzero("lambda_%d = %d != 0" % (k, lam[k]))
    u = u_reduced(lam, k, r)
    out = []
    for theta in box_compositions(r, n - 1):
        c = D_coeff(u, k, r, theta)
        if c.is_zero:
            continue
        rho = rho_offset(theta, k, r, n, "pieri")
        comps = rho.add_to(lam)
        if any(x < 0 for x in comps):
            raise NonDominantTarget(
                "theta=%r gives nonzero coefficient on %r" % (theta, comps)
            )
        out.append((MultiIndex(theta), c, DominantWeight(comps)))
    return out
