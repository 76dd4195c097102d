"""The mutually inverse pair (f, g) of multidimensional matrices."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from macpieri.ring import QT, Context
from macpieri.matinv import (
    AppendixParams,
    BoxRange,
    SingularDifference,
    conjugate_check,
    dominates,
    f_entry,
    f_from_C,
    g_entry,
    g_from_D,
    verify_inverse,
    xi_weight,
    zeta_weight,
)


def symbolic_params(n, k, r):
    ctx = Context(tuple("u%d" % i for i in range(n + 1)))
    return AppendixParams(n, k, r, [ctx.var("u%d" % i) for i in range(n + 1)])


def rational_params(n, k, r, fracs):
    us = [QT.monomial(c, q=i + 1, t=-i) for i, c in enumerate(fracs)]
    return AppendixParams(n, k, r, us)


class TestBoxRange:
    def test_iteration_and_membership(self):
        box = BoxRange((0, 0), (1, 2))
        pts = list(box)
        assert len(pts) == 6
        assert (1, 2) in box and (2, 0) not in box

    def test_rejects_bad_bounds(self):
        with pytest.raises(ValueError):
            BoxRange((0,), (1, 1))
        with pytest.raises(ValueError):
            BoxRange((2,), (1,))


def test_params_validation():
    with pytest.raises(ValueError):
        symbolic_params(2, 4, 1)  # k out of range (valid slots are 1..n+1)
    ctx = Context(("u0",))
    with pytest.raises(ValueError):
        AppendixParams(2, 1, 1, [ctx.var("u0")])  # wrong parameter count


def test_diagonal_entries_are_one():
    p = symbolic_params(1, 1, 2)
    for kappa in BoxRange((0,), (3,)):
        assert f_entry(kappa, kappa, p) == p.u[0].ctx.one
        assert g_entry(kappa, kappa, p) == p.u[0].ctx.one


def test_triangularity():
    p = symbolic_params(2, 1, 2)
    assert dominates((1, 1), (1, 0))
    assert not dominates((1, 0), (0, 1))
    assert f_entry((0, 1), (1, 0), p).is_zero
    assert g_entry((0, 1), (1, 0), p).is_zero


def test_inverse_rank_one_symbolic():
    p = symbolic_params(1, 1, 2)
    report = verify_inverse(BoxRange((0,), (3,)), p)
    assert report["pairs_checked"] > 0
    assert report["failures"] == []


def test_inverse_rank_two_rational_point():
    p = rational_params(2, 2, 2, (Fraction(2, 3), Fraction(5, 7), Fraction(3, 2)))
    report = verify_inverse(BoxRange((0, 0), (1, 1)), p)
    assert report["failures"] == []


def test_bridge_to_expansion_coefficients():
    # the inverse-pair entries and the two expansion kernels agree after
    # the standard parameter shifts, in either dimension
    p = symbolic_params(1, 1, 3)
    for kappa in BoxRange((0,), (2,)):
        for beta in BoxRange((0,), (2,)):
            assert f_entry(beta, kappa, p) == f_from_C(beta, kappa, p.u, p.k, p.r)
            assert g_entry(beta, kappa, p) == g_from_D(beta, kappa, p.u, p.k, p.r)


def test_conjugate_check_small():
    p = symbolic_params(1, 1, 2)
    assert conjugate_check(p, BoxRange((0,), (2,)))


def test_conjugation_weights_nonzero_symbolically():
    p = symbolic_params(2, 1, 2)
    for kappa in BoxRange((0, 0), (1, 1)):
        assert not xi_weight(kappa, p).is_zero
        assert not zeta_weight(kappa, p).is_zero


def test_singular_difference_detected():
    # coincident parameters collapse a kernel denominator
    us = [QT.monomial(1, q=1), QT.monomial(1, q=2), QT.monomial(1, q=2)]
    p = AppendixParams(2, 1, 2, us)
    with pytest.raises((SingularDifference, ArithmeticError)):
        verify_inverse(BoxRange((0, 0), (1, 1)), p)
