"""Two constructions of P_mu and the expansion machinery around them."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from macpieri.ring import QT, QtRational
from macpieri.weights import Partition
from macpieri.macdonald import (
    EigenvalueCollision,
    LengthExceedsVariables,
    PExpansion,
    eigenvalue,
    expand_in_P,
    is_horizontal_strip,
    macdonald_P_branching,
    macdonald_P_eigen,
    macdonald_operator_apply,
    schur_specialize,
)
from macpieri.symfun import SymPoly, multiply


def q_mono(**exps):
    return QT.monomial(1, **exps).as_rational()


partitions = st.lists(
    st.integers(min_value=0, max_value=3), min_size=0, max_size=3
).map(lambda xs: Partition(sorted(xs, reverse=True)))


def test_known_row_coefficient():
    # P_(2) in two variables: m_(2) + (1+q)(1-t)/(1-qt) m_(1,1)
    p = macdonald_P_branching(Partition((2,)), 2)
    assert p.coeff(Partition((2,))) == QT.one
    q, t, qt = q_mono(q=1), q_mono(t=1), q_mono(q=1, t=1)
    assert p.coeff(Partition((1, 1))) == (QT.one + q) * (QT.one - t) / (QT.one - qt)


def test_column_is_monomial():
    # P_(1,1) = m_(1,1): a single column admits no lower monomial term
    p = macdonald_P_branching(Partition((1, 1)), 3)
    assert p == SymPoly.monomial_basis(Partition((1, 1)), 3)


@given(partitions, st.integers(1, 3))
@settings(max_examples=25, deadline=None)
def test_branching_equals_eigen(mu, m):
    if len(mu) > m:
        return
    assert macdonald_P_branching(mu, m) == macdonald_P_eigen(mu, m)


@given(partitions, st.integers(1, 3))
@settings(max_examples=25, deadline=None)
def test_operator_eigenrelation(mu, m):
    if len(mu) > m:
        return
    p = macdonald_P_branching(mu, m)
    assert macdonald_operator_apply(p) == p.scale(eigenvalue(mu, m))


def test_eigenvalue_closed_form():
    # e_(2,1) in 3 vars = q^2 t^2 + q t + 1
    want = q_mono(q=2, t=2) + q_mono(q=1, t=1) + QT.one
    assert eigenvalue(Partition((2, 1)), 3) == want


def test_horizontal_strips():
    assert is_horizontal_strip((3, 1), (2, 1))
    assert is_horizontal_strip((3, 1), (1,))
    assert is_horizontal_strip((3, 3), (3, 1))
    assert not is_horizontal_strip((2, 2), (1,))
    assert not is_horizontal_strip((1,), (2,))


def test_too_many_rows_raises():
    with pytest.raises(LengthExceedsVariables):
        macdonald_P_branching(Partition((1, 1, 1)), 2)
    with pytest.raises(LengthExceedsVariables):
        macdonald_P_eigen(Partition((1, 1, 1, 1)), 3)


@given(partitions, partitions, st.integers(1, 3))
@settings(max_examples=15, deadline=None)
def test_expand_in_P_inverts_product(mu, nu, m):
    if len(mu) > m or len(nu) > m:
        return
    f = multiply(macdonald_P_branching(mu, m), macdonald_P_branching(nu, m))
    exp = expand_in_P(f)
    assert exp.to_sympoly() == f


def test_expansion_equality_and_json():
    f = multiply(
        macdonald_P_branching(Partition((1,)), 2),
        macdonald_P_branching(Partition((1,)), 2),
    )
    exp = expand_in_P(f)
    assert exp == expand_in_P(f)
    data = exp.to_json()
    assert data["basis"] == "P"
    assert data["degree"] == 2
    assert [t["partition"] for t in data["terms"]] == [[2], [1, 1]]


def test_schur_specialization():
    # s_(2,1) in 3 variables = m_(2,1) + 2 m_(1,1,1)
    s = schur_specialize(Partition((2, 1)), 3)
    two = QtRational.from_fraction(QT, Fraction(2))
    assert s.coeff(Partition((2, 1))) == QT.one
    assert s.coeff(Partition((1, 1, 1))) == two


def test_schur_is_q_to_t_limit():
    mu, m = Partition((2, 1)), 3
    p = macdonald_P_branching(mu, m)
    subbed = SymPoly(
        m,
        {k: v.substitute({"q": QT.monomial(1, t=1)}) for k, v in p.coeffs.items()},
        mu.size,
    )
    assert subbed == schur_specialize(mu, m)
