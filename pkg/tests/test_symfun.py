"""Symmetric polynomials in the monomial basis."""

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from macpieri.ring import QT, QtRational
from macpieri.weights import Partition
from macpieri.symfun import (
    SizeMismatch,
    SymPoly,
    distinct_permutations,
    dominance_leq,
    mono_mul,
    multiply,
    orbit_size,
)


def m_basis(parts, m):
    return SymPoly.monomial_basis(Partition(parts), m)


partitions = st.lists(
    st.integers(min_value=0, max_value=4), min_size=0, max_size=3
).map(lambda xs: Partition(sorted(xs, reverse=True)))


@given(st.lists(st.integers(0, 3), min_size=1, max_size=5))
@settings(max_examples=60, deadline=None)
def test_distinct_permutations_match_set(seq):
    got = list(distinct_permutations(tuple(seq)))
    want = set(itertools.permutations(seq))
    assert len(got) == len(want)
    assert set(got) == want


@given(partitions, st.integers(1, 4))
@settings(max_examples=60, deadline=None)
def test_orbit_size_counts_permutations(kappa, m):
    if len(kappa) > m:
        return
    assert orbit_size(kappa, m) == len(
        set(itertools.permutations(kappa.padded(m)))
    )


def brute_mono_mul(mu, nu, m):
    """m_mu * m_nu expanded through all exponent-vector pairs."""
    out = {}
    for a in set(itertools.permutations(mu.padded(m))):
        for b in set(itertools.permutations(nu.padded(m))):
            v = tuple(x + y for x, y in zip(a, b))
            out[v] = out.get(v, 0) + 1
    coeffs = {}
    for v, c in out.items():
        key = Partition(sorted(v, reverse=True))
        if tuple(sorted(v, reverse=True)) == v:
            coeffs[key] = coeffs.get(key, 0) + c
    return coeffs


@given(partitions, partitions, st.integers(1, 3))
@settings(max_examples=40, deadline=None)
def test_mono_mul_against_brute_force(mu, nu, m):
    if len(mu) > m or len(nu) > m:
        return
    got = mono_mul(mu, nu, m)
    want = brute_mono_mul(mu, nu, m)
    assert {k: v for k, v in got.coeffs.items() if not v.is_zero} == {
        k: QtRational.from_fraction(QT, v) for k, v in want.items() if v
    }


@given(partitions, partitions, st.integers(1, 3))
@settings(max_examples=40, deadline=None)
def test_multiply_commutes(mu, nu, m):
    if len(mu) > m or len(nu) > m:
        return
    f, g = m_basis(mu.parts, m), m_basis(nu.parts, m)
    assert multiply(f, g) == multiply(g, f)


def test_multiply_checks_variable_count():
    from macpieri.symfun import VariableCountMismatch

    with pytest.raises(VariableCountMismatch):
        multiply(m_basis((1,), 2), m_basis((1,), 3))


def test_addition_requires_equal_degree():
    with pytest.raises(ValueError):
        m_basis((2,), 2) + m_basis((1,), 2)


def test_eval_ones_is_orbit_count():
    f = m_basis((2, 1), 3)
    assert f.eval_ones() == QtRational.from_fraction(QT, Fraction(orbit_size(Partition((2, 1)), 3)))


def test_known_product():
    # e_1^2 = m_(2) + 2 m_(1,1) in two variables
    e1 = m_basis((1,), 2)
    got = multiply(e1, e1)
    assert got.coeff(Partition((2,))) == QT.one
    assert got.coeff(Partition((1, 1))) == QtRational.from_fraction(QT, 2)


def test_dominance():
    assert dominance_leq(Partition((2, 2)).padded(4), Partition((3, 1)).padded(4))
    assert not dominance_leq(Partition((3, 1)).padded(4), Partition((2, 2)).padded(4))
    with pytest.raises(SizeMismatch):
        dominance_leq(Partition((2,)), Partition((1,)))


def test_json_shape():
    f = m_basis((2, 1), 3).scale(QT.one)
    data = f.to_json()
    assert data["m"] == 3
    assert data["terms"][0]["partition"] == [2, 1]
