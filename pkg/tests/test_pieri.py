"""Pieri coefficients: d, d-hat, d-tilde, D, and the full expansion."""

import pytest
from hypothesis import given, settings, strategies as st

from macpieri.ring import QT, factored_equal
from macpieri.weights import DominantWeight
from macpieri.pieri import (
    LambdaKNonzero,
    MultiIndex,
    NonDominantTarget,
    box_compositions,
    compositions,
    d_coeff,
    d_factored,
    dhat_coeff,
    dhat_factored,
    dtilde_coeff,
    dtilde_factored,
    lemma32_check,
    pieri_expand,
    pieri_expand_reduced,
    _full_theta,
)


def q_mono(**exps):
    return QT.monomial(1, **exps).as_rational()


def test_rank_one_single_box():
    # P_omega P_omega = P_2omega + (1-q)(1+t)/(1-qt) P_0 in rank one
    exp = pieri_expand(DominantWeight((1,)), 1)
    q, t, qt = q_mono(q=1), q_mono(t=1), q_mono(q=1, t=1)
    assert exp[DominantWeight((2,))] == QT.one
    assert exp[DominantWeight((0,))] == (QT.one - q) * (QT.one + t) / (QT.one - qt)
    assert len(exp) == 2


def test_leading_coefficient_is_one():
    # theta = (r, 0, ..., 0) always contributes coefficient 1
    for lam, r in [(DominantWeight((1, 2)), 2), (DominantWeight((0, 1, 1)), 3)]:
        theta = (r,) + (0,) * lam.n
        assert d_coeff(lam, r, theta) == QT.one


def test_compositions_are_colex_sorted():
    got = compositions(2, 3)
    assert got[0] == (2, 0, 0)
    assert got[-1] == (0, 0, 2)
    assert all(tuple(reversed(a)) < tuple(reversed(b)) for a, b in zip(got, got[1:]))
    box = box_compositions(2, 2)
    assert set(box) == {th for s in range(3) for th in compositions(s, 2)}


def test_multiindex_rejects_negatives():
    assert MultiIndex((1, 0, 2)).size == 3
    with pytest.raises(ValueError):
        MultiIndex((1, -1))


@given(st.lists(st.integers(0, 2), min_size=2, max_size=3), st.integers(1, 3))
@settings(max_examples=20, deadline=None)
def test_dhat_drops_the_kth_slot(coords, r):
    lam = DominantWeight(coords)
    n = lam.n
    for k in range(1, n + 1):
        for theta in box_compositions(r, n + 1):
            if theta[k - 1] != 0 or sum(theta) > r:
                continue
            full = list(theta)
            full[k - 1] = r - sum(theta)
            assert factored_equal(
                dhat_factored(lam, r, k, tuple(theta)),
                d_factored(lam, r, tuple(full)),
            )


def test_dtilde_requires_zero_part():
    lam = DominantWeight((1, 1))
    with pytest.raises(LambdaKNonzero):
        dtilde_coeff(lam, 1, 1, (0,))
    with pytest.raises(LambdaKNonzero):
        pieri_expand_reduced(lam, 1, 2)


def test_dtilde_matches_dhat_on_zero_slot():
    lam = DominantWeight((0, 2, 1))
    n, k = lam.n, 1
    for r in (1, 2):
        for theta in box_compositions(r, n - 1):
            assert factored_equal(
                dtilde_factored(lam, r, k, theta),
                dhat_factored(lam, r, k, _full_theta(theta, k, n)),
            )


def test_relabelling_small():
    for n, k, r in [(2, 1, 1), (2, 2, 2), (3, 2, 1)]:
        for theta in box_compositions(r, n - 1):
            assert lemma32_check(n, k, r, theta)  # symbolic u's
    lam = DominantWeight((0, 1, 2))
    assert lemma32_check(3, 1, 2, (1, 0), lam=lam)


def test_reduced_expansion_matches_full():
    # with lambda_k = 0 the reduced list reproduces the full expansion
    lam = DominantWeight((2, 0))
    full = pieri_expand(lam, 2)
    reduced = pieri_expand_reduced(lam, 2, 2)
    assert {target: c for _, c, target in reduced} == full


def test_expansion_weights_are_dominant():
    for r in (1, 2, 3):
        exp = pieri_expand(DominantWeight((1, 0, 1)), r)
        assert all(min(w.coords) >= 0 for w in exp)
        assert all(not c.is_zero for c in exp.values())
