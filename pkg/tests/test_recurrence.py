"""Recurrence coefficients C_theta, the normalization b_lambda, closed forms."""

import pytest

from macpieri.ring import QT, Context, poch
from macpieri.weights import DominantWeight
from macpieri import recurrence
from macpieri.recurrence import (
    C_coeff,
    ROutOfRange,
    VandermondeSingular,
    b_lambda,
    closed_form_coeff,
    det_quotient,
    recurrence_expand,
    recurrence_expand_shifted,
    shifted_weight,
)
from macpieri.verify import check_recurrence_reconstruction


def test_reconstruction_small():
    cells = check_recurrence_reconstruction(max_size=4, ns=(2,))
    assert cells
    assert all(c["status"] == "pass" for c in cells)


def test_expand_targets_have_zero_slot():
    lam = DominantWeight((1, 2, 1))
    for k in (1, 2, 3):
        terms = recurrence_expand(lam, k)
        assert terms, "empty expansion at k=%d" % k
        for term in terms:
            assert term.target[k] == 0
            assert term.row_factor == lam[k] - term.theta.size
            assert not term.coeff.is_zero
    with pytest.raises(ValueError):
        recurrence_expand(lam, 4)


def test_shifted_matches_self_contained():
    lam = DominantWeight((2, 0, 1))
    k, r = 2, 2
    base = shifted_weight(lam, k, r)
    assert base == DominantWeight((0, 2, 1))
    got = recurrence_expand_shifted(lam, k, r)
    want = recurrence_expand(base, k)
    assert len(got) == len(want)
    for a, b in zip(got, want):
        assert (a.theta, a.row_factor, a.target) == (b.theta, b.row_factor, b.target)
        assert a.coeff == b.coeff


def test_shifted_guards():
    with pytest.raises(ValueError):
        recurrence_expand_shifted(DominantWeight((1, 1)), 2, 1)  # slot not zero
    with pytest.raises(ROutOfRange):
        recurrence_expand_shifted(DominantWeight((1, 0)), 2, 2)  # r > lambda_1


def test_b_lambda_rank_one():
    # for lambda = r omega_1 in rank one, b = (t; q)_r / (q; q)_r
    q, t = QT.monomial(1, q=1), QT.monomial(1, t=1)
    for r in range(5):
        want = poch(t, r).evaluate() / poch(q, r).evaluate()
        assert b_lambda(DominantWeight((r,))) == want


def test_det_quotient_singular():
    ctx = Context(("u1",))
    u1 = ctx.var("u1")
    assert det_quotient([u1, u1.q_power(2)], (1, 0)) is not None
    with pytest.raises(VandermondeSingular):
        det_quotient([u1, u1.q_power(1)], (1, 0))


def test_rank_two_closed_forms_pointwise():
    l1, l2 = 2, 3
    u2 = [QT.monomial(1, q=-l2, t=-2), QT.monomial(1, q=l1)]
    u1 = [QT.monomial(1, q=-l1, t=-2), QT.monomial(1, q=-l1 - l2, t=-3)]
    for theta in range(4):
        a2k2 = closed_form_coeff("A2K2", (l1, l2, theta))
        assert a2k2 == C_coeff(u2, 2, l2, (theta,))
        assert a2k2 == closed_form_coeff("JJ", (l1 + l2, l2, theta))
        assert closed_form_coeff("A2K1", (l1, l2, theta)) == C_coeff(u1, 1, l1, (theta,))
    with pytest.raises(ValueError):
        closed_form_coeff("XX", ())


def test_rank_three_identities_pointwise():
    ctx2 = Context(("u1", "u2"))
    w = [ctx2.var("u1"), ctx2.var("u2")]
    assert det_quotient(w, (1, 1)) == recurrence.a3_det_identity_rhs(w[0], w[1], 1, 1)
    ctx3 = Context(("u0", "u1", "u2"))
    u = [ctx3.var("u0"), ctx3.var("u1"), ctx3.var("u2")]
    assert recurrence.a3_ratio_identity_check(u, 2, 1, 1, 1)
    assert closed_form_coeff("LA", (2, 1, 1, 1, 0)) == closed_form_coeff(
        "A3", (3, (1, 0, 1), 1, 0)
    )


def test_zero_on_negative_theta():
    u = [QT.monomial(1, q=-1, t=-2), QT.monomial(1, q=1)]
    assert C_coeff(u, 2, 1, (-1,)).is_zero
