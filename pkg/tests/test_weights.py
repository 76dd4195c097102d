"""Dominant weights, partitions and the offsets used by the expansions."""

import pytest
from hypothesis import given, settings, strategies as st

from macpieri.weights import (
    DominantWeight,
    KOutOfRange,
    NotAPartition,
    Partition,
    partition_to_weight,
    reduce_partition,
    rho_offset,
    weight_to_partition,
)


coords = st.lists(st.integers(min_value=0, max_value=6), min_size=1, max_size=5)


@given(coords)
@settings(max_examples=80, deadline=None)
def test_weight_partition_roundtrip(cs):
    lam = DominantWeight(cs)
    kappa = weight_to_partition(lam)
    assert kappa.size == lam.size
    assert partition_to_weight(kappa, lam.n) == lam


@given(coords)
@settings(max_examples=80, deadline=None)
def test_partition_is_weakly_decreasing(cs):
    kappa = weight_to_partition(DominantWeight(cs))
    assert all(kappa[i] >= kappa[i + 1] for i in range(len(kappa)))


def test_partition_normalization():
    assert Partition((3, 1, 0, 0)) == Partition((3, 1))
    assert len(Partition(())) == 0
    with pytest.raises(NotAPartition):
        Partition((1, 2))
    with pytest.raises(NotAPartition):
        Partition((2, -1))


def test_partition_padding_and_order():
    kappa = Partition((3, 1))
    assert kappa.padded(4) == (3, 1, 0, 0)
    assert kappa.contains(Partition((2, 1)))
    assert not Partition((2, 1)).contains(kappa)
    with pytest.raises(ValueError):
        kappa.padded(1)


def test_reduce_partition_strips_columns():
    kappa, shift = reduce_partition(Partition((4, 3, 2)), nvars=3)
    assert (kappa, shift) == (Partition((2, 1)), 2)
    kappa, shift = reduce_partition(Partition((4, 3)), nvars=3)
    assert (kappa, shift) == (Partition((4, 3)), 0)


def test_weight_indexing_is_one_based():
    lam = DominantWeight((2, 0, 1))
    assert (lam[0], lam[1], lam[3], lam[4]) == (0, 2, 1, 0)
    with pytest.raises(IndexError):
        lam[5]
    assert DominantWeight.parse("2,0,1") == lam


def test_rho_offset_rejects_bad_slots():
    with pytest.raises(KOutOfRange):
        rho_offset((0,), 3, 1, 2, "pieri")


@given(st.integers(1, 4), st.integers(0, 3),
       st.lists(st.integers(0, 2), min_size=0, max_size=3))
@settings(max_examples=80, deadline=None)
def test_rho_offset_variants(n, r, th):
    th = tuple((th + [0] * n)[: n - 1])
    for k in range(1, n + 1):
        p = rho_offset(th, k, r, n, "pieri")
        rec = rho_offset(th, k, r, n, "recurrence")
        # the two variants differ exactly by (r - |theta|)(omega_k - omega_{k-1})
        diff = [a - b for a, b in zip(p.value, rec.value)]
        want = [0] * n
        want[k - 1] += r - sum(th)
        if k >= 2:
            want[k - 2] -= r - sum(th)
        assert diff == want
        # adding the full-variant offset changes |partition| by r mod n+1
        delta = sum(i * c for i, c in enumerate(p.value, start=1))
        assert delta % (n + 1) == r % (n + 1)


def test_rho_offset_known_values():
    # n = 2, k = 2: theta = (a,) moves omega_1 by a and omega_3 (absent) by -0
    rho = rho_offset((2,), 2, 3, 2, "pieri")
    assert rho.value == (2 - (3 - 2), 3 - 2)
    rho = rho_offset((2,), 2, 3, 2, "recurrence")
    assert rho.value == (2, 0)
    # n = 3, k = 1: the r - |theta| surplus lands on omega_1, theta_1 is
    # carried from omega_2 over to omega_3
    rho = rho_offset((1, 0), 1, 2, 3, "pieri")
    assert rho.add_to(DominantWeight((0, 0, 0))) == (1, -1, 1)
