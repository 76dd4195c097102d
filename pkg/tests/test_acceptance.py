"""Acceptance sweep: the ten headline identities at full desk scale.

Each test drives one verification sweep at its documented bounds, prints a
single pass/fail line, and asserts that every cell passed exactly (all
arithmetic is exact, so there is no tolerance anywhere).
"""

from macpieri import verify


def _report(num, label, cells):
    bad = [c for c in cells if c["status"] != "pass"]
    line = "criterion %02d (%s): %s" % (num, label, "FAIL" if bad else "PASS")
    print(line, flush=True)
    assert cells, "empty sweep for criterion %d" % num
    assert not bad, "%s -- first failure: %r" % (line, bad[0])


def test_criterion_01_dual_oracle():
    cells = verify.check_dual_oracle(max_size=6, max_vars=4)
    _report(1, "dual oracle agreement", cells)


def test_criterion_02_pieri_oracle():
    cells = verify.check_pieri_oracle(max_size=5, max_r=3, ns=(1, 2, 3))
    _report(2, "row expansion vs product oracle", cells)


def test_criterion_03_reduction_chain():
    cells = verify.check_reduction_chain(max_n=4, max_exp=3, max_r=3, max_theta=3)
    _report(3, "coefficient reduction chain and relabelling", cells)


def test_criterion_04_recurrence_reconstruction():
    cells = verify.check_recurrence_reconstruction(max_size=6, ns=(2, 3))
    _report(4, "recurrence reconstructs P", cells)


def test_criterion_05_shifted_agreement():
    cells = verify.check_shifted_agreement(max_size=6, ns=(2, 3))
    _report(5, "shifted and self-contained expansions agree", cells)


def test_criterion_06_last_slot_form():
    cells = verify.check_last_slot_form(max_size=6, ns=(2, 3))
    _report(6, "last-slot explicit form and normalization", cells)


def test_criterion_07_rank_two_closed_forms():
    cells = verify.check_rank_two_closed_forms(max_part=4, max_theta=4)
    _report(7, "rank-two closed forms", cells)


def test_criterion_08_rank_three_identities():
    cells = verify.check_rank_three_identities(max_ij=3, max_r=3, max_m=3)
    _report(8, "rank-three determinant and ratio identities", cells)


def test_criterion_09_matrix_inverse():
    cells = verify.check_matrix_inverse(
        box_hi=4, max_r=3, trials=5, rng_seed=0, trial_box=2
    )
    _report(9, "multidimensional matrix inversion", cells)


def test_criterion_10_schur_degeneration():
    cells = verify.check_schur_degeneration(max_size=5, max_r=3, ns=(1, 2, 3))
    _report(10, "Schur degeneration", cells)
