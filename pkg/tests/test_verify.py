from fractions import Fraction

import pytest

from siegel2.expansion import SiegelExpansion
from siegel2.generators import MonomialSpec
from siegel2.rationals import PrimePower
from siegel2.verify import (
    GENSET_C,
    GENSET_INTEGRAL,
    CoeffMatrix,
    box_indices,
    check_congruence,
    check_vanishing,
    fp_rank,
    matrix_from_forms,
    sharpness_witness,
    sturm_bound,
    verify_identities,
    verify_theorem1_rank,
    weight_monomials,
)


def test_sturm_bound_values():
    assert sturm_bound(10) == 1
    assert sturm_bound(12) == 1
    assert sturm_bound(35) == 3
    assert sturm_bound(83) == 7
    assert sturm_bound(4) == 0
    assert sturm_bound(47) == 4
    assert sturm_bound(10, index_i=2) == 2
    with pytest.raises(ValueError):
        sturm_bound(-2)


def test_sturm_bound_parity_and_monotonicity():
    for k in range(0, 120):
        b = sturm_bound(k)
        assert b == (k // 10 if k % 2 == 0 else (k - 5) // 10)
    evens = [sturm_bound(k) for k in range(0, 120, 2)]
    odds = [sturm_bound(k) for k in range(5, 121, 2)]
    assert evens == sorted(evens) and odds == sorted(odds)


def test_check_vanishing_examples(gens6):
    x10 = gens6["X10"]
    pp = PrimePower(2)
    assert check_vanishing(x10, pp, 0).verdict
    report = check_vanishing(x10, pp, 1)
    assert not report.verdict
    assert ((1, 1, 1), 0) in report.violations
    diff = gens6["X12"] - gens6["X10"]
    assert check_vanishing(diff, pp, 1).verdict


def test_check_vanishing_flags_insufficient_precision(gens6):
    report = check_vanishing(gens6["X10"], PrimePower(2), 9)
    assert report.precision_note and "exceeds precision" in report.precision_note


def test_check_vanishing_higher_powers(gens6):
    x4 = gens6["X4"]
    # every positive-index coefficient of X4 is divisible by 48
    assert check_vanishing(x4 - SiegelExpansion.constant(1, 6, weight=4), PrimePower(2, 4), 6).verdict
    assert check_vanishing(x4 - SiegelExpansion.constant(1, 6, weight=4), PrimePower(3), 6).verdict


def test_check_congruence_examples(gens6):
    one = SiegelExpansion.constant(1, 6)
    assert check_congruence(gens6["X4"], one, PrimePower(2)).verdict
    assert check_congruence(gens6["X12"], gens6["X10"], PrimePower(3)).verdict
    report = check_congruence(gens6["X4"], gens6["X6"], PrimePower(5))
    assert not report.verdict
    for name, exp in gens6.items():
        for p in (2, 3, 5):
            assert check_congruence(exp, exp, PrimePower(p)).verdict, (name, p)


def test_check_congruence_notes_bound_coverage(gens6):
    report = check_congruence(gens6["X12"], gens6["X10"], PrimePower(2))
    assert "weight 12 is 1" in report.precision_note
    assert "covers" in report.precision_note


def test_weight_monomials():
    names = [str(m) for m in weight_monomials(12, GENSET_C)]
    assert sorted(names) == ["X12", "X4^3", "X6^2"]
    assert len(weight_monomials(16, GENSET_C)) == 4
    odd = weight_monomials(35, list(GENSET_C) + ["X35"])
    assert [str(m) for m in odd] == ["X35"]
    assert weight_monomials(2, GENSET_INTEGRAL) == []
    assert weight_monomials(0, GENSET_C) == [MonomialSpec()]
    assert weight_monomials(33, list(GENSET_C) + ["X35"]) == []
    # deterministic ordering
    assert [str(m) for m in weight_monomials(24, GENSET_C)] == [
        str(m) for m in weight_monomials(24, GENSET_C)
    ]


def test_fp_rank_examples(gens6):
    identity = CoeffMatrix(["a", "b", "c"], [0, 1, 2], [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    rank, kernel = fp_rank(identity, 2)
    assert rank == 3 and kernel == []
    indices = box_indices(6)
    rows = matrix_from_forms(
        [("X12", gens6["X12"]), ("X10", gens6["X10"])], indices
    )
    rank, kernel = fp_rank(rows, 2)
    assert rank == 1 and kernel == [(1, 1)]
    zero = CoeffMatrix(["z"], [0, 1], [[0, 0]])
    assert fp_rank(zero, 5) == (0, [(1,)])
    exact_rank, _ = fp_rank(
        CoeffMatrix(["a", "b"], [0, 1], [[Fraction(1, 2), 1], [1, 2]]), None
    )
    assert exact_rank == 1


def test_theorem1_rank_examples(registry):
    report = verify_theorem1_rank(12, 5, 5, registry)
    assert report.passed and report.rank_truncated == 3 == report.rank_full
    assert report.dim_c == 3
    report = verify_theorem1_rank(10, 2, 5, registry)
    assert report.passed and report.rank_full == 2
    assert sorted(report.monomials) == ["X10", "X4*X6"]
    report = verify_theorem1_rank(35, 3, 5, registry)
    assert report.passed and report.rank_full == 1
    assert report.monomials == ["X35"]


def test_theorem1_rank_refuses_uncovered_cases(registry):
    for k, p in ((20, 2), (18, 3), (53, 2), (33, 5)):
        report = verify_theorem1_rank(k, p, 5, registry)
        assert not report.certifiable
        assert not report.passed
        assert "not certifiable" in report.render()
    # weight 37 is covered but empty: the zero space passes vacuously
    report = verify_theorem1_rank(37, 5, 5, registry)
    assert report.certifiable and report.passed and report.dim_c == 0
    with pytest.raises(ValueError):
        verify_theorem1_rank(12, 4, 5, registry)
    with pytest.raises(ValueError):
        verify_theorem1_rank(40, 5, 3, registry)


def test_truncation_below_bound_is_not_injective(registry):
    """The witness family certifies tightness: one box smaller loses rank."""
    for k, p in ((10, 2), (22, 5), (12, 3)):
        b = sturm_bound(k)
        monomials = weight_monomials(k, GENSET_C if p >= 5 else GENSET_INTEGRAL)
        labelled = [
            (str(spec), registry.monomial(spec, 5).reduce_mod(p))
            for spec in monomials
        ]
        full = matrix_from_forms(labelled, box_indices(5))
        small = full.column_subset(lambda key: key[0] <= b - 1 and key[2] <= b - 1)
        rank_small, _ = fp_rank(small, p)
        rank_full, _ = fp_rank(full, p)
        assert rank_small < rank_full, (k, p)


def test_sharpness_witness_examples(registry):
    spec, report = sharpness_witness(10, 3, registry)
    assert str(spec) == "X10" and report.verdict
    spec, report = sharpness_witness(22, 5, registry)
    assert str(spec) == "X10*X12" and report.verdict
    spec, report = sharpness_witness(47, 2, registry)
    assert str(spec) == "X12*X35" and report.verdict
    spec, report = sharpness_witness(4, 7, registry)
    assert str(spec) == "X4" and report.verdict
    spec, report = sharpness_witness(45, 3, registry)
    assert str(spec) == "X10*X35" and report.verdict


def test_sharpness_witness_rejects_empty_spaces(registry):
    for k in (0, 2, 33, 37):
        with pytest.raises(ValueError):
            sharpness_witness(k, 2, registry)
    with pytest.raises(ValueError):
        sharpness_witness(10, 6, registry)


def test_verify_identities_unknown_suite(registry):
    with pytest.raises(ValueError):
        verify_identities("lemma99", registry=registry)


def test_reports_are_deterministic(registry):
    a = verify_identities("witt-images", precision=4, registry=registry).render()
    b = verify_identities("witt-images", precision=4, registry=registry).render()
    assert a == b
    assert a.endswith("RESULT witt-images 9/9")


def test_prop1_suite(registry):
    report = verify_identities("prop1-w12", registry=registry)
    assert report.passed
    assert any("kernel" in line[1] for line in report.lines)
