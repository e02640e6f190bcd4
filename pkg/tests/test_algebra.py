import pytest

from dgsep.algebra import (DgAlgebra, GradedAlgebra, cycles, homology, is_graded_commutative, opposite, refold,
                           same_presentation, validate_algebra, validate_differential, validate_dg)
from dgsep.constructions import (AcyclicDivisionSpec, TwistedLaurentSpec, acyclic_division_from_cycles,
                                 dual_numbers, finite_field, frobenius, laurent, truncated_polynomial,
                                 twisted_laurent)
from dgsep.errors import FormatError
from dgsep.fields import GF, QQ
from dgsep.graded import GradedBasis


def test_dual_numbers_validate():
    for F in (QQ, GF(2), GF(3)):
        rep = validate_dg(dual_numbers(F))
        assert rep.passed, str(rep)


def test_laurent_has_period():
    A = laurent(GF(5), 2)
    rep = validate_algebra(A)
    assert rep.passed
    assert A.period == 2
    assert rep["period-unit-central"].passed


def test_square_to_one_in_odd_degree_fails_homogeneity():
    F = QQ
    B = GradedBasis.of([("1", 0), ("X", 1)])
    A = GradedAlgebra(F, B, {("1", "1"): {("1", 0): 1}, ("1", "X"): {("X", 0): 1},
                             ("X", "1"): {("X", 0): 1}, ("X", "X"): {("1", 0): 1}}, {("1", 0): 1})
    rep = validate_algebra(A)
    assert not rep["degree-homogeneity"].passed


def test_differential_of_wrong_degree_detected():
    F = QQ
    B = GradedBasis.of([("1", 0), ("X", 1)])
    A = GradedAlgebra(F, B, {("1", "1"): {("1", 0): 1}, ("1", "X"): {("X", 0): 1},
                             ("X", "1"): {("X", 0): 1}}, {("1", 0): 1})
    rep = validate_differential(DgAlgebra(A, {"X": {("1", 0): 1}}))
    assert not rep["degree+1"].passed


def test_unknown_label_is_format_error():
    B = GradedBasis.of([("1", 0)])
    with pytest.raises(FormatError):
        GradedAlgebra(QQ, B, {("1", "Y"): {}}, {("1", 0): 1})


def test_dual_numbers_acyclic():
    h = homology(dual_numbers(QQ))
    assert h.acyclic


def test_truncated_polynomial_homology_is_everything():
    h = homology(truncated_polynomial(QQ))
    assert sum(h.dims.values()) == 2


def test_acyclic_division_homology_vanishes():
    C = laurent(GF(5), 2)
    for w in ({}, {("1", -1): 1}):
        dg = acyclic_division_from_cycles(AcyclicDivisionSpec(C, w=w))
        assert validate_dg(dg).passed
        assert homology(dg).acyclic


def test_cycles_of_dual_numbers_are_ground_field():
    cyc = cycles(dual_numbers(GF(3)))
    assert cyc.algebra.labels == ("1",)


def test_cycles_of_acyclic_division_match_c():
    C = laurent(GF(5), 2)
    dg = acyclic_division_from_cycles(AcyclicDivisionSpec(C))
    cyc = cycles(dg)
    assert cyc.algebra.basis.period == 2
    assert [cyc.algebra.basis.degree(l) for l in cyc.algebra.labels] == [0]
    assert validate_algebra(cyc.algebra).passed


def test_opposite_of_commutative_is_itself():
    dg = dual_numbers(QQ)
    assert is_graded_commutative(dg)
    assert same_presentation(opposite(dg), dg)


def test_twisted_laurent_opposite_twice():
    R = finite_field(2, 2)
    tl = twisted_laurent(TwistedLaurentSpec(R, 2, frobenius(R), 2))
    assert not is_graded_commutative(tl)
    assert same_presentation(opposite(opposite(tl)), tl)
    assert not same_presentation(opposite(tl), tl)


def test_odd_period_opposite_is_refolded():
    A = laurent(GF(3), 1)
    op = opposite(A)
    assert op.period == 2
    assert validate_algebra(op).passed
    # X odd and X^2 != 0 in characteristic 3, so the opposite differs from A
    assert not is_graded_commutative(A)
    assert same_presentation(opposite(op), refold(A, 2))


def test_refold_validates():
    A = laurent(GF(2), 2)
    R = refold(A, 3)
    assert R.period == 6
    assert validate_algebra(R).passed
