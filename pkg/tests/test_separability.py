import pytest

from dgsep.algebra import cycles
from dgsep.constructions import (AcyclicDivisionSpec, acyclic_division_from_cycles, base_extension,
                                 cycle_inclusion, dual_numbers, finite_field, identity_extension, laurent,
                                 laurent_pair, tensor_over_source, truncated_polynomial)
from dgsep.demos import main_theorem_instances, resolve
from dgsep.errors import HypothesisUnverified, WindowTooSmall
from dgsep.fields import GF, QQ
from dgsep.linalg import check_witness
from dgsep.separability import (FIELD_DEGREE_0, LAURENT_OVER_FIELD, NOT_GR_DIVISION, NOT_SEPARABLE, SEPARABLE,
                                THEOREM_SILENT, check_main_theorem, classify_gr_division,
                                cycle_tensor_inclusion, find_casimir, induced_cycle_extension, is_dg_division,
                                is_separable, regularity_report, verify_casimir)


def test_identity_extension_omega_is_one_tensor_one():
    ext = identity_extension(dual_numbers(QQ))
    cert = find_casimir(ext)
    T = tensor_over_source(ext)
    assert cert.verdict == SEPARABLE
    assert cert.omega == T.pure(ext.target.unit, ext.target.unit)


@pytest.mark.parametrize("F", [QQ, GF(2), GF(3), GF(5)])
def test_dual_numbers_not_separable(F):
    res = find_casimir(base_extension(dual_numbers(F)))
    assert res.verdict == NOT_SEPARABLE
    assert res.dimension == 1
    assert "mu(omega)=1" in res.transcript()


def test_not_separable_witness_checks_out():
    from dgsep.separability import _casimir_system, default_generators
    ext = base_extension(dual_numbers(GF(3)))
    res = find_casimir(ext)
    A, b = _casimir_system(tensor_over_source(ext), default_generators(ext)).matrix()
    assert check_witness(ext.field, A, b, res.witness, res.dimension)


def test_one_tensor_one_fails_centrality_for_x():
    ext = base_extension(dual_numbers(QQ))
    T = tensor_over_source(ext)
    rep = verify_casimir(ext, T.pure(ext.target.unit, ext.target.unit))
    assert rep["mu(omega)=1"].passed
    assert not rep["X*omega=omega*X"].passed


def test_zero_is_not_a_casimir_element():
    rep = verify_casimir(laurent_pair(GF(2), 3), {})
    assert not rep["mu(omega)=1"].passed


def test_laurent_f2_three_certificate():
    ext = laurent_pair(GF(2), 3)
    cert = find_casimir(ext)
    T = tensor_over_source(ext)
    expected = {}
    for i in range(3):
        for k, c in T.pure({("1", i): 1}, {("1", -i): 1}).items():
            expected[k] = (expected.get(k, 0) + c) % 2
    assert cert.omega == {k: c for k, c in expected.items() if c}
    assert cert.witnesses.passed


def test_field_extension_f2_f4():
    cert = find_casimir(base_extension(finite_field(2, 2)))
    assert cert.separable
    assert cert.witnesses.passed


def test_truncated_polynomial_not_separable_over_q():
    assert not is_separable(base_extension(truncated_polynomial(QQ)))


def test_classify_laurent():
    cls = classify_gr_division(laurent(GF(5), 2))
    assert cls.verdict == LAURENT_OVER_FIELD
    assert cls.degree_step == 2


def test_classify_ground_field():
    assert classify_gr_division(dual_numbers(QQ).algebra.__class__(
        QQ, cycles(dual_numbers(QQ)).algebra.basis, cycles(dual_numbers(QQ)).algebra.products,
        cycles(dual_numbers(QQ)).algebra.unit)).verdict == FIELD_DEGREE_0


def test_classify_truncated_polynomial():
    assert classify_gr_division(truncated_polynomial(QQ)).verdict == NOT_GR_DIVISION


def test_classify_finite_field():
    cls = classify_gr_division(finite_field(3, 2))
    assert cls.verdict == FIELD_DEGREE_0
    assert cls.base_field == "F9"


def test_classify_window_too_small():
    with pytest.raises(WindowTooSmall):
        classify_gr_division(laurent(GF(5), 2), range(0, 2))


def test_classify_refuses_noncommutative():
    with pytest.raises(HypothesisUnverified):
        classify_gr_division(resolve("twisted-laurent F4").build())


def test_is_dg_division_examples():
    assert is_dg_division(dual_numbers(QQ)).is_division
    assert not is_dg_division(truncated_polynomial(QQ)).is_division
    for w in ("0", "Xinv"):
        res = is_dg_division(resolve(f"acyclic-division F5 w={w}").build())
        assert res.is_division and res.acyclic


def test_regularity_holds_for_noncommutative_acyclic_division():
    dg = resolve("acyclic-division F3 w=Xinv").build()
    assert regularity_report(dg).passed


def test_induced_cycle_extension_of_dual_numbers():
    ice = induced_cycle_extension(base_extension(dual_numbers(QQ)))
    assert ice.report.passed
    assert ice.extension.target.labels == ("1",)


def test_upsilon_injective_and_even_image():
    ext = laurent_pair(GF(5), 3, acyclic=True)
    inc = cycle_tensor_inclusion(ext)
    assert inc.injective()
    cert = find_casimir(ext)
    assert inc.contains(cert.omega)


@pytest.mark.parametrize("p,n", [(3, 2), (5, 3), (5, 1)])
def test_upsilon_image_is_the_even_degree_part(p, n):
    inc = cycle_tensor_inclusion(laurent_pair(GF(p), n, acyclic=True))
    T = inc.tensor
    for k in T.window():
        assert inc.image_rank(k) == (len(T.component(k)) if k % 2 == 0 else 0)


def test_main_theorem_prop_examples():
    r = check_main_theorem(laurent_pair(GF(3), 3))
    assert (r.predicted, r.computed) == (NOT_SEPARABLE, NOT_SEPARABLE)
    r = check_main_theorem(resolve("laurent-to-acyclic F3").build())
    assert r.branch == "zero-to-acyclic" and not r.mismatch
    assert r.computed == NOT_SEPARABLE
    r = check_main_theorem(laurent_pair(GF(3), 2, acyclic=True))
    assert r.predicted == SEPARABLE and r.computed == SEPARABLE
    assert r.result.witnesses.passed


def test_main_theorem_characteristic_two_is_silent():
    r = check_main_theorem(resolve("laurent-to-acyclic F2").build())
    assert r.predicted == THEOREM_SILENT
    assert not r.mismatch


def test_main_theorem_needs_dg_division():
    with pytest.raises(HypothesisUnverified):
        check_main_theorem(base_extension(truncated_polynomial(QQ)))


def test_main_theorem_catalog_spans_all_branches():
    branches = {check_main_theorem(resolve(n).build()).branch for n in main_theorem_instances()}
    assert branches == {"zero-differential", "acyclic-to-acyclic", "zero-to-acyclic"}
