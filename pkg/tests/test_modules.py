import random

import pytest

from dgsep.algebra import cycles
from dgsep.constructions import (base_extension, dual_numbers, finite_field, laurent, laurent_pair,
                                 scalar_extension, truncated_polynomial)
from dgsep.demos import lifting_instances, resolve
from dgsep.errors import CertificateInvalid, FormatError
from dgsep.fields import GF, QQ
from dgsep.modules import (NOT_SPLIT, SPLIT, DgModule, ModuleMap, check_module_map, cycles_module,
                           direct_sum, find_dg_splitting, find_isomorphism, free_module, hom_complex,
                           identity_map, induce_from_cycles, lift_splitting, module_homology,
                           random_cycle_module, rebase_module, restrict_module, restrict_ses, retraction,
                           split_sequence, submodule_sequence, validate_hom, validate_module, validate_ses,
                           verify_splitting)
from dgsep.separability import find_casimir


def test_free_module_validates():
    for dg in (dual_numbers(QQ), laurent(GF(3), 2), finite_field(2, 2)):
        M = free_module(dg, [0, 1])
        assert validate_module(M).passed


def test_free_module_over_dual_numbers_is_acyclic():
    assert set(module_homology(free_module(dual_numbers(QQ)))) and \
        all(v == 0 for v in module_homology(free_module(dual_numbers(QQ))).values())


def test_broken_delta_detected():
    A = dual_numbers(QQ)
    M = free_module(A)
    bad = DgModule(A, M.basis, M.action, {}, name="no delta")
    rep = validate_module(bad)
    assert not rep["leibniz"].passed


def test_module_period_must_match():
    from dgsep.graded import GradedBasis
    with pytest.raises(FormatError):
        DgModule(laurent(QQ, 2), GradedBasis.of([("m", 0)]), {})


def test_direct_sum_and_identity():
    A = dual_numbers(GF(3))
    S = direct_sum(free_module(A), free_module(A, [2]))
    assert validate_module(S).passed
    assert check_module_map(identity_map(S)).passed


def test_split_sequence_splits():
    A = dual_numbers(GF(3))
    s = split_sequence(free_module(A), free_module(A, [1]))
    assert validate_ses(s).passed
    res = find_dg_splitting(s)
    assert res.verdict == SPLIT
    assert res.report.passed
    r = retraction(s, res)
    assert r(s.f(s.L.e(s.L.labels[0]))) == s.L.e(s.L.labels[0])


def test_truncated_polynomial_quotient_does_not_split():
    A = truncated_polynomial(QQ)
    s = submodule_sequence(free_module(A), [{("X", 0): 1}])
    assert validate_ses(s).passed
    res = find_dg_splitting(s)
    assert res.verdict == NOT_SPLIT
    assert "infeasibility witness" in res.transcript()


def test_nonsplit_over_target_but_split_over_q():
    ext, s = resolve("ses truncated Q nonsplit").build()
    assert find_dg_splitting(s).verdict == NOT_SPLIT
    assert find_dg_splitting(s, ext).verdict == SPLIT


def test_restriction_along_laurent_pair():
    ext = laurent_pair(GF(2), 3)
    M = free_module(ext.target)
    r = restrict_module(ext, M)
    assert validate_module(r.module).passed
    assert len(r.module.labels) == 3
    v = {("1", 4): 1}
    assert r.up(r.down(v)) == v


@pytest.mark.parametrize("name", [n for names in lifting_instances().values() for n in names])
def test_lift_splitting(name):
    ext, s = resolve(name).build()
    assert validate_ses(s).passed
    rs = restrict_ses(ext, s)
    assert validate_ses(rs.sequence).passed
    cert = find_casimir(ext)
    rho = find_dg_splitting(s, ext)
    assert rho.split and find_dg_splitting(s).split
    tau = lift_splitting(ext, cert, s, rho)
    assert tau.report.passed
    assert verify_splitting(s, tau.sigma).passed


def test_lift_rejects_bad_certificate():
    ext, s = resolve("ses F4 direct-sum").build()
    cert = find_casimir(ext)
    cert.omega = {}
    with pytest.raises(CertificateInvalid):
        lift_splitting(ext, cert, s, find_dg_splitting(s, ext))


def test_cycles_of_free_module_over_itself():
    A = dual_numbers(QQ)
    mc = cycles_module(free_module(A))
    assert len(mc.module.labels) == 1
    assert validate_module(mc.module).passed


def test_induce_one_dimensional():
    A = dual_numbers(QQ)
    cyc = cycles(A)
    N = free_module(cyc.dg)
    ind = induce_from_cycles(cyc, N)
    assert len(ind.module.labels) == 2
    assert validate_module(ind.module).passed
    assert all(v == 0 for v in module_homology(ind.module).values())


def test_induce_requires_cycle_module():
    A = dual_numbers(QQ)
    with pytest.raises(FormatError):
        induce_from_cycles(cycles(A), free_module(A))


def test_round_trip_over_acyclic_division():
    dg = resolve("acyclic-division F3 w=0").build()
    cyc = cycles(dg)
    rng = random.Random(7)
    for _ in range(3):
        N = random_cycle_module(cyc.dg, rng, 2)
        back = cycles_module(induce_from_cycles(cyc, N).module, cyc).module
        assert find_isomorphism(N, back) is not None


def test_rebase_is_isomorphic():
    M = free_module(dual_numbers(GF(5)), [0, 0, 1])
    R, _ = rebase_module(M, random.Random(1))
    assert validate_module(R).passed
    iso = find_isomorphism(M, R)
    assert iso is not None and iso.report.passed


def test_hom_complex_squares_to_zero():
    A = dual_numbers(GF(3))
    M = free_module(A, [0, 1])
    H = hom_complex(M, M)
    assert sum(H.dimensions().values()) > 0
    assert validate_hom(H).passed


def test_hom_complex_signs_with_odd_maps():
    A = dual_numbers(QQ)
    H = hom_complex(free_module(A), free_module(A, [1]))
    assert validate_hom(H).passed
    assert any(k % 2 for k, v in H.dimensions().items() if v)


def test_diagonal_sequence_is_not_presented_as_a_sum():
    ext, s = resolve("ses dual F3->F9 diagonal").build()
    assert validate_ses(s).passed
    assert any(len(v) > 1 for v in s.f.images.values())
    assert find_dg_splitting(s).split == find_dg_splitting(s, ext).split
