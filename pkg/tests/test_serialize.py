import json

import pytest

from dgsep import serialize as ser
from dgsep.algebra import same_presentation, validate_dg
from dgsep.constructions import validate_extension
from dgsep.demos import catalog, resolve
from dgsep.errors import FormatError
from dgsep.fields import GF, QQ
from dgsep.modules import validate_ses

ALGEBRAS = [d.name for d in catalog() if d.kind == "algebra"]
EXTENSIONS = [d.name for d in catalog() if d.kind == "extension" and d.build is not None]
SEQUENCES = [d.name for d in catalog() if d.kind == "sequence"]


def _roundtrip(data):
    return json.loads(json.dumps(data))


@pytest.mark.parametrize("name", ALGEBRAS)
def test_algebra_roundtrip(name):
    A = resolve(name).build()
    B = ser.algebra_from_json(_roundtrip(ser.algebra_to_json(A)))
    assert same_presentation(A, B)
    assert str(validate_dg(A)) == str(validate_dg(B))


@pytest.mark.parametrize("name", EXTENSIONS)
def test_extension_roundtrip(name):
    e = resolve(name).build()
    f = ser.extension_from_json(_roundtrip(ser.extension_to_json(e)))
    assert same_presentation(e.source, f.source) and same_presentation(e.target, f.target)
    assert e.images == f.images and e.left_basis == f.left_basis
    assert validate_extension(f).passed


@pytest.mark.parametrize("name", SEQUENCES)
def test_sequence_roundtrip(name):
    _, s = resolve(name).build()
    t = ser.ses_from_json(_roundtrip(ser.ses_to_json(s)))
    assert str(validate_ses(s)) == str(validate_ses(t))


def test_terms_accept_residues_and_fractions():
    assert ser.terms_from_json(GF(5), [["a", 0, 3], ["a", 0, 1, 2]]) == {("a", 0): (3 + 3) % 5}
    assert ser.terms_from_json(QQ, [["a", 1, "1/3"]]) == {("a", 1): QQ.div(1, 3)}


@pytest.mark.parametrize("bad", [
    {"field": "R"},
    {"field": "Fp"},
    {"field": "Fp", "p": 4},
    {"field": "Q", "basis": [{"label": "1"}], "unit": [["1", 0, 1, 1]]},
    {"field": "Q", "basis": [{"label": "1", "degree": 0}], "unit": [["2", 0, 1, 1]]},
    {"field": "Q", "basis": [{"label": "1", "degree": 0}], "unit": [["1", 0.5, 1, 1]]},
    {"construct": "dual_numbers"},
    {"construct": "tensor", "left": {"construct": "ground", "field": "Q"}},
    {"construct": "nope", "field": "Q"},
])
def test_malformed_algebras(bad):
    with pytest.raises(FormatError):
        ser.algebra_from_json(bad)


def test_recipes():
    assert validate_dg(ser.algebra_from_json({"construct": "twisted_laurent", "p": 2, "k": 2,
                                              "automorphism": "frobenius", "generator_degree": 2})).passed
    A = ser.algebra_from_json({"construct": "acyclic_division",
                               "cycles": {"construct": "laurent", "field": "Fp", "p": 5, "degree": 2},
                               "w": [["1", -1, 1]]})
    assert validate_dg(A).passed
    T = ser.algebra_from_json({"construct": "tensor", "left": {"construct": "dual_numbers", "field": "Fp", "p": 3},
                               "right": {"construct": "finite_field", "p": 3, "k": 2}})
    assert validate_dg(T).passed


def test_results_serialize():
    from dgsep.separability import check_main_theorem, find_casimir
    from dgsep.modules import find_dg_splitting
    for e in ("laurent F2 3", "dual-numbers-over-Q"):
        json.dumps(ser.result_to_json(find_casimir(resolve(e).build())))
    json.dumps(ser.result_to_json(check_main_theorem(resolve("laurent F3 2").build())))
    ext, s = resolve("ses truncated Q nonsplit").build()
    assert ser.result_to_json(find_dg_splitting(s))["verdict"] == "NOT_SPLIT"
    blocks = ser.result_to_json(find_dg_splitting(s, ext))["sigma"]
    assert blocks
