import io
import json

import pytest

from dgsep.cli import run

BAD_SQUARE = {"field": "Q", "basis": [{"label": "1", "degree": 0}, {"label": "X", "degree": 1}],
              "products": [["1", "1", [["1", 0, 1, 1]]], ["1", "X", [["X", 0, 1, 1]]],
                           ["X", "1", [["X", 0, 1, 1]]], ["X", "X", [["1", 0, 1, 1]]]],
              "unit": [["1", 0, 1, 1]]}


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def test_separable_dual_numbers():
    code, text = call("separable", "--demo", "dual-numbers-over-Q")
    assert code == 0
    assert text.startswith("NOT_SEPARABLE")
    assert "witness" in text


def test_separable_laurent_json():
    code, text = call("separable", "--demo", "laurent", "F2", "3", "--format", "json")
    assert code == 0
    data = json.loads(text)
    assert data["verdict"] == "SEPARABLE" and len(data["omega"]) == 3


def test_validate_bad_square(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(BAD_SQUARE))
    code, text = call("validate", str(p))
    assert code == 3
    assert "degree-homogeneity" in text


def test_format_errors(tmp_path):
    p = tmp_path / "broken.json"
    p.write_text("{not json")
    assert call("validate", str(p))[0] == 2
    assert call("validate", str(tmp_path / "missing.json"))[0] == 2
    assert call("separable", "--demo", "no-such-demo")[0] == 2
    assert call("frobnicate")[0] == 2
    assert call("separable", "--demo", "dual-numbers Q")[0] == 2


def test_window_too_small():
    code, text = call("grdiv-classify", "--demo", "acyclic-division", "F5", "w=0", "--window", "0", "1")
    assert code == 4
    assert call("grdiv-classify", "--demo", "acyclic-division", "F5", "w=0")[0] == 0
    assert call("grdiv-classify", "--demo", "field", "F2", "F4")[0] == 2


def test_window_insufficient_exit_code(tmp_path):
    p = tmp_path / "laurent.json"
    p.write_text(json.dumps({"construct": "laurent", "field": "Fp", "p": 5, "degree": 2}))
    code, text = call("grdiv-classify", str(p), "--window", "0", "1")
    assert code == 4
    assert call("grdiv-classify", str(p), "--window", "-2", "1")[0] == 0


def test_noncommutative_refused():
    assert call("grdiv-classify", "--demo", "twisted-laurent", "F4")[0] == 3


@pytest.mark.parametrize("argv", [
    ("homology", "--demo", "acyclic-division", "F5", "w=Xinv"),
    ("cycles", "--demo", "acyclic-division", "F3", "w=0"),
    ("dgdiv-check", "--demo", "acyclic-division", "F5", "w=Xinv"),
    ("tensor", "--demo", "laurent", "F3", "2"),
    ("validate", "--demo", "ses", "F4", "diagonal"),
    ("ses-split", "--demo", "ses", "truncated", "Q", "nonsplit"),
    ("lift-split", "--demo", "ses", "laurent", "F2", "3", "twisted-diagonal"),
    ("lift-split", "--demo", "ses", "truncated", "Q", "nonsplit"),
    ("main-theorem", "--demo", "laurent-to-acyclic", "F3"),
    ("equivalence-check", "--demo", "dual-numbers", "F3", "--count", "3", "--seed", "4"),
    ("demo",),
    ("demo", "--demo", "acyclic-division", "F5", "w=Xinv"),
])
def test_commands_complete(argv):
    for fmt in ("text", "json"):
        code, text = call(*argv, "--format", fmt)
        assert code == 0, text
        if fmt == "json":
            json.loads(text)


def test_main_theorem_catalog_has_no_mismatch():
    code, text = call("main-theorem")
    assert code == 0
    assert "mismatches: 0 of" in text
    assert "THEOREM_SILENT" in text


def test_ses_split_reports_both_sides():
    code, text = call("ses-split", "--demo", "ses", "truncated", "Q", "nonsplit")
    assert "split over target: NOT_SPLIT; split over source: SPLIT" in text


def test_demo_output_feeds_back(tmp_path):
    code, text = call("demo", "--demo", "ses", "F4", "diagonal", "--format", "json")
    p = tmp_path / "seq.json"
    p.write_text(text)
    code, out = call("ses-split", str(p))
    assert code == 0 and "split over source: SPLIT" in out


def test_equivalence_check_rejects_non_acyclic():
    assert call("equivalence-check", "--demo", "truncated-polynomial", "Q")[0] == 3
