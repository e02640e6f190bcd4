"""JSON input and output.

A term is ``[label, exponent, numerator, denominator]``; over F_p the last two
may be replaced by a single residue. Algebras either list their structure
constants or name a built-in recipe under ``"construct"``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Dict, List, Mapping

from .algebra import DgAlgebra, GradedAlgebra, as_dg
from .constructions import (AcyclicDivisionSpec, DgExtension, TwistedLaurentSpec, acyclic_division_from_cycles,
                            base_extension, dual_numbers, finite_field, frobenius, ground, identity_extension,
                            laurent, laurent_pair, make_extension, scalar_extension, tensor_product,
                            truncated_polynomial, twisted_laurent)
from .errors import FormatError
from .fields import QQ, Field, GF
from .graded import GradedBasis, Vector
from .modules import (DgModule, ModuleMap, ShortExactSequence, direct_sum, free_module, split_sequence,
                      submodule_sequence, summand_maps)
from .report import Report


# -- scalars and vectors ------------------------------------------------------------------

def field_from_json(obj: Mapping) -> Field:
    kind = obj.get("field")
    if kind == "Q":
        return QQ
    if kind == "Fp":
        if "p" not in obj:
            raise FormatError('prime field needs "p"')
        try:
            return GF(int(obj["p"]))
        except ValueError as exc:
            raise FormatError(str(exc)) from None
    raise FormatError(f"unknown field {kind!r}")


def field_to_json(F: Field) -> Dict[str, Any]:
    return {"field": "Q"} if F.characteristic == 0 else {"field": "Fp", "p": F.characteristic}


def scalar_from_json(F: Field, num, den=1):
    try:
        if isinstance(num, str):
            q = Fraction(num) / Fraction(den)
        else:
            q = Fraction(int(num), int(den))
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise FormatError(f"bad scalar {num!r}/{den!r}: {exc}") from None
    if F.characteristic == 0:
        return q
    return F.div(F(q.numerator), F(q.denominator))


def scalar_to_json(F: Field, c) -> List[int]:
    if F.characteristic == 0:
        c = Fraction(c)
        return [c.numerator, c.denominator]
    return [int(c), 1]


def terms_from_json(F: Field, terms) -> Vector:
    if not isinstance(terms, list):
        raise FormatError(f"terms must be a list, got {terms!r}")
    out: Vector = {}
    for t in terms:
        if not isinstance(t, list) or len(t) not in (3, 4) or not isinstance(t[0], str):
            raise FormatError(f"malformed term {t!r}")
        if not isinstance(t[1], int):
            raise FormatError(f"exponent must be an integer in {t!r}")
        c = scalar_from_json(F, *t[2:])
        key = (t[0], t[1])
        out[key] = F.add(out.get(key, F.zero), c)
    return {k: c for k, c in out.items() if c != 0}


def terms_to_json(F: Field, v: Mapping) -> List[list]:
    return [[lab, e] + scalar_to_json(F, c) for (lab, e), c in sorted(v.items(), key=lambda kv: (str(kv[0][0]), kv[0][1]))]


def basis_from_json(obj: Mapping, key="basis") -> GradedBasis:
    items = obj.get(key)
    if not isinstance(items, list):
        raise FormatError(f'"{key}" must be a list of {{label, degree}}')
    pairs = []
    for it in items:
        if not isinstance(it, dict) or "label" not in it or "degree" not in it:
            raise FormatError(f"malformed basis entry {it!r}")
        pairs.append((str(it["label"]), int(it["degree"])))
    period = obj.get("period_unit")
    g = None
    if period is not None:
        g = int(period["degree"] if isinstance(period, dict) else period)
    try:
        return GradedBasis.of(pairs, g)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def basis_to_json(B: GradedBasis) -> Dict[str, Any]:
    out: Dict[str, Any] = {"basis": [{"label": l, "degree": d} for l, d in zip(B.labels, B.degrees)]}
    if B.period is not None:
        out["period_unit"] = {"degree": B.period}
    return out


def _label_map(F: Field, obj, what: str) -> Dict[str, Vector]:
    """``{label: terms}`` or ``[[label, terms], ...]``."""
    if obj is None:
        return {}
    if isinstance(obj, dict):
        return {str(k): terms_from_json(F, v) for k, v in obj.items()}
    if isinstance(obj, list):
        out = {}
        for it in obj:
            if not isinstance(it, list) or len(it) != 2:
                raise FormatError(f"malformed {what} entry {it!r}")
            out[str(it[0])] = terms_from_json(F, it[1])
        return out
    raise FormatError(f"malformed {what}")


# -- algebras --------------------------------------------------------------------------------

def algebra_from_json(obj: Mapping) -> DgAlgebra:
    if not isinstance(obj, dict):
        raise FormatError("algebra description must be a JSON object")
    if "construct" in obj:
        return _construct_algebra(obj)
    F = field_from_json(obj)
    B = basis_from_json(obj)
    prods = {}
    for it in obj.get("products", []):
        if not isinstance(it, list) or len(it) != 3:
            raise FormatError(f"malformed product entry {it!r}")
        prods[(str(it[0]), str(it[1]))] = terms_from_json(F, it[2])
    if "unit" not in obj:
        raise FormatError('missing "unit"')
    alg = GradedAlgebra(F, B, prods, terms_from_json(F, obj["unit"]), name=obj.get("name", ""))
    return DgAlgebra(alg, _label_map(F, obj.get("differential"), "differential"))


def algebra_to_json(obj) -> Dict[str, Any]:
    dg = as_dg(obj)
    A, F = dg.algebra, dg.field
    out: Dict[str, Any] = {"name": A.name, **field_to_json(F), **basis_to_json(A.basis)}
    out["products"] = [[i, j, terms_to_json(F, v)] for (i, j), v in A.products.items()]
    out["unit"] = terms_to_json(F, A.unit)
    out["differential"] = {l: terms_to_json(F, v) for l, v in dg.differential.items()}
    return out


def _construct_algebra(obj: Mapping) -> DgAlgebra:
    kind = obj["construct"]
    if kind == "finite_field":
        return as_dg(finite_field(int(obj["p"]), int(obj.get("k", 2))))
    F = field_from_json(obj) if "field" in obj else None
    if F is None and kind in ("ground", "dual_numbers", "truncated_polynomial", "laurent"):
        raise FormatError(f'recipe {kind!r} needs "field"')
    if kind == "ground":
        return ground(F)
    if kind == "dual_numbers":
        return dual_numbers(F)
    if kind == "truncated_polynomial":
        return truncated_polynomial(F, int(obj.get("degree", -1)))
    if kind == "laurent":
        return as_dg(laurent(F, int(obj["degree"])))
    if kind == "twisted_laurent":
        k = int(obj.get("k", 1))
        if k > 1:
            R = finite_field(int(obj["p"]), k)
        else:
            R = F if F is not None else GF(int(obj["p"]))
        auto = obj.get("automorphism", "identity")
        if auto == "frobenius" and k > 1:
            phi, m = frobenius(R), int(obj.get("order", k))
        elif auto == "identity":
            phi, m = None, 1
        else:
            raise FormatError(f"unknown automorphism {auto!r}")
        return as_dg(twisted_laurent(TwistedLaurentSpec(R, int(obj["generator_degree"]), phi, m)))
    if kind == "acyclic_division":
        C = algebra_from_json(obj["cycles"]).algebra
        Fc = C.field
        spec = AcyclicDivisionSpec(C, _label_map(Fc, obj.get("derivation"), "derivation") or None,
                                   terms_from_json(Fc, obj.get("w", [])), name=obj.get("name", ""))
        return acyclic_division_from_cycles(spec)
    if kind == "tensor":
        if "left" not in obj or "right" not in obj:
            raise FormatError('recipe "tensor" needs "left" and "right"')
        return tensor_product(algebra_from_json(obj["left"]), algebra_from_json(obj["right"]), obj.get("name", ""))
    raise FormatError(f"unknown algebra recipe {kind!r}")


# -- extensions ------------------------------------------------------------------------------

def extension_from_json(obj: Mapping) -> DgExtension:
    if not isinstance(obj, dict):
        raise FormatError("extension description must be a JSON object")
    kind = obj.get("construct")
    if kind == "laurent_pair":
        return laurent_pair(field_from_json(obj), int(obj["n"]), int(obj.get("degree", 2)),
                            bool(obj.get("acyclic", False)))
    if kind == "base_extension":
        return base_extension(algebra_from_json(obj["target"]))
    if kind == "scalar_extension":
        return scalar_extension(algebra_from_json(obj["source"]), int(obj.get("k", 2)))
    if kind == "identity":
        return identity_extension(algebra_from_json(obj["algebra"]))
    if kind is not None:
        raise FormatError(f"unknown extension recipe {kind!r}")
    for key in ("source", "target", "map"):
        if key not in obj:
            raise FormatError(f'extension needs "{key}"')
    A, B = algebra_from_json(obj["source"]), algebra_from_json(obj["target"])
    F = A.field
    images = _label_map(F, obj["map"], "map")
    lb = [terms_from_json(F, t) for t in obj["left_basis"]] if "left_basis" in obj else None
    z = terms_from_json(F, obj["period_image"]) if "period_image" in obj else None
    return make_extension(A, B, images, lb, z, name=obj.get("name", ""))


def extension_to_json(ext: DgExtension) -> Dict[str, Any]:
    F = ext.field
    out = {"name": ext.name, "source": algebra_to_json(ext.source), "target": algebra_to_json(ext.target),
           "map": {l: terms_to_json(F, v) for l, v in ext.images.items()},
           "left_basis": [terms_to_json(F, m) for m in ext.left_basis]}
    if ext.period_image is not None:
        out["period_image"] = terms_to_json(F, ext.period_image)
    return out


# -- modules and sequences -------------------------------------------------------------------

def module_from_json(obj: Mapping, algebra: DgAlgebra = None) -> DgModule:
    if not isinstance(obj, dict):
        raise FormatError("module description must be a JSON object")
    A = algebra_from_json(obj["algebra"]) if "algebra" in obj else algebra
    if A is None:
        raise FormatError('module needs "algebra"')
    if obj.get("construct") == "free":
        return free_module(A, [int(s) for s in obj.get("shifts", [0])], name=obj.get("name", ""))
    if obj.get("construct") == "direct_sum":
        return direct_sum(*(module_from_json(m, A) for m in obj["summands"]), name=obj.get("name", ""))
    F = A.field
    B = basis_from_json({"basis": obj.get("basis"), "period_unit": A.period})
    action = {}
    for it in obj.get("action", []):
        if not isinstance(it, list) or len(it) != 3:
            raise FormatError(f"malformed action entry {it!r}")
        action[(str(it[0]), str(it[1]))] = terms_from_json(F, it[2])
    return DgModule(A, B, action, _label_map(F, obj.get("delta"), "delta"), name=obj.get("name", ""))


def module_to_json(M: DgModule, with_algebra: bool = True) -> Dict[str, Any]:
    F = M.field
    out: Dict[str, Any] = {"name": M.name}
    if with_algebra:
        out["algebra"] = algebra_to_json(M.algebra)
    out["basis"] = basis_to_json(M.basis)["basis"]
    out["action"] = [[a, m, terms_to_json(F, v)] for (a, m), v in M.action.items()]
    out["delta"] = {m: terms_to_json(F, v) for m, v in M.delta.items() if v}
    return out


def ses_from_json(obj: Mapping, algebra: DgAlgebra = None) -> ShortExactSequence:
    if not isinstance(obj, dict):
        raise FormatError("sequence description must be a JSON object")
    A = algebra_from_json(obj["algebra"]) if "algebra" in obj else algebra
    if A is None:
        raise FormatError('sequence needs "algebra"')
    kind = obj.get("construct")
    if kind == "split":
        return split_sequence(module_from_json(obj["L"], A), module_from_json(obj["N"], A))
    if kind == "quotient":
        M = module_from_json(obj["M"], A)
        gens = [terms_from_json(A.field, g) for g in obj["generators"]]
        return submodule_sequence(M, gens)
    if kind is not None:
        raise FormatError(f"unknown sequence recipe {kind!r}")
    L, M, N = (module_from_json(obj[k], A) for k in ("L", "M", "N"))
    F = A.field
    f = ModuleMap(L, M, _label_map(F, obj["f"], "f"))
    g = ModuleMap(M, N, _label_map(F, obj["g"], "g"))
    return ShortExactSequence(L, M, N, f, g, name=obj.get("name", ""))


def ses_to_json(s: ShortExactSequence) -> Dict[str, Any]:
    F = s.field
    return {"name": s.name, "algebra": algebra_to_json(s.algebra),
            "L": module_to_json(s.L, False), "M": module_to_json(s.M, False), "N": module_to_json(s.N, False),
            "f": {l: terms_to_json(F, v) for l, v in s.f.images.items()},
            "g": {l: terms_to_json(F, v) for l, v in s.g.images.items()}}


# -- results ------------------------------------------------------------------------------

def map_blocks_to_json(f: ModuleMap, window) -> Dict[str, Any]:
    F = f.source.field
    blocks = {}
    for n in window:
        M, src, tgt = f.matrix(n)
        if not src:
            continue
        blocks[str(n)] = {"columns": [list(k) for k in src], "rows": [list(k) for k in tgt],
                          "matrix": [[scalar_to_json(F, c) for c in row] for row in M]}
    return blocks


def result_to_json(res) -> Dict[str, Any]:
    """Certificates, transcripts and reports as plain JSON data."""
    from .modules import NoSplitting, Splitting
    from .separability import CasimirCertificate, MainTheoremReport, NotSeparable
    if isinstance(res, Report):
        return res.to_dict()
    if isinstance(res, CasimirCertificate):
        F = res.extension.field
        return {"verdict": res.verdict,
                "omega": [[t, lab, e] + scalar_to_json(F, c) for (t, lab, e), c in res.omega.items()],
                "left_basis": [terms_to_json(F, m) for m in res.extension.left_basis],
                "generators": [name for name, _ in res.generators],
                "justification": res.justification, "checks": res.witnesses.to_dict()}
    if isinstance(res, NotSeparable):
        F = res.extension.field
        return {"verdict": res.verdict, "dimension": res.dimension, "rank": res.rank,
                "augmented_rank": res.augmented_rank,
                "witness": [[str(tag), repr(key)] + scalar_to_json(F, c)
                            for (tag, key), c in zip(res.rows, res.witness) if c != 0]}
    if isinstance(res, Splitting):
        return {"verdict": res.verdict, "base": res.base,
                "sigma": map_blocks_to_json(res.sigma, res.sequence.N.window()),
                "checks": res.report.to_dict()}
    if isinstance(res, NoSplitting):
        F = res.sequence.field
        return {"verdict": res.verdict, "base": res.base, "unknowns": res.unknowns, "rank": res.rank,
                "augmented_rank": res.augmented_rank,
                "witness": [[str(tag), repr(key)] + scalar_to_json(F, c)
                            for (tag, key), c in zip(res.rows, res.witness) if c != 0]}
    if isinstance(res, MainTheoremReport):
        return {"extension": res.extension.name, "branch": res.branch, "predicted": res.predicted,
                "computed": res.computed, "characteristic": res.characteristic,
                "status": "THEOREM_SILENT" if res.silent else ("MISMATCH" if res.mismatch else "MATCH"),
                "details": {k: str(v) for k, v in res.details.items()},
                "certificate": result_to_json(res.result)}
    raise TypeError(f"no JSON form for {type(res).__name__}")


def load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: {exc}") from None
