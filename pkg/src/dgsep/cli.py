"""Command-line front end.

Exit codes: 0 decision completed (whatever the verdict), 2 malformed input,
3 validation failure or unverifiable hypothesis, 4 window too small.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import List, Optional

from . import serialize as ser
from .algebra import cycles, homology, validate_dg
from .constructions import DgExtension, tensor_over_source, validate_extension, validate_tensor
from .demos import catalog, main_theorem_instances, resolve
from .errors import (AutomorphismOrderError, ClosureEscape, ConsistencyError, FormatError, FreenessError,
                     HypothesisUnverified, WindowTooSmall, CertificateInvalid)
from .modules import (ShortExactSequence, cycles_module, find_dg_splitting, find_isomorphism, induce_from_cycles,
                      lift_splitting, random_cycle_module, validate_module, validate_ses, DgModule)
from .report import Report
from .separability import (check_main_theorem, classify_gr_division, find_casimir, is_dg_division)

EXIT_OK, EXIT_FORMAT, EXIT_INVALID, EXIT_WINDOW = 0, 2, 3, 4


class ValidationFailed(Exception):
    def __init__(self, report):
        super().__init__(str(report))
        self.report = report


# -- input --------------------------------------------------------------------------------

def _load(args):
    """The object named by ``--demo`` or by the input file, as built Python objects."""
    if args.demo:
        d = resolve(args.demo)
        if d.build is None:
            raise FormatError(f"{d.name} is a family; give its parameters")
        obj = d.build()
        if d.kind == "sequence":
            ext, seq = obj
            return {"kind": "sequence", "extension": ext, "sequence": seq}
        return {"kind": d.kind, d.kind: obj}
    if not args.input:
        raise FormatError("give an input file or --demo NAME")
    data = ser.load(args.input)
    return _interpret(data)


def _interpret(data):
    if not isinstance(data, dict):
        raise FormatError("top level must be a JSON object")
    if "sequence" in data:
        ext = ser.extension_from_json(data["extension"]) if "extension" in data else None
        seq = ser.ses_from_json(data["sequence"], ext.target if ext else None)
        return {"kind": "sequence", "extension": ext, "sequence": seq}
    if {"L", "M", "N"} <= data.keys() or data.get("construct") in ("split", "quotient"):
        return {"kind": "sequence", "extension": None, "sequence": ser.ses_from_json(data)}
    if ("source" in data and "target" in data) or data.get("construct") in (
            "laurent_pair", "base_extension", "scalar_extension", "identity"):
        return {"kind": "extension", "extension": ser.extension_from_json(data)}
    if "action" in data or data.get("construct") in ("free", "direct_sum"):
        return {"kind": "module", "module": ser.module_from_json(data)}
    return {"kind": "algebra", "algebra": ser.algebra_from_json(data)}


def _need(obj, kind, command):
    if obj["kind"] != kind and not (kind == "extension" and obj.get("extension") is not None):
        raise FormatError(f"{command} needs an {kind}, got {obj['kind']}")
    return obj[kind]


def _window(args) -> Optional[range]:
    if args.window is None:
        return None
    lo, hi = args.window
    if hi < lo:
        raise FormatError("--window needs LO <= HI")
    return range(lo, hi + 1)


# -- commands -----------------------------------------------------------------------------

def cmd_validate(args, obj):
    kind = obj["kind"]
    if kind == "algebra":
        rep = validate_dg(obj["algebra"])
    elif kind == "extension":
        rep = validate_extension(obj["extension"])
    elif kind == "module":
        rep = validate_module(obj["module"])
    else:
        rep = validate_ses(obj["sequence"])
        if obj.get("extension") is not None:
            rep.extend(validate_extension(obj["extension"]), "extension:")
    if not rep.passed:
        raise ValidationFailed(rep)
    return rep, rep.to_dict()


def cmd_homology(args, obj):
    dg = _need(obj, "algebra", "homology")
    _checked(validate_dg(dg))
    table = homology(dg, _window(args))
    return str(table), {"dimensions": {str(k): v for k, v in table.dims.items()},
                        "acyclic_on_window": table.acyclic,
                        "window": [table.window.start, table.window.stop - 1]}


def cmd_cycles(args, obj):
    dg = _need(obj, "algebra", "cycles")
    _checked(validate_dg(dg))
    cyc = cycles(dg, _window(args))
    F = dg.field
    emb = {l: ser.terms_to_json(F, v) for l, v in cyc.embedding.items()}
    lines = [f"ker d of {dg.name}: {len(cyc.algebra.labels)} basis elements on degrees "
             f"{cyc.window.start}..{cyc.window.stop - 1}"]
    for l in cyc.algebra.labels:
        lines.append(f"  {l} (degree {cyc.algebra.basis.degree(l)}) = {_fmt_vec(cyc.embedding[l])}")
    return "\n".join(lines), {"cycles": ser.algebra_to_json(cyc.algebra), "embedding": emb}


def cmd_grdiv(args, obj):
    alg = _need(obj, "algebra", "grdiv-classify")
    _checked(validate_dg(alg))
    cls = classify_gr_division(alg, _window(args))
    return str(cls), {"verdict": cls.verdict, "degree_step": cls.degree_step, "base_field": cls.base_field,
                      "base_dimension": cls.base_dimension, "reason": cls.reason}


def cmd_dgdiv(args, obj):
    dg = _need(obj, "algebra", "dgdiv-check")
    _checked(validate_dg(dg))
    res = is_dg_division(dg, _window(args))
    text = (f"dg-division: {res.is_division}\n  cycles: {res.classification}\n"
            f"  acyclic: {res.acyclic}\n  zero differential: {res.zero_differential}")
    return text, {"dg_division": res.is_division, "cycles": res.classification.verdict,
                  "acyclic": res.acyclic, "zero_differential": res.zero_differential}


def cmd_tensor(args, obj):
    ext = _need(obj, "extension", "tensor")
    _checked(validate_extension(ext))
    T = tensor_over_source(ext)
    window = _window(args) or T.window()
    dims = T.dimensions(window)
    rep = validate_tensor(T, window)
    text = f"B (x)_A B for {ext.name}, rank {ext.rank} over the source\n  dimensions: {dims}\n{rep}"
    if not rep.passed:
        raise ValidationFailed(rep)
    return text, {"dimensions": {str(k): v for k, v in dims.items()}, "checks": rep.to_dict()}


def cmd_separable(args, obj):
    ext = _need(obj, "extension", "separable")
    _checked(validate_extension(ext))
    res = find_casimir(ext)
    return str(res), ser.result_to_json(res)


def cmd_main_theorem(args, obj):
    if obj is None:
        names = main_theorem_instances(True) + main_theorem_instances(False)
        reports = [check_main_theorem(resolve(n).build()) for n in names]
    else:
        ext = _need(obj, "extension", "main-theorem")
        _checked(validate_extension(ext))
        reports = [check_main_theorem(ext)]
    mism = [r for r in reports if r.mismatch]
    text = "\n".join(str(r) if obj is not None else r.verdict_line() for r in reports)
    text += f"\nmismatches: {len(mism)} of {sum(1 for r in reports if not r.silent)} decided instances"
    return text, {"reports": [ser.result_to_json(r) for r in reports], "mismatches": len(mism)}


def cmd_ses_split(args, obj):
    if obj["kind"] != "sequence":
        raise FormatError("ses-split needs a sequence")
    seq, ext = obj["sequence"], obj.get("extension")
    _checked(validate_ses(seq))
    res = find_dg_splitting(seq)
    out = {"target": ser.result_to_json(res)}
    text = str(res)
    if ext is not None:
        _checked(validate_extension(ext))
        src = find_dg_splitting(seq, ext)
        out["source"] = ser.result_to_json(src)
        text += "\n" + str(src)
        text += f"\nsplit over target: {res.verdict}; split over source: {src.verdict}"
    return text, out


def cmd_lift_split(args, obj):
    if obj["kind"] != "sequence" or obj.get("extension") is None:
        raise FormatError("lift-split needs an extension and a sequence over its target")
    seq, ext = obj["sequence"], obj["extension"]
    _checked(validate_extension(ext))
    _checked(validate_ses(seq))
    cert = find_casimir(ext)
    if not cert.separable:
        return (f"{cert}\nno Casimir element: nothing to lift",
                {"casimir": ser.result_to_json(cert), "lifted": None})
    rho = find_dg_splitting(seq, ext)
    if not rho.split:
        return (f"{rho}\nno splitting over the source: nothing to lift",
                {"casimir": ser.result_to_json(cert), "source": ser.result_to_json(rho), "lifted": None})
    tau = lift_splitting(ext, cert, seq, rho)
    if not tau.report.passed:
        raise ValidationFailed(tau.report)
    text = f"{cert}\n{rho}\n{tau}"
    return text, {"casimir": ser.result_to_json(cert), "source": ser.result_to_json(rho),
                  "lifted": ser.result_to_json(tau)}


def cmd_equivalence(args, obj):
    dg = _need(obj, "algebra", "equivalence-check")
    _checked(validate_dg(dg))
    if not homology(dg).acyclic:
        raise HypothesisUnverified("the round trip through cycles needs an acyclic algebra")
    cyc = cycles(dg)
    rng = random.Random(args.seed)
    rows, ok = [], 0
    for i in range(args.count):
        N = random_cycle_module(cyc.dg, rng, args.max_dim)
        ind = induce_from_cycles(cyc, N)
        valid = validate_module(ind.module).passed
        back = cycles_module(ind.module, cyc).module
        iso = find_isomorphism(N, back, seed=args.seed + i)
        good = valid and iso is not None and iso.report.passed
        ok += good
        rows.append({"dimensions": {str(k): v for k, v in N.dimensions().items() if v},
                     "induced_valid": valid, "isomorphism": iso is not None and iso.report.passed})
    text = "\n".join(f"module {i}: dims {r['dimensions']} induced-valid={r['induced_valid']} "
                     f"isomorphism={r['isomorphism']}" for i, r in enumerate(rows))
    text += f"\n{ok}/{args.count} round trips verified"
    return text, {"modules": rows, "verified": ok, "count": args.count}


def cmd_demo(args, obj):
    if not args.demo:
        lines = [f"{d.name:40s} [{d.kind}] {d.description}" for d in catalog()]
        return "\n".join(lines), {"demos": [{"name": d.name, "kind": d.kind, "description": d.description}
                                            for d in catalog()]}
    kind = obj["kind"]
    if kind == "algebra":
        return json.dumps(ser.algebra_to_json(obj["algebra"]), indent=1), ser.algebra_to_json(obj["algebra"])
    if kind == "extension":
        data = ser.extension_to_json(obj["extension"])
        return json.dumps(data, indent=1), data
    data = {"extension": ser.extension_to_json(obj["extension"]), "sequence": ser.ses_to_json(obj["sequence"])}
    return json.dumps(data, indent=1), data


COMMANDS = {
    "validate": cmd_validate, "homology": cmd_homology, "cycles": cmd_cycles, "grdiv-classify": cmd_grdiv,
    "dgdiv-check": cmd_dgdiv, "tensor": cmd_tensor, "separable": cmd_separable,
    "main-theorem": cmd_main_theorem, "ses-split": cmd_ses_split, "lift-split": cmd_lift_split,
    "equivalence-check": cmd_equivalence, "demo": cmd_demo,
}


def _checked(rep: Report) -> None:
    if not rep.passed:
        raise ValidationFailed(rep)


def _fmt_vec(v) -> str:
    if not v:
        return "0"
    return " + ".join(f"{c}*{l}" + (f"z^{e}" if e else "") for (l, e), c in v.items())


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dgsep", description="Exact computations with dg-algebras and dg-modules.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("input", nargs="?", help="JSON description (omit with --demo)")
    p.add_argument("--demo", nargs="+", metavar="NAME", help="built-in example, e.g. --demo laurent F2 3")
    p.add_argument("--window", nargs=2, type=int, metavar=("LO", "HI"))
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=20, help="modules for equivalence-check")
    p.add_argument("--max-dim", type=int, default=4, help="module dimension bound for equivalence-check")
    return p


def run(argv: Optional[List[str]] = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_FORMAT if exc.code else EXIT_OK
    fmt = args.format

    def emit(text, data):
        if fmt == "json":
            out.write(json.dumps(data, indent=1, default=str) + "\n")
        else:
            out.write(text + "\n")

    try:
        if args.command == "main-theorem" and not args.demo and not args.input:
            obj = None
        elif args.command == "demo" and not args.demo:
            obj = None
        else:
            obj = _load(args)
        text, data = COMMANDS[args.command](args, obj)
        emit(str(text), data)
        return EXIT_OK
    except ValidationFailed as exc:
        emit(f"validation failed\n{exc.report}", {"error": "validation", "report": exc.report.to_dict()})
        return EXIT_INVALID
    except (WindowTooSmall, ClosureEscape) as exc:
        emit(f"window insufficient: {exc}", {"error": "window", "message": str(exc)})
        return EXIT_WINDOW
    except (HypothesisUnverified, ConsistencyError, AutomorphismOrderError, FreenessError,
            CertificateInvalid) as exc:
        emit(f"{type(exc).__name__}: {exc}", {"error": type(exc).__name__, "message": str(exc)})
        return EXIT_INVALID
    except (FormatError, OSError, KeyError, TypeError) as exc:
        emit(f"format error: {exc}", {"error": "format", "message": str(exc)})
        return EXIT_FORMAT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
