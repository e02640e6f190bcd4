"""Built-in examples, addressable by name from the command line.

Names are either fixed (``dual-numbers-over-Q``) or families with
parameters (``laurent F2 3``). ``resolve`` turns a name into a ``Demo`` whose
``build()`` returns an algebra, an extension, or an ``(extension, sequence)``
pair, according to ``kind``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, List, Sequence

from .algebra import as_dg
from .constructions import (AcyclicDivisionSpec, TwistedLaurentSpec, acyclic_division_from_cycles, base_extension,
                            cycle_inclusion, dual_numbers, finite_field, frobenius, laurent, laurent_pair,
                            scalar_extension, truncated_polynomial, twisted_laurent)
from .errors import FormatError
from .fields import QQ, Field, parse_field
from .modules import free_module, split_sequence, submodule_sequence


@dataclass
class Demo:
    name: str
    kind: str          # "algebra", "extension" or "sequence"
    build: Callable
    description: str = ""


def _acyclic(F: Field, w_inv: bool = False, degree: int = 2):
    C = laurent(F, degree)
    w = {("1", -1): F.one} if w_inv else {}
    tag = "Xinv" if w_inv else "0"
    return acyclic_division_from_cycles(AcyclicDivisionSpec(C, w=w, name=f"{F}[X^±1]<y>, y^2={tag}"))


def _twisted_f4(degree: int = 2):
    R = finite_field(2, 2)
    return twisted_laurent(TwistedLaurentSpec(R, degree, frobenius(R), 2, name=f"F4[X,X^-1;Frob] |X|={degree}"))


def _named_sequence(ext, which: str):
    B = ext.target
    F = B.field
    if which == "direct-sum":
        return split_sequence(free_module(B, name="B"), free_module(B, name="B"), name="0 -> B -> B+B -> B -> 0")
    if which == "shifted":
        return split_sequence(free_module(B, name="B"), free_module(B, [1], name="B[1]"),
                              name="0 -> B -> B+B[1] -> B[1] -> 0")
    if which == "diagonal":
        # L is spanned by e0 + b e1, so M = L + N is not the presentation M was given in;
        # b is a non-scalar degree-0 element when there is one
        M = free_module(B, [0, 0], name="B^2")
        one = next(iter(B.unit))[0]
        b = next((l for l in B.labels if B.basis.degree(l) == 0 and {(l, 0): F.one} != B.unit), one)
        gen = {(f"{one}.0", 0): F.one, (f"{b}.1", 0): F.one}
        return submodule_sequence(M, [gen], name=f"0 -> B(e0+{b}e1) -> B^2 -> quotient -> 0")
    if which == "nonsplit":
        M = free_module(B, name="B")
        X = next(l for l in B.labels if B.basis.degree(l) != 0)
        return submodule_sequence(M, [{(X, 0): F.one}], name=f"0 -> ({X}) -> B -> B/({X}) -> 0")
    raise FormatError(f"unknown sequence {which!r}")


_FIXED: Dict[str, Demo] = {}


def _add(name, kind, build, description=""):
    _FIXED[name] = Demo(name, kind, build, description)


for _f in ("Q", "F2", "F3", "F5"):
    _add(f"dual-numbers-over-{_f}", "extension",
         lambda f=_f: base_extension(dual_numbers(parse_field(f))),
         "ground field -> K[X]/X^2 with d(X) = 1, |X| = -1")
    _add(f"dual-numbers {_f}", "algebra", lambda f=_f: dual_numbers(parse_field(f)), "K[X]/X^2, d(X) = 1")
for _f in ("F2", "F3", "F5"):
    _add(f"acyclic-division {_f} w=0", "algebra", lambda f=_f: _acyclic(parse_field(f)),
         "K[X^±1] (+) y K[X^±1], |X| = 2, y^2 = 0, d(b + ya) = a")
    _add(f"acyclic-division {_f} w=Xinv", "algebra", lambda f=_f: _acyclic(parse_field(f), True),
         "K[X^±1] (+) y K[X^±1], |X| = 2, y^2 = X^-1, d(b + ya) = a")
_add("acyclic-division Q w=0", "algebra", lambda: _acyclic(QQ), "Q[X^±1] (+) y Q[X^±1], y^2 = 0")
_add("truncated-polynomial Q", "algebra", lambda: truncated_polynomial(QQ), "Q[X]/X^2 with d = 0")
_add("twisted-laurent F4", "algebra", lambda: _twisted_f4(2), "F4[X, X^-1; Frobenius], |X| = 2")
_add("twisted-laurent F4 odd", "algebra", lambda: _twisted_f4(1), "F4[X, X^-1; Frobenius], |X| = 1")
for _p, _k in ((2, 2), (3, 2), (5, 2)):
    _add(f"field F{_p} F{_p ** _k}", "extension", lambda p=_p, k=_k: base_extension(finite_field(p, k)),
         "finite field extension in degree 0, d = 0")
for _f in ("F3",):
    _add(f"scalar-dual {_f}", "extension", lambda f=_f: scalar_extension(dual_numbers(parse_field(f))),
         "K[X]/X^2 -> F_{p^2} (x) K[X]/X^2, both acyclic")
    _add(f"scalar-acyclic {_f} w=Xinv", "extension",
         lambda f=_f: scalar_extension(_acyclic(parse_field(f), True)),
         "acyclic division over K[X^±1] -> its F_{p^2} scalar extension")
    _add(f"scalar-acyclic {_f} w=0", "extension",
         lambda f=_f: scalar_extension(_acyclic(parse_field(f))),
         "acyclic division over K[X^±1] -> its F_{p^2} scalar extension")
_add("scalar-laurent F5", "extension", lambda: scalar_extension(laurent(parse_field("F5"), 2)),
     "F5[X^±1] -> F25[X^±1], d = 0")

# sequences for the lifting experiments: base extension plus a sequence over its target
for _which in ("direct-sum", "shifted", "diagonal"):
    _add(f"ses F4 {_which}", "sequence",
         lambda w=_which: (lambda e: (e, _named_sequence(e, w)))(base_extension(finite_field(2, 2))),
         "sequence of F4-modules, base F2")
    _add(f"ses laurent F2 3 {_which}", "sequence",
         lambda w=_which: (lambda e: (e, _named_sequence(e, w)))(laurent_pair(parse_field("F2"), 3)),
         "sequence of F2[T^±1]-modules, base F2[T^±3]")
_add("ses laurent F2 3 twisted-diagonal", "sequence",
     lambda: (lambda e: (e, submodule_sequence(free_module(e.target, [0, 2]), [{("1.0", 1): 1, ("1.1", 0): 1}],
                                               name="0 -> B(T e0 + e1) -> B + B[2] -> quotient -> 0")))(
         laurent_pair(parse_field("F2"), 3)),
     "sequence of F2[T^±1]-modules, submodule generated by T e0 + e1")
_add("ses truncated Q nonsplit", "sequence",
     lambda: (lambda e: (e, _named_sequence(e, "nonsplit")))(base_extension(truncated_polynomial(QQ))),
     "0 -> (X) -> Q[X]/X^2 -> Q -> 0 with d = 0, base Q")
_add("ses truncated F2->F4 nonsplit", "sequence",
     lambda: (lambda e: (e, _named_sequence(e, "nonsplit")))(scalar_extension(truncated_polynomial(parse_field("F2")))),
     "0 -> (X) -> F4[X]/X^2 -> F4 -> 0, base F2[X]/X^2")
_add("ses truncated F2->F4 direct-sum", "sequence",
     lambda: (lambda e: (e, _named_sequence(e, "direct-sum")))(scalar_extension(truncated_polynomial(parse_field("F2")))),
     "split sequence of F4[X]/X^2-modules, base F2[X]/X^2")
_add("ses dual F3->F9 diagonal", "sequence",
     lambda: (lambda e: (e, _named_sequence(e, "diagonal")))(scalar_extension(dual_numbers(parse_field("F3")))),
     "sequence of dg-modules over F9 (x) F3[X]/X^2, base F3[X]/X^2")

_FAMILIES = {
    "laurent": "laurent Fp n: K[T^±n] -> K[T^±1], |T| = 2, d = 0",
    "laurent-acyclic": "laurent-acyclic Fp n: the same with y adjoined on both sides (y^2 = 0)",
    "laurent-to-acyclic": "laurent-to-acyclic Fp: (K[X^±1], 0) -> acyclic division over it, y^2 = 0",
    "laurent-to-acyclic-winv": "laurent-to-acyclic-winv Fp: as above with y^2 = X^-1",
}


def _family(tokens: Sequence[str]) -> Demo:
    head, args = tokens[0], list(tokens[1:])
    try:
        if head in ("laurent", "laurent-acyclic") and len(args) == 2:
            F, n = parse_field(args[0]), int(args[1])
            if n < 1:
                raise FormatError("n must be positive")
            return Demo(" ".join(tokens), "extension",
                        lambda: laurent_pair(F, n, 2, acyclic=head == "laurent-acyclic"), _FAMILIES[head])
        if head in ("laurent-to-acyclic", "laurent-to-acyclic-winv") and len(args) == 1:
            F = parse_field(args[0])
            winv = head.endswith("winv")
            return Demo(" ".join(tokens), "extension", lambda: cycle_inclusion(_acyclic(F, winv)), _FAMILIES[head])
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    raise FormatError(f"unknown demo {' '.join(tokens)!r}; try 'demo' for the catalog")


def resolve(name) -> Demo:
    tokens = name.split() if isinstance(name, str) else list(name)
    key = " ".join(tokens)
    if key in _FIXED:
        return _FIXED[key]
    if not tokens:
        raise FormatError("empty demo name")
    return _family(tokens)


def catalog() -> List[Demo]:
    fams = [Demo(f"{k} ...", "extension", None, v) for k, v in _FAMILIES.items()]
    return list(_FIXED.values()) + fams


def main_theorem_instances(odd_characteristic: bool = True) -> List[str]:
    """Graded-commutative dg-division extensions covering the three branches."""
    if odd_characteristic:
        return [
            # both differentials zero
            "laurent F3 1", "laurent F3 2", "laurent F3 3", "laurent F5 2", "laurent F5 5", "laurent Q 4",
            "field F3 F9", "field F5 F25", "scalar-laurent F5",
            # acyclic source
            "laurent-acyclic F3 2", "laurent-acyclic F3 3", "laurent-acyclic F5 5", "laurent-acyclic Q 2",
            "scalar-dual F3", "scalar-acyclic F3 w=0",
            # zero differential into an acyclic target
            "dual-numbers-over-Q", "dual-numbers-over-F3", "dual-numbers-over-F5",
            "laurent-to-acyclic F3", "laurent-to-acyclic F5", "laurent-to-acyclic Q",
        ]
    return ["dual-numbers-over-F2", "laurent-acyclic F2 2", "laurent-acyclic F2 3", "laurent-to-acyclic F2",
            "laurent-to-acyclic-winv F2", "laurent F2 2", "laurent F2 3", "field F2 F4"]


def lifting_instances() -> Dict[str, List[str]]:
    return {
        "F2 -> F4": ["ses F4 direct-sum", "ses F4 shifted", "ses F4 diagonal"],
        "F2[T^±3] -> F2[T^±1]": ["ses laurent F2 3 direct-sum", "ses laurent F2 3 shifted",
                                 "ses laurent F2 3 diagonal", "ses laurent F2 3 twisted-diagonal"],
    }
