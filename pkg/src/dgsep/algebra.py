"""Graded and differential graded algebras given by structure constants.

Signs follow the Koszul rule throughout: the differential has degree +1 and
satisfies ``d(ab) = d(a) b + (-1)^|a| a d(b)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from . import linalg
from .errors import ClosureEscape, FormatError, NoSolution
from .fields import Field, Scalar
from .graded import (GradedBasis, Key, Vector, add_into, add_term, from_column, homogeneous_degree,
                     matrix_of, scale, shift, split_by_degree, to_column, vsub)
from .report import Report


def koszul(a: int, b: int) -> int:
    return -1 if (a * b) % 2 else 1


def _check_vector(basis: GradedBasis, v: Mapping, what: str) -> None:
    for k in v:
        if not (isinstance(k, tuple) and len(k) == 2 and k[0] in basis and isinstance(k[1], int)):
            raise FormatError(f"{what}: malformed term {k!r}")
        if basis.period is None and k[1] != 0:
            raise FormatError(f"{what}: unit exponent {k[1]} without a period unit")


@dataclass(eq=False)
class GradedAlgebra:
    """Associative graded algebra over a prime field or Q.

    ``products[(i, j)]`` is the vector ``i * j``; missing pairs multiply to
    zero. With a period ``g`` the element ``z = unit * z^1`` is the central
    periodicity unit and every label stands for a free K[z, z^-1]-generator.
    """

    field: Field
    basis: GradedBasis
    products: Dict[Tuple[str, str], Vector]
    unit: Vector
    name: str = ""

    def __post_init__(self):
        if not isinstance(self.basis, GradedBasis):
            raise FormatError("basis must be a GradedBasis")
        for (i, j), v in self.products.items():
            if i not in self.basis or j not in self.basis:
                raise FormatError(f"product of unknown labels {(i, j)!r}")
            _check_vector(self.basis, v, f"product {i}*{j}")
        _check_vector(self.basis, self.unit, "unit")
        if not self.unit:
            raise FormatError("unit must be nonzero")
        self.products = {k: dict(v) for k, v in self.products.items() if v}

    @property
    def period(self) -> Optional[int]:
        return self.basis.period

    @property
    def labels(self) -> Tuple[str, ...]:
        return self.basis.labels

    def component(self, n: int) -> List[Key]:
        return self.basis.component(n)

    def deg(self, key: Key) -> int:
        return self.basis.key_degree(key)

    def degree_of(self, v: Mapping) -> Optional[int]:
        return homogeneous_degree(self.basis, v)

    def e(self, label: str, exp: int = 0) -> Vector:
        return {(label, exp): self.field.one}

    def mul(self, u: Mapping, v: Mapping) -> Vector:
        F = self.field
        out: Vector = {}
        for (i, ei), a in u.items():
            for (j, ej), b in v.items():
                p = self.products.get((i, j))
                if not p:
                    continue
                ab = F.mul(a, b)
                s = ei + ej
                for (k, ek), c in p.items():
                    add_term(F, out, (k, ek + s), F.mul(ab, c))
        return out

    def period_unit(self) -> Optional[Vector]:
        return None if self.period is None else shift(self.unit, 1)

    def power(self, v: Mapping, k: int) -> Vector:
        if k < 0:
            return self.power(self.inverse(v), -k)
        out = dict(self.unit)
        for _ in range(k):
            out = self.mul(out, v)
        return out

    def inverse(self, v: Mapping) -> Vector:
        """Two-sided inverse of a homogeneous element (``NoSolution`` if none)."""
        n = self.degree_of(v)
        if n is None:
            raise NoSolution(0, 1, None, "only nonzero homogeneous elements are inverted here")
        keys = self.component(-n)
        sys = linalg.LinearSystem(self.field, keys)
        sys.add(lambda k: self.mul(v, {k: self.field.one}), "left", self.unit)
        sys.add(lambda k: self.mul({k: self.field.one}, v), "right", self.unit)
        return sys.solve()

    def is_invertible(self, v: Mapping) -> bool:
        try:
            self.inverse(v)
        except NoSolution:
            return False
        return True

    def __repr__(self):
        return f"GradedAlgebra({self.name or '?'}, {self.field}, dim={len(self.basis)}, period={self.period})"


@dataclass(eq=False)
class DgAlgebra:
    algebra: GradedAlgebra
    differential: Dict[str, Vector] = field(default_factory=dict)

    def __post_init__(self):
        for lab, v in self.differential.items():
            if lab not in self.algebra.basis:
                raise FormatError(f"differential of unknown label {lab!r}")
            _check_vector(self.algebra.basis, v, f"d({lab})")
        self.differential = {k: dict(v) for k, v in self.differential.items() if v}

    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def basis(self) -> GradedBasis:
        return self.algebra.basis

    @property
    def period(self):
        return self.algebra.period

    @property
    def labels(self) -> Tuple[str, ...]:
        return self.algebra.labels

    @property
    def unit(self) -> Vector:
        return self.algebra.unit

    @property
    def name(self) -> str:
        return self.algebra.name

    def mul(self, u, v) -> Vector:
        return self.algebra.mul(u, v)

    def e(self, label: str, exp: int = 0) -> Vector:
        return self.algebra.e(label, exp)

    def component(self, n):
        return self.algebra.component(n)

    def d(self, v: Mapping) -> Vector:
        F = self.field
        out: Vector = {}
        for (lab, e), c in v.items():
            dv = self.differential.get(lab)
            if dv:
                add_into(F, out, shift(dv, e), c)
        return out

    def is_zero_differential(self) -> bool:
        return not self.differential

    def d_matrix(self, n: int):
        return matrix_of(self.field, lambda k: self.d({k: self.field.one}), self.component(n), self.component(n + 1))

    def __repr__(self):
        return f"DgAlgebra({self.name or '?'}, {self.field}, dim={len(self.basis)}, period={self.period})"


def with_zero_differential(alg: GradedAlgebra) -> DgAlgebra:
    return DgAlgebra(alg, {})


def as_dg(obj) -> DgAlgebra:
    return obj if isinstance(obj, DgAlgebra) else with_zero_differential(obj)


def as_graded(obj) -> GradedAlgebra:
    return obj.algebra if isinstance(obj, DgAlgebra) else obj


def sample_keys(basis: GradedBasis) -> List[Key]:
    """Basis keys with exponent parities, enough for every sign-sensitive check."""
    return [(lab, e) for e in basis.exponents() for lab in basis.labels]


# -- validation ---------------------------------------------------------------

def validate_algebra(alg) -> Report:
    A = as_graded(alg)
    F, B = A.field, A.basis
    rep = Report(f"algebra {A.name or ''}".strip(), window=B.fold_window())
    one = F.one

    bad = []
    for (i, j), v in A.products.items():
        for k in v:
            if A.deg(k) != B.degree(i) + B.degree(j):
                bad.append(f"{i}*{j} -> {k[0]}z^{k[1]} (degree {B.degree(i)}+{B.degree(j)} != {A.deg(k)})")
    rep.add("degree-homogeneity", not bad, "; ".join(bad[:3]))

    unit_deg = A.degree_of(A.unit)
    rep.add("unit-degree-0", unit_deg == 0, "" if unit_deg == 0 else f"unit has degree {unit_deg}")
    bad = []
    for lab in B.labels:
        x = A.e(lab)
        if A.mul(A.unit, x) != x:
            bad.append(f"1*{lab}")
        if A.mul(x, A.unit) != x:
            bad.append(f"{lab}*1")
    rep.add("unit-axioms", not bad, ", ".join(bad[:4]))

    bad = []
    for a, b, c in iproduct(B.labels, repeat=3):
        x, y, z = A.e(a), A.e(b), A.e(c)
        if A.mul(A.mul(x, y), z) != A.mul(x, A.mul(y, z)):
            bad.append(f"({a}{b}){c}")
            if len(bad) > 3:
                break
    rep.add("associativity", not bad, ", ".join(bad))

    if A.period is not None:
        z = A.period_unit()
        central = all(A.mul(z, A.e(l)) == A.mul(A.e(l), z) for l in B.labels)
        rep.add("period-unit-central", central)
        rep.add("period-unit-invertible", A.mul(z, shift(A.unit, -1)) == A.unit)
    return rep


def validate_differential(dg: DgAlgebra) -> Report:
    dg = as_dg(dg)
    A, F, B = dg.algebra, dg.field, dg.basis
    rep = Report(f"differential {A.name or ''}".strip(), window=B.fold_window())
    minus = F.neg(F.one)

    bad = []
    for lab in B.labels:
        dv = dg.d(A.e(lab))
        if dv and A.degree_of(dv) != B.degree(lab) + 1:
            bad.append(f"d({lab}) not homogeneous of degree {B.degree(lab) + 1}")
    rep.add("degree+1", not bad, "; ".join(bad[:3]))

    bad = [lab for lab in B.labels if dg.d(dg.d(A.e(lab)))]
    rep.add("d-squared-zero", not bad, ", ".join(bad[:4]))

    bad = []
    keys = sample_keys(B)
    for x, y in iproduct(keys, repeat=2):
        u, v = {x: F.one}, {y: F.one}
        lhs = dg.d(A.mul(u, v))
        rhs = A.mul(dg.d(u), v)
        add_into(F, rhs, A.mul(u, dg.d(v)), F.one if A.deg(x) % 2 == 0 else minus)
        if lhs != rhs:
            bad.append(f"({x[0]}z^{x[1]},{y[0]}z^{y[1]})")
            if len(bad) > 3:
                break
    rep.add("leibniz", not bad, ", ".join(bad))
    rep.add("d(unit)=0", not dg.d(A.unit))
    return rep


def validate_dg(dg: DgAlgebra) -> Report:
    dg = as_dg(dg)
    rep = validate_algebra(dg)
    rep.subject = f"dg-algebra {dg.name}".strip()
    rep.extend(validate_differential(dg))
    return rep


# -- homology and cycles ----------------------------------------------------------

@dataclass
class HomologyTable:
    dims: Dict[int, int]
    window: range
    boundaries_in_cycles: bool

    @property
    def acyclic(self) -> bool:
        return all(v == 0 for v in self.dims.values())

    def __str__(self):
        rows = [f"H^{n} = {self.dims[n]}" for n in self.window]
        tag = "acyclic-on-window" if self.acyclic else "not acyclic"
        return "\n".join(rows + [f"[{tag}; degrees {self.window.start}..{self.window.stop - 1}]"])


def default_window(dg) -> range:
    return as_graded(dg).basis.fold_window()


def homology(dg: DgAlgebra, window: Optional[range] = None) -> HomologyTable:
    dg = as_dg(dg)
    F = dg.field
    window = default_window(dg) if window is None else window
    dims, closed = {}, True
    for n in window:
        dn, dprev = dg.d_matrix(n), dg.d_matrix(n - 1)
        dim = len(dg.component(n))
        rk_n = linalg.rank(F, dn, dim)
        rk_prev = linalg.rank(F, dprev, len(dg.component(n - 1)))
        if dprev and dn:
            comp = linalg.matmul(F, dn, dprev)
            closed = closed and all(x == 0 for row in comp for x in row)
        dims[n] = dim - rk_n - rk_prev
    return HomologyTable(dims, window, closed)


@dataclass(eq=False)
class Cycles:
    """``ker(d)`` as a graded algebra, with its embedding into the ambient algebra."""

    ambient: DgAlgebra
    algebra: GradedAlgebra
    embedding: Dict[str, Vector]
    window: range
    _solvers: Dict[int, tuple] = field(default_factory=dict, repr=False)

    @property
    def dg(self) -> DgAlgebra:
        if not hasattr(self, "_dg"):
            self._dg = with_zero_differential(self.algebra)
        return self._dg

    def embed(self, v: Mapping) -> Vector:
        F = self.ambient.field
        out: Vector = {}
        for (lab, e), c in v.items():
            add_into(F, out, shift(self.embedding[lab], e), c)
        return out

    def _degree_data(self, n0: int):
        if n0 not in self._solvers:
            labels = [l for l in self.algebra.labels if self.algebra.basis.degree(l) == n0]
            keys = self.ambient.component(n0)
            cols = [to_column(self.ambient.field, keys, self.embedding[l]) for l in labels]
            self._solvers[n0] = (labels, keys, linalg.transpose(cols, len(keys)) if cols else [[] for _ in keys])
        return self._solvers[n0]

    def coordinates(self, v: Mapping) -> Vector:
        """Express an ambient cycle in the cycle basis (``ClosureEscape`` if impossible)."""
        F = self.ambient.field
        B = self.ambient.basis
        out: Vector = {}
        for n, part in split_by_degree(B, v).items():
            n0, e = self.algebra.basis.fold(n, self.window.start) if B.period else (n, 0)
            if B.period is None and n not in self.window:
                raise ClosureEscape(f"degree {n} lies outside the cycle window {self.window}")
            labels, keys, M = self._degree_data(n0)
            try:
                x = linalg.solve(F, M, to_column(F, keys, shift(part, -e)), len(labels))
            except NoSolution:
                raise ClosureEscape(f"element of degree {n} is not a cycle combination") from None
            for lab, c in zip(labels, x):
                add_term(F, out, (lab, e), c)
        return out


def cycles(dg: DgAlgebra, window: Optional[range] = None) -> Cycles:
    """Cycle subalgebra on ``window`` (one fold for periodic algebras)."""
    dg = as_dg(dg)
    A, F, B = dg.algebra, dg.field, dg.basis
    if window is None:
        window = default_window(dg)
    if B.period is not None:
        window = B.fold_window(window.start)
    taken = set(B.labels)
    labels, degrees, embedding = [], [], {}
    counter = 0
    for n in window:
        keys = A.component(n)
        if not keys:
            continue
        ker = linalg.kernel_basis(F, dg.d_matrix(n), len(keys))
        vectors = [from_column(keys, v) for v in ker]
        if n == 0 and not dg.d(A.unit):
            # put the unit first so it becomes a basis element of the cycles
            vectors = [dict(A.unit)] + vectors
        chosen: List[Vector] = []
        for v in vectors:
            cand = chosen + [v]
            cols = [to_column(F, keys, w) for w in cand]
            if linalg.rank(F, cols, len(keys)) == len(cand):
                chosen.append(v)
        for v in chosen:
            name = None
            if len(v) == 1:
                (lab, e), c = next(iter(v.items()))
                if e == 0 and c == F.one and lab not in embedding:
                    name = lab
            if name is None:
                while f"c{counter}" in taken:
                    counter += 1
                name = f"c{counter}"
                counter += 1
            taken.add(name)
            labels.append(name)
            degrees.append(n)
            embedding[name] = v
    cbasis = GradedBasis(tuple(labels), tuple(degrees), B.period)
    unit_label = next((l for l in labels if embedding[l] == A.unit), None)
    if unit_label is None:
        raise ClosureEscape("the unit is not a cycle in the window")
    skeleton = GradedAlgebra(F, cbasis, {}, {(unit_label, 0): F.one}, name=f"ker d of {A.name}".strip())
    cyc = Cycles(dg, skeleton, embedding, window)
    products = {}
    for i in labels:
        for j in labels:
            p = A.mul(embedding[i], embedding[j])
            if p:
                products[(i, j)] = cyc.coordinates(p)
    skeleton.products = products
    return cyc


# -- opposite, commutativity, refolding --------------------------------------------

def refold(obj, factor: int):
    """Same algebra presented over the period unit ``z**factor``."""
    dg = as_dg(obj)
    A, F, B = dg.algebra, dg.field, dg.basis
    if B.period is None or factor == 1:
        return obj

    def name(lab, j):
        return lab if j == 0 else f"{lab}*z^{j}"

    def conv(v):
        out = {}
        for (lab, e), c in v.items():
            j, q = e % factor, e // factor
            out[(name(lab, j), q)] = c
        return out

    pairs = [(name(l, j), B.degree(l) + B.period * j) for j in range(factor) for l in B.labels]
    nb = GradedBasis.of(pairs, B.period * factor)
    prods = {}
    for j1 in range(factor):
        for j2 in range(factor):
            for (a, b), v in A.products.items():
                prods[(name(a, j1), name(b, j2))] = conv(shift(v, j1 + j2))
    alg = GradedAlgebra(F, nb, prods, conv(A.unit), name=A.name)
    diff = {name(l, j): conv(shift(v, j)) for l, v in dg.differential.items() for j in range(factor)}
    return DgAlgebra(alg, diff) if isinstance(obj, DgAlgebra) else alg


def opposite(obj):
    """``a .op b = (-1)^{|a||b|} b a``; odd periods are refolded to even first."""
    dg = as_dg(obj)
    if dg.period is not None and dg.period % 2:
        dg = refold(dg, 2)
    A, F, B = dg.algebra, dg.field, dg.basis
    prods = {}
    for i in B.labels:
        for j in B.labels:
            v = A.products.get((j, i))
            if v:
                prods[(i, j)] = scale(F, F(koszul(B.degree(i), B.degree(j))), v)
    alg = GradedAlgebra(F, B, prods, dict(A.unit), name=f"{A.name}^op" if A.name else "")
    return DgAlgebra(alg, dict(dg.differential)) if isinstance(obj, DgAlgebra) else alg


def is_graded_commutative(obj) -> bool:
    A = as_graded(obj)
    F = A.field
    for x, y in iproduct(sample_keys(A.basis), repeat=2):
        u, v = {x: F.one}, {y: F.one}
        if A.mul(u, v) != scale(F, F(koszul(A.deg(x), A.deg(y))), A.mul(v, u)):
            return False
    return True


def same_presentation(a, b) -> bool:
    """Exact equality of field, basis, unit, structure constants and differential."""
    da, db = as_dg(a), as_dg(b)
    return (da.field == db.field and da.basis == db.basis and da.unit == db.unit
            and da.algebra.products == db.algebra.products and da.differential == db.differential)
