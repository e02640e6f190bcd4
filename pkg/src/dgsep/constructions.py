"""Builders for the named algebras, dg-extensions and the bimodule B (x)_A B."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from . import linalg
from .algebra import (DgAlgebra, GradedAlgebra, as_dg, as_graded, cycles, koszul, refold, sample_keys,
                      validate_dg)
from .errors import AutomorphismOrderError, ConsistencyError, FormatError, FreenessError, NoSolution
from .fields import Field, GF, Scalar
from .graded import (GradedBasis, GradedLinearMap, Key, Vector, add_into, add_term, from_column,
                     homogeneous_degree, scale, shift, split_by_degree, to_column, vsub)
from .report import Report


# -- basic algebras -------------------------------------------------------------

def ground(F: Field) -> DgAlgebra:
    """K concentrated in degree 0."""
    alg = GradedAlgebra(F, GradedBasis(("1",), (0,)), {("1", "1"): {("1", 0): F.one}}, {("1", 0): F.one}, name=str(F))
    return DgAlgebra(alg, {})


def dual_numbers(F: Field) -> DgAlgebra:
    """K[X]/X^2 with |X| = -1 and d(X) = 1."""
    one = F.one
    basis = GradedBasis(("1", "X"), (0, -1))
    prods = {("1", "1"): {("1", 0): one}, ("1", "X"): {("X", 0): one}, ("X", "1"): {("X", 0): one}}
    alg = GradedAlgebra(F, basis, prods, {("1", 0): one}, name=f"{F}[X]/X^2")
    return DgAlgebra(alg, {"X": {("1", 0): one}})


def truncated_polynomial(F: Field, degree: int = -1) -> DgAlgebra:
    """K[X]/X^2 with zero differential."""
    dn = dual_numbers(F)
    basis = GradedBasis(("1", "X"), (0, degree))
    alg = GradedAlgebra(F, basis, dn.algebra.products, dn.unit, name=f"{F}[X]/X^2 (d=0)")
    return DgAlgebra(alg, {})


_CONWAY = {(2, 2): (1, 1), (3, 2): (1, 0), (5, 2): (3, 0), (2, 3): (1, 1, 0), (7, 2): (1, 0)}


def _irreducible(p: int, k: int) -> Tuple[int, ...]:
    """Low-order coefficients (c0..c_{k-1}) of a monic irreducible of degree k over F_p."""
    if (p, k) in _CONWAY:
        return _CONWAY[(p, k)]
    for coeffs in iproduct(range(p), repeat=k):
        if coeffs[0] == 0:
            continue
        # brute-force irreducibility: no monic factor of degree <= k/2
        poly = list(coeffs) + [1]
        if all(_poly_mod(poly, list(f) + [1], p) for d in range(1, k // 2 + 1)
               for f in iproduct(range(p), repeat=d)):
            return coeffs
    raise ValueError(f"no irreducible polynomial of degree {k} over F_{p}")


def _poly_mod(a, m, p):
    a = list(a)
    while len(a) >= len(m):
        c = a[-1]
        if c:
            s = len(a) - len(m)
            for i, x in enumerate(m):
                a[s + i] = (a[s + i] - c * x) % p
        a.pop()
    return any(a)


def finite_field(p: int, k: int = 2) -> GradedAlgebra:
    """F_{p^k} = F_p[u]/(f) as a degree-0 algebra over F_p, labels 1, u, u^2, ..."""
    F = GF(p)
    low = _irreducible(p, k)
    labels = ["1"] + [("u" if i == 1 else f"u^{i}") for i in range(1, k)]

    def reduce(power_coeffs):
        # power_coeffs: list of coefficients of u^0..u^(2k-2)
        c = list(power_coeffs)
        for top in range(len(c) - 1, k - 1, -1):
            t = c[top]
            if t:
                for i, a in enumerate(low):
                    c[top - k + i] = (c[top - k + i] - t * a) % p
                c[top] = 0
        return {(labels[i], 0): c[i] % p for i in range(k) if c[i] % p}

    prods = {}
    for i in range(k):
        for j in range(k):
            c = [0] * (2 * k - 1)
            c[i + j] = 1
            prods[(labels[i], labels[j])] = reduce(c)
    return GradedAlgebra(F, GradedBasis(tuple(labels), (0,) * k), prods, {("1", 0): 1}, name=f"F{p**k}")


def frobenius(R: GradedAlgebra) -> Dict[str, Vector]:
    """x -> x^p on the basis of a finite field presented as an F_p-algebra."""
    p = R.field.characteristic
    return {lab: R.power(R.e(lab), p) for lab in R.labels}


def apply_linear(F: Field, images: Mapping[str, Mapping], v: Mapping) -> Vector:
    out: Vector = {}
    for (lab, e), c in v.items():
        add_into(F, out, shift(images[lab], e), c)
    return out


# -- twisted Laurent rings ----------------------------------------------------------

@dataclass
class TwistedLaurentSpec:
    coefficients: object          # Field or degree-0 GradedAlgebra (R0)
    generator_degree: int
    automorphism: Optional[Dict[str, Vector]] = None   # None means identity
    order: int = 1
    name: str = ""


def twisted_laurent(spec: TwistedLaurentSpec) -> GradedAlgebra:
    """R0[X, X^-1; phi] with ``X r = phi(r) X``, period unit ``X^order``."""
    R0 = as_graded(ground(spec.coefficients)) if isinstance(spec.coefficients, Field) else spec.coefficients
    F = R0.field
    g, m = spec.generator_degree, spec.order
    if g == 0:
        raise FormatError("generator degree must be nonzero")
    if any(d != 0 for d in R0.basis.degrees) or R0.period is not None:
        raise FormatError("coefficient ring must be concentrated in degree 0")
    phi = spec.automorphism or {lab: R0.e(lab) for lab in R0.labels}
    if m < 1:
        raise AutomorphismOrderError("order must be positive")

    def phi_pow(j, v):
        for _ in range(j):
            v = apply_linear(F, phi, v)
        return v

    for lab in R0.labels:
        if phi_pow(m, R0.e(lab)) != R0.e(lab):
            raise AutomorphismOrderError(f"phi^{m} != id on {lab}")
    for a, b in iproduct(R0.labels, repeat=2):
        if apply_linear(F, phi, R0.mul(R0.e(a), R0.e(b))) != R0.mul(phi[a], phi[b]):
            raise AutomorphismOrderError(f"phi is not multiplicative on ({a},{b})")
    unit_label = next(iter(R0.unit))[0] if len(R0.unit) == 1 else None

    def name(r, j):
        if j == 0:
            return r
        x = "X" if j == 1 else f"X^{j}"
        return x if r == unit_label else f"{r}{x}"

    pairs = [(name(r, j), g * j) for j in range(m) for r in R0.labels]
    basis = GradedBasis.of(pairs, g * m)
    prods = {}
    for j, l in iproduct(range(m), repeat=2):
        q, rem = divmod(j + l, m)
        for ri, rk in iproduct(R0.labels, repeat=2):
            coef = R0.mul(R0.e(ri), phi_pow(j, R0.e(rk)))
            prods[(name(ri, j), name(rk, l))] = {(name(r, rem), q): c for (r, _), c in coef.items()}
    unit = {(name(r, 0), 0): c for (r, _), c in R0.unit.items()}
    default = f"{R0.name or F}[X,X^-1" + (";phi]" if spec.automorphism else "]")
    return GradedAlgebra(F, basis, prods, unit, name=spec.name or default)


def laurent(F: Field, degree: int) -> GradedAlgebra:
    """K[X, X^-1] with |X| = degree (basis {1}, period unit X)."""
    return twisted_laurent(TwistedLaurentSpec(F, degree, name=f"{F}[X^±1] |X|={degree}"))


# -- acyclic dg-division algebras -----------------------------------------------------

@dataclass
class AcyclicDivisionSpec:
    cycles: GradedAlgebra
    derivation: Optional[Dict[str, Vector]] = None   # D on C, degree -1; None means 0
    w: Vector = field(default_factory=dict)          # y^2, degree -2
    name: str = ""


def _check_acyclic_spec(spec: AcyclicDivisionSpec) -> Report:
    C = spec.cycles
    F = C.field
    D = spec.derivation or {}
    Dv = lambda v: apply_linear(F, {l: D.get(l, {}) for l in C.labels}, v)
    rep = Report("acyclic-division data")
    wd = C.degree_of(spec.w)
    rep.add("w-degree", not spec.w or wd == -2, f"|w| = {wd}")
    bad = [l for l in C.labels if D.get(l) and C.degree_of(D[l]) != C.basis.degree(l) - 1]
    rep.add("D-degree", not bad, ", ".join(bad))
    bad = []
    for x, y in iproduct(sample_keys(C.basis), repeat=2):
        u, v = {x: F.one}, {y: F.one}
        rhs = C.mul(Dv(u), v)
        add_into(F, rhs, C.mul(u, Dv(v)), F(koszul(C.deg(x), 1)))
        if Dv(C.mul(u, v)) != rhs:
            bad.append(f"({x},{y})")
    rep.add("D-derivation", not bad, ", ".join(bad[:3]))
    rep.add("D(w)=0", not Dv(spec.w))
    bad = []
    for x in sample_keys(C.basis):
        u = {x: F.one}
        comm = vsub(F, C.mul(spec.w, u), C.mul(u, spec.w))
        if Dv(Dv(u)) != comm:
            bad.append(str(x))
    rep.add("D^2=[w,-]", not bad, ", ".join(bad[:3]))
    if C.period is not None and C.period % 2 and F.characteristic != 2:
        rep.add("period-even", False, "a period unit of odd degree cannot be central next to y")
    return rep


def acyclic_division_from_cycles(spec: AcyclicDivisionSpec) -> DgAlgebra:
    """The algebra C + yC with y^2 = w, d(b + y a) = a and ``y a = (-1)^|a| a y + D(a)``."""
    C = spec.cycles
    F = C.field
    rep = _check_acyclic_spec(spec)
    if not rep.passed:
        raise ConsistencyError(str(rep))
    D = spec.derivation or {}
    Dv = lambda v: apply_linear(F, {l: D.get(l, {}) for l in C.labels}, v)
    unit_label = next(iter(C.unit))[0] if len(C.unit) == 1 else None
    yname = {l: ("y" if l == unit_label else f"y{l}") for l in C.labels}
    if set(yname.values()) & set(C.labels):
        raise FormatError("labels of C clash with generated y-labels")
    sgn = lambda n: F.one if n % 2 == 0 else F.neg(F.one)

    def as_y(v):
        return {(yname[l], e): c for (l, e), c in v.items()}

    prods = {}
    for i, j in iproduct(C.labels, repeat=2):
        ci, cj = C.e(i), C.e(j)
        di = C.basis.degree(i)
        prods[(i, j)] = C.mul(ci, cj)
        # b1 * (y a2) = (-1)^|b1| y b1 a2 - (-1)^|b1| D(b1) a2
        v = scale(F, F.neg(sgn(di)), C.mul(Dv(ci), cj))
        add_into(F, v, as_y(C.mul(ci, cj)), sgn(di))
        prods[(i, yname[j])] = v
        # (y a1) * b2 = y a1 b2
        prods[(yname[i], j)] = as_y(C.mul(ci, cj))
        # (y a1)(y a2) = (-1)^|a1| w a1 a2 - (-1)^|a1| y D(a1) a2
        v = scale(F, sgn(di), C.mul(spec.w, C.mul(ci, cj)))
        add_into(F, v, as_y(C.mul(Dv(ci), cj)), F.neg(sgn(di)))
        prods[(yname[i], yname[j])] = v
    pairs = [(l, C.basis.degree(l)) for l in C.labels] + [(yname[l], C.basis.degree(l) - 1) for l in C.labels]
    basis = GradedBasis.of(pairs, C.period)
    name = spec.name or f"{C.name}<y>"
    alg = GradedAlgebra(F, basis, prods, dict(C.unit), name=name)
    diff = {yname[l]: C.e(l) for l in C.labels}
    dg = DgAlgebra(alg, diff)
    chk = validate_dg(dg)
    if not chk.passed:
        raise ConsistencyError(str(chk))
    return dg


# -- dg-extensions ------------------------------------------------------------------

@dataclass(eq=False)
class DgExtension:
    """A unital degree-0 dg-map ``phi: source -> target`` with a left basis.

    ``images`` gives phi on the source labels, ``period_image`` is phi of the
    source period unit. ``left_basis`` lists homogeneous target elements
    ``m_1..m_r`` such that every target element is uniquely ``sum phi(a_t) m_t``.
    """

    source: DgAlgebra
    target: DgAlgebra
    images: Dict[str, Vector]
    left_basis: List[Vector]
    period_image: Optional[Vector] = None
    name: str = ""
    _cache: Dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.source, self.target = as_dg(self.source), as_dg(self.target)
        if self.source.field != self.target.field:
            raise FormatError("source and target must share the ground field")
        if (self.source.period is None) != (self.target.period is None):
            raise FormatError("source and target must both be periodic or both aperiodic")
        A_g, B_g = self.source.period, self.target.period
        if A_g is not None and self.period_image is None and A_g % B_g == 0 and A_g // B_g > 0:
            self.period_image = shift(self.target.unit, A_g // B_g)
        if A_g is not None and self.period_image is None:
            raise FormatError("periodic source needs the image of its period unit")
        missing = [l for l in self.source.basis.labels if l not in self.images]
        if missing:
            raise FormatError(f"map undefined on {missing}")

    @property
    def field(self) -> Field:
        return self.source.field

    @property
    def rank(self) -> int:
        return len(self.left_basis)

    def basis_degrees(self) -> List[int]:
        out = []
        for m in self.left_basis:
            d = self.target.algebra.degree_of(m)
            if d is None:
                raise FormatError("left basis elements must be nonzero and homogeneous")
            out.append(d)
        return out

    def _z_power(self, e: int) -> Vector:
        key = ("zpow", e)
        if key not in self._cache:
            B = self.target.algebra
            if e >= 0:
                self._cache[key] = B.power(self.period_image, e)
            else:
                self._cache[key] = B.power(B.inverse(self.period_image), -e)
        return self._cache[key]

    def phi(self, v: Mapping) -> Vector:
        F, B = self.field, self.target.algebra
        out: Vector = {}
        for (lab, e), c in v.items():
            im = self.images[lab]
            if e:
                im = B.mul(im, self._z_power(e))
            add_into(F, out, im, c)
        return out

    def _solver(self, k: int):
        key = ("deg", k)
        if key not in self._cache:
            F, A, B = self.field, self.source, self.target.algebra
            cols_keys, cols = [], []
            for t, (m, dm) in enumerate(zip(self.left_basis, self.basis_degrees())):
                for a in A.component(k - dm):
                    cols_keys.append((t, a))
                    cols.append(B.mul(self.phi({a: F.one}), m))
            tkeys = B.component(k)
            if len(cols) != len(tkeys):
                raise FreenessError(k, f"degree {k}: {len(cols)} source coordinates for {len(tkeys)} target dimensions")
            M = linalg.transpose([to_column(F, tkeys, c) for c in cols], len(tkeys)) if cols else []
            try:
                inv = linalg.inverse(F, M) if M else []
            except NoSolution:
                raise FreenessError(k) from None
            self._cache[key] = (cols_keys, tkeys, inv)
        return self._cache[key]

    def decompose(self, b: Mapping) -> List[Vector]:
        """Unique source coefficients ``a_t`` with ``b = sum phi(a_t) m_t``."""
        F = self.field
        out: List[Vector] = [{} for _ in self.left_basis]
        for k, part in split_by_degree(self.target.basis, b).items():
            cols_keys, tkeys, inv = self._solver(k)
            x = linalg.mat_vec(F, inv, to_column(F, tkeys, part))
            for (t, a), c in zip(cols_keys, x):
                add_term(F, out[t], a, c)
        return out

    def recompose(self, coeffs: Sequence[Mapping]) -> Vector:
        F, B = self.field, self.target.algebra
        out: Vector = {}
        for a, m in zip(coeffs, self.left_basis):
            if a:
                add_into(F, out, B.mul(self.phi(a), m))
        return out

    def freeness_window(self) -> range:
        A, B = self.source.basis, self.target.basis
        if A.period is not None:
            return range(0, abs(A.period))
        degs = list(B.degrees) + [da + dm for da in A.degrees for dm in self.basis_degrees()]
        return range(min(degs), max(degs) + 1) if degs else range(0)

    def __repr__(self):
        return f"DgExtension({self.name or '?'}: {self.source.name} -> {self.target.name}, rank {self.rank})"


def validate_extension(ext: DgExtension) -> Report:
    F, A, B = ext.field, ext.source, ext.target
    rep = Report(f"extension {ext.name}".strip(), window=ext.freeness_window())
    rep.add("unital", ext.phi(A.unit) == B.unit)
    bad = [l for l in A.basis.labels
           if ext.images[l] and B.algebra.degree_of(ext.images[l]) != A.basis.degree(l)]
    rep.add("degree-0", not bad, ", ".join(bad))
    if A.period is not None:
        z = ext.period_image
        rep.add("period-image-degree", B.algebra.degree_of(z) == A.period)
        rep.add("period-image-central", all(B.mul(z, B.algebra.e(l)) == B.mul(B.algebra.e(l), z)
                                            for l in B.basis.labels))
        rep.add("period-image-invertible", B.algebra.is_invertible(z))
        rep.add("period-image-cycle", not B.d(z))
    bad = []
    for a, b in iproduct(A.basis.labels, repeat=2):
        u, v = A.algebra.e(a), A.algebra.e(b)
        try:
            ok = ext.phi(A.mul(u, v)) == B.mul(ext.phi(u), ext.phi(v))
        except NoSolution:
            ok = False
        if not ok:
            bad.append(f"({a},{b})")
    rep.add("multiplicative", not bad, ", ".join(bad[:3]))
    bad = [l for l in A.basis.labels if ext.phi(A.d(A.algebra.e(l))) != B.d(ext.images[l])]
    rep.add("commutes-with-d", not bad, ", ".join(bad))
    try:
        ext.basis_degrees()
        homog = True
    except FormatError:
        homog = False
    rep.add("left-basis-homogeneous", homog)
    if homog:
        bad = []
        for k in ext.freeness_window():
            try:
                ext._solver(k)
            except FreenessError as exc:
                bad.append(str(exc))
        rep.add("left-basis-free", not bad, "; ".join(bad[:2]))
    return rep


def make_extension(source, target, images, left_basis=None, period_image=None, name="") -> DgExtension:
    """Build an extension; without ``left_basis`` one is found greedily."""
    source, target = as_dg(source), as_dg(target)
    ext = DgExtension(source, target, images, list(left_basis or []), period_image, name)
    if left_basis is None:
        ext.left_basis = greedy_left_basis(ext)
        ext._cache.clear()
    return ext


def greedy_left_basis(ext: DgExtension) -> List[Vector]:
    """Extend a left basis degree by degree (sound when the source is gr-division)."""
    F, A, B = ext.field, ext.source, ext.target.algebra
    chosen: List[Vector] = []
    degs: List[int] = []
    A_b = A.basis
    if A_b.period is not None:
        window = range(0, abs(A_b.period))
    else:
        window = B.basis.support()
    for k in window:
        tkeys = B.component(k)
        span = []
        for m, dm in zip(chosen, degs):
            for a in A.component(k - dm):
                span.append(to_column(F, tkeys, B.mul(ext.phi({a: F.one}), m)))
        r = linalg.rank(F, span, len(tkeys))
        for key in tkeys:
            col = to_column(F, tkeys, {key: F.one})
            if linalg.rank(F, span + [col], len(tkeys)) > r:
                m = {key: F.one}
                chosen.append(m)
                degs.append(k)
                span = span + [to_column(F, tkeys, B.mul(ext.phi({a: F.one}), m)) for a in A.component(0)]
                r = linalg.rank(F, span, len(tkeys))
    return chosen


def identity_extension(dg) -> DgExtension:
    dg = as_dg(dg)
    images = {l: dg.algebra.e(l) for l in dg.basis.labels}
    z = shift(dg.unit, 1) if dg.period is not None else None
    return DgExtension(dg, dg, images, [dict(dg.unit)], z, name=f"id {dg.name}")


def base_extension(dg) -> DgExtension:
    """(K, 0) -> dg, or (K[z, z^-1], 0) -> dg when dg carries a period unit."""
    dg = as_dg(dg)
    F = dg.field
    if dg.period is None:
        src = ground(F)
        z = None
    else:
        src = as_dg(laurent(F, dg.period))
        z = shift(dg.unit, 1)
    images = {"1": dict(dg.unit)}
    lb = [dg.algebra.e(l) for l in dg.basis.labels]
    return DgExtension(src, dg, images, lb, z, name=f"{src.name} -> {dg.name}")


def scalar_extension(dg, k: int = 2) -> DgExtension:
    """dg -> F_{p^k} (x) dg, the base change along a finite field extension."""
    dg = as_dg(dg)
    F = dg.field
    R = finite_field(F.characteristic, k)
    A = dg.algebra
    runit = next(iter(R.unit))[0]
    aunit = next(iter(A.unit))[0] if len(A.unit) == 1 else None

    def name(r, a):
        if r == runit:
            return a
        return r if a == aunit else f"{r}{a}"

    pairs = [(name(r, a), A.basis.degree(a)) for r in R.labels for a in A.labels]
    if len({p[0] for p in pairs}) != len(pairs):
        raise FormatError("label clash in scalar extension")
    basis = GradedBasis.of(pairs, A.period)
    prods = {}
    for r1, a1, r2, a2 in iproduct(R.labels, A.labels, R.labels, A.labels):
        rr = R.mul(R.e(r1), R.e(r2))
        aa = A.mul(A.e(a1), A.e(a2))
        v: Vector = {}
        for (r, _), c in rr.items():
            for (a, e), c2 in aa.items():
                add_term(F, v, (name(r, a), e), F.mul(c, c2))
        prods[(name(r1, a1), name(r2, a2))] = v
    unit = {(name(runit, a), e): c for (a, e), c in A.unit.items()}
    alg = GradedAlgebra(F, basis, prods, unit, name=f"{R.name}(x){A.name}")
    diff = {}
    for r in R.labels:
        for a, v in dg.differential.items():
            diff[name(r, a)] = {(name(r, b), e): c for (b, e), c in v.items()}
    target = DgAlgebra(alg, diff)
    images = {a: {(name(runit, a), 0): F.one} for a in A.labels}
    lb = [{(name(r, a), e): c for (a, e), c in A.unit.items()} for r in R.labels]
    z = shift(unit, 1) if A.period is not None else None
    return DgExtension(dg, target, images, lb, z, name=f"{dg.name} -> {alg.name}")


def tensor_product(left, right, name: str = "") -> DgAlgebra:
    """``left (x)_K right`` with ``(a(x)b)(a'(x)b') = (-1)^{|b||a'|} aa'(x)bb'``.

    At most one factor may carry a period; an odd period is refolded to an even
    one first so that the period unit stays central.
    """
    X, Y = as_dg(left), as_dg(right)
    if X.field != Y.field:
        raise FormatError("tensor factors live over different fields")
    if X.period is not None and Y.period is not None:
        raise FormatError("tensor product of two periodic algebras is not supported")
    if X.period is not None and X.period % 2:
        X = refold(X, 2)
    if Y.period is not None and Y.period % 2:
        Y = refold(Y, 2)
    F = X.field
    A, B = X.algebra, Y.algebra
    per = next((g for g in (A.period, B.period) if g is not None), None)

    def lab(a, b):
        return f"{a}.{b}"

    def glue(u, v, c0):
        out: Vector = {}
        for (a, e1), c1 in u.items():
            for (b, e2), c2 in v.items():
                add_term(F, out, (lab(a, b), e1 + e2), F.mul(c0, F.mul(c1, c2)))
        return out

    pairs = [(lab(a, b), A.basis.degree(a) + B.basis.degree(b)) for a in A.labels for b in B.labels]
    basis = GradedBasis.of(pairs, per)
    prods = {}
    for a1, b1, a2, b2 in iproduct(A.labels, B.labels, A.labels, B.labels):
        sign = F(koszul(B.basis.degree(b1), A.basis.degree(a2)))
        v = glue(A.mul(A.e(a1), A.e(a2)), B.mul(B.e(b1), B.e(b2)), sign)
        if v:
            prods[(lab(a1, b1), lab(a2, b2))] = v
    alg = GradedAlgebra(F, basis, prods, glue(A.unit, B.unit, F.one),
                        name=name or f"({A.name})(x)({B.name})")
    diff = {}
    for a in A.labels:
        for b in B.labels:
            v = glue(X.d(A.e(a)), B.e(b), F.one)
            add_into(F, v, glue(A.e(a), Y.d(B.e(b)), F.one), F(koszul(A.basis.degree(a), 1)))
            if v:
                diff[lab(a, b)] = v
    return DgAlgebra(alg, diff)


def laurent_pair(F: Field, n: int, degree: int = 2, acyclic: bool = False) -> DgExtension:
    """K[T^n, T^-n] -> K[T, T^-1] with |T| = degree, optionally with y adjoined on both sides."""
    small = laurent(F, n * degree)
    big = laurent(F, degree)
    small.name = f"{F}[T^±{n}]" if n != 1 else f"{F}[T^±1]"
    big.name = f"{F}[T^±1]"
    if acyclic:
        A = acyclic_division_from_cycles(AcyclicDivisionSpec(small, name=f"{small.name}<y>"))
        B = acyclic_division_from_cycles(AcyclicDivisionSpec(big, name=f"{big.name}<y>"))
        images = {"1": {("1", 0): F.one}, "y": {("y", 0): F.one}}
    else:
        A, B = as_dg(small), as_dg(big)
        images = {"1": {("1", 0): F.one}}
    lb = [{("1", j): F.one} for j in range(n)]
    return DgExtension(A, B, images, lb, {("1", n): F.one}, name=f"{A.name} -> {B.name}")


def cycle_inclusion(dg, name: str = "") -> DgExtension:
    """The inclusion ``(ker d, 0) -> dg`` with a greedily chosen left basis."""
    dg = as_dg(dg)
    cyc = cycles(dg)
    z = shift(dg.unit, 1) if dg.period is not None else None
    return make_extension(cyc.dg, dg, dict(cyc.embedding), None, z, name=name or f"ker d -> {dg.name}")

# -- the tensor bimodule B (x)_A B ------------------------------------------------------

TKey = Tuple[int, str, int]


@dataclass(eq=False)
class TensorBimodule:
    """``B (x)_A B`` in coordinates ``sum_t x_t (x) m_t`` over the left basis.

    Keys are ``(t, label, e)`` meaning ``(label z^e) (x) m_t``.
    """

    ext: DgExtension
    _cache: Dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.B = self.ext.target.algebra
        self.dB = self.ext.target
        self.F = self.ext.field
        self.mdeg = self.ext.basis_degrees()
        for k in self.ext.freeness_window():
            self.ext._solver(k)

    def component(self, k: int) -> List[TKey]:
        out = []
        for t, dm in enumerate(self.mdeg):
            out.extend((t, lab, e) for lab, e in self.B.component(k - dm))
        return out

    def degree(self, key: TKey) -> int:
        return self.B.deg((key[1], key[2])) + self.mdeg[key[0]]

    def _attach(self, F, out, x: Mapping, t: int, c):
        for (lab, e), a in x.items():
            add_term(F, out, (t, lab, e), F.mul(c, a))

    def _move(self, x: Mapping, b: Mapping, c, out):
        """``out += c * x (x) b`` for ``x, b`` in B."""
        F = self.F
        for s, a in enumerate(self.ext.decompose(b)):
            if a:
                self._attach(F, out, self.B.mul(x, self.ext.phi(a)), s, c)

    def pure(self, x: Mapping, y: Mapping) -> Vector:
        out: Vector = {}
        self._move(x, y, self.F.one, out)
        return out

    def x_part(self, elem: Mapping, t: int) -> Vector:
        return {(lab, e): c for (s, lab, e), c in elem.items() if s == t}

    def d(self, elem: Mapping) -> Vector:
        F = self.F
        out: Vector = {}
        for (t, lab, e), c in elem.items():
            x = {(lab, e): F.one}
            self._attach(F, out, self.dB.d(x), t, c)
            dm = self.dB.d(self.ext.left_basis[t])
            if dm:
                sign = c if self.B.deg((lab, e)) % 2 == 0 else F.neg(c)
                self._move(x, dm, sign, out)
        return out

    def left(self, b: Mapping, elem: Mapping) -> Vector:
        F = self.F
        out: Vector = {}
        for (t, lab, e), c in elem.items():
            self._attach(F, out, self.B.mul(b, {(lab, e): F.one}), t, c)
        return out

    def right(self, elem: Mapping, b: Mapping) -> Vector:
        F = self.F
        out: Vector = {}
        for (t, lab, e), c in elem.items():
            self._move({(lab, e): F.one}, self.B.mul(self.ext.left_basis[t], b), c, out)
        return out

    def mu(self, elem: Mapping) -> Vector:
        F = self.F
        out: Vector = {}
        for (t, lab, e), c in elem.items():
            add_into(F, out, self.B.mul({(lab, e): F.one}, self.ext.left_basis[t]), c)
        return out

    def window(self) -> range:
        g = self.B.period
        if g is None:
            lo = min(self.B.basis.degrees) + min(self.mdeg)
            hi = max(self.B.basis.degrees) + max(self.mdeg)
            return range(lo, hi + 1)
        return range(0, abs(g))

    def dimensions(self, window=None) -> Dict[int, int]:
        return {k: len(self.component(k)) for k in (window or self.window())}


def tensor_over_source(ext: DgExtension) -> TensorBimodule:
    return TensorBimodule(ext)


def validate_tensor(T: TensorBimodule, window=None) -> Report:
    F, B = T.F, T.B
    window = window or T.window()
    rep = Report("B (x)_A B", window=window)
    gens = [B.e(l, e) for l in B.labels for e in B.basis.exponents()]
    keys = [k for n in window for k in T.component(n)]
    one = F.one
    bad_d2, bad_comm, bad_leib, bad_mu = [], [], [], []
    for key in keys:
        xi = {key: one}
        if T.d(T.d(xi)):
            bad_d2.append(key)
        dxi = T.d(xi)
        if T.mu(dxi) != T.dB.d(T.mu(xi)):
            bad_mu.append(key)
        n = T.degree(key)
        for b in gens:
            if T.right(T.left(b, xi), b) != T.left(b, T.right(xi, b)):
                bad_comm.append(key)
            db = T.dB.d(b)
            nb = B.degree_of(b)
            lhs = T.d(T.left(b, xi))
            rhs = T.left(db, xi)
            add_into(F, rhs, T.left(b, dxi), F(koszul(nb, 1)))
            if lhs != rhs:
                bad_leib.append(("left", key))
            lhs = T.d(T.right(xi, b))
            rhs = T.right(dxi, b)
            add_into(F, rhs, T.right(xi, db), F(koszul(n, 1)))
            if lhs != rhs:
                bad_leib.append(("right", key))
    rep.add("d-squared-zero", not bad_d2, str(bad_d2[:2]))
    rep.add("actions-commute", not bad_comm, str(bad_comm[:2]))
    rep.add("bimodule-leibniz", not bad_leib, str(bad_leib[:2]))
    rep.add("mu-commutes-with-d", not bad_mu, str(bad_mu[:2]))
    return rep


def multiplication_map(T: TensorBimodule, window=None) -> GradedLinearMap:
    window = window or T.window()
    return GradedLinearMap.from_function(T.F, lambda k: T.mu({k: T.F.one}), 0, T.component,
                                         T.B.component, window)
