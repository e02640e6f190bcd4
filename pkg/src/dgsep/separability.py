"""Deciding dg-separability and classifying (dg-)division algebras.

The decision procedure looks for a Casimir element: a degree-0 cycle
``omega`` of ``B (x)_A B`` with ``b omega = omega b`` for all ``b`` and
``mu(omega) = 1``. Its existence is a single linear system over the ground
field, so both verdicts come with an exact certificate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct
from math import gcd
from typing import Dict, List, Mapping, Optional, Tuple

from . import linalg
from .algebra import (Cycles, GradedAlgebra, as_dg, as_graded, cycles, homology,
                      is_graded_commutative)
from .constructions import DgExtension, TensorBimodule, greedy_left_basis, tensor_over_source
from .errors import ClosureEscape, HypothesisUnverified, NoSolution, WindowTooSmall
from .fields import characteristic_is_invertible
from .graded import GradedLinearMap, Vector, matrix_of, to_column, vsub
from .report import Report

SEPARABLE = "SEPARABLE"
NOT_SEPARABLE = "NOT_SEPARABLE"
THEOREM_SILENT = "THEOREM_SILENT"


def default_generators(ext: DgExtension) -> List[Tuple[str, Vector]]:
    """Basis labels of the target plus z and z^-1; they generate it as an algebra."""
    B = ext.target.algebra
    gens = [(lab, B.e(lab)) for lab in B.labels]
    if B.period is not None:
        gens += [("z", B.period_unit()), ("z^-1", B.inverse(B.period_unit()))]
    return gens


@dataclass
class CasimirCertificate:
    extension: DgExtension
    omega: Vector
    generators: List[Tuple[str, Vector]]
    witnesses: Report
    verdict: str = SEPARABLE
    justification: str = "centrality checked on a set of algebra generators of the target"

    @property
    def separable(self) -> bool:
        return True

    def terms(self) -> List[Tuple[Vector, Vector, object]]:
        """``omega`` as a list of ``(x, m_t, coefficient)``."""
        F = self.extension.field
        return [({(lab, e): F.one}, self.extension.left_basis[t], c) for (t, lab, e), c in self.omega.items()]

    def __str__(self):
        parts = [f"{c}*({lab}z^{e} (x) m{t})" for (t, lab, e), c in self.omega.items()]
        return f"{SEPARABLE}\nomega = " + " + ".join(parts) + "\n" + str(self.witnesses)


@dataclass
class NotSeparable:
    extension: DgExtension
    dimension: int
    rank: int
    augmented_rank: int
    witness: List
    rows: List
    verdict: str = NOT_SEPARABLE

    @property
    def separable(self) -> bool:
        return False

    def transcript(self) -> str:
        used = [(r, c) for r, c in zip(self.rows, self.witness or []) if c != 0]
        lines = [f"degree-0 component of B (x)_A B has dimension {self.dimension}",
                 f"constraint rank {self.rank} < augmented rank {self.augmented_rank}: no solution",
                 "infeasibility witness (row combination annihilating all columns but not the right-hand side):"]
        for (tag, key), c in used:
            lines.append(f"  {c} * [{tag}] {key}")
        return "\n".join(lines)

    def __str__(self):
        return f"{NOT_SEPARABLE}\n{self.transcript()}"


def _casimir_system(T: TensorBimodule, gens):
    F = T.F
    keys0 = T.component(0)
    sys = linalg.LinearSystem(F, keys0)
    one = F.one
    sys.add(lambda k: T.d({k: one}), "d(omega)=0")
    for name, b in gens:
        sys.add(lambda k, b=b: vsub(F, T.left(b, {k: one}), T.right({k: one}, b)), f"{name}*omega=omega*{name}")
    sys.add(lambda k: T.mu({k: one}), "mu(omega)=1", rhs=T.B.unit)
    return sys


def find_casimir(ext: DgExtension, generators=None):
    """A ``CasimirCertificate`` or a ``NotSeparable`` infeasibility transcript."""
    T = tensor_over_source(ext)
    gens = generators or default_generators(ext)
    sys = _casimir_system(T, gens)
    try:
        omega = sys.solve()
    except NoSolution as exc:
        A, b = sys.matrix()
        assert linalg.check_witness(T.F, A, b, exc.witness, len(sys.unknowns))
        return NotSeparable(ext, len(sys.unknowns), exc.rank, exc.augmented_rank, exc.witness, sys.row_keys())
    rep = verify_casimir(ext, omega, gens)
    return CasimirCertificate(ext, omega, gens, rep)


def verify_casimir(ext: DgExtension, omega: Mapping, generators=None) -> Report:
    """Re-check the three Casimir conditions on ``omega`` element by element."""
    T = tensor_over_source(ext)
    F = T.F
    gens = generators or default_generators(ext)
    rep = Report("Casimir element")
    degs = {T.degree(k) for k in omega}
    rep.add("degree-0", degs <= {0}, f"degrees {sorted(degs)}")
    rep.add("d(omega)=0", not T.d(omega))
    mu = T.mu(omega)
    rep.add("mu(omega)=1", mu == T.B.unit, "" if mu == T.B.unit else f"mu(omega) = {mu}")
    for name, b in gens:
        rep.add(f"{name}*omega=omega*{name}", T.left(b, omega) == T.right(omega, b))
    return rep


def is_separable(ext: DgExtension) -> bool:
    return find_casimir(ext).separable


# -- gr-division classification -----------------------------------------------------

NOT_GR_DIVISION = "not-gr-division"
FIELD_DEGREE_0 = "field-concentrated-degree-0"
LAURENT_OVER_FIELD = "laurent-over-field"


@dataclass
class GrDivisionClassification:
    verdict: str
    degree_step: int = 0
    base_dimension: int = 0
    base_field: str = ""
    generator: Optional[Vector] = None
    window: Optional[range] = None
    reason: str = ""

    @property
    def is_gr_division(self) -> bool:
        return self.verdict != NOT_GR_DIVISION

    def __str__(self):
        s = f"{self.verdict}"
        if self.verdict == LAURENT_OVER_FIELD:
            s += f" (support {self.degree_step}Z, degree-0 field {self.base_field})"
        elif self.verdict == FIELD_DEGREE_0:
            s += f" ({self.base_field})"
        else:
            s += f" ({self.reason})"
        return s


def _degree0_is_field(A: GradedAlgebra) -> Tuple[bool, str]:
    F = A.field
    keys = A.component(0)
    n = len(keys)
    if n == 0:
        return False, "degree-0 component is zero"
    if n == 1:
        return True, f"{F}"
    if not F.is_finite:
        raise HypothesisUnverified("deciding field-ness of a degree-0 component of dimension > 1 over Q "
                                   "is not supported")
    if F.characteristic ** n > 200_000:
        raise HypothesisUnverified("degree-0 component too large for exhaustive field check")
    for coeffs in iproduct(range(F.characteristic), repeat=n):
        if not any(coeffs):
            continue
        x = {k: c for k, c in zip(keys, coeffs) if c}
        M = matrix_of(F, lambda k: A.mul(x, {k: F.one}), keys, keys)
        if linalg.rank(F, M, n) < n:
            return False, f"zero divisor {x} in degree 0"
    return True, f"F{F.characteristic ** n}"


def classify_gr_division(alg, window: Optional[range] = None) -> GrDivisionClassification:
    A = as_graded(alg)
    if not is_graded_commutative(A):
        raise HypothesisUnverified("classification assumes a graded-commutative algebra")
    g = A.period
    if window is None:
        window = range(-abs(g), abs(g)) if g else A.basis.support()
    if g and len(window) < 2 * abs(g):
        raise WindowTooSmall(f"window {window} covers fewer than two periods of {g}")
    is_field, desc = _degree0_is_field(A)
    dim0 = len(A.component(0))
    if not is_field:
        return GrDivisionClassification(NOT_GR_DIVISION, window=window, reason=desc)
    support = [n for n in window if A.component(n)]
    if not g:
        support = [n for n in A.basis.support() if A.component(n)]
    for n in support:
        u = A.e(*A.component(n)[0])
        if not A.is_invertible(u):
            return GrDivisionClassification(NOT_GR_DIVISION, window=window,
                                            reason=f"{A.component(n)[0]} of degree {n} is not invertible")
        if len(A.component(n)) != dim0:
            return GrDivisionClassification(NOT_GR_DIVISION, window=window,
                                            reason=f"degree {n} is not of rank 1 over degree 0")
    nonzero = [n for n in support if n != 0]
    if not nonzero:
        return GrDivisionClassification(FIELD_DEGREE_0, 0, dim0, desc, dict(A.unit), window)
    step = 0
    for n in nonzero:
        step = gcd(step, n)
    expected = [n for n in window if n % step == 0] if g else None
    if g and support != expected:
        return GrDivisionClassification(NOT_GR_DIVISION, window=window,
                                        reason=f"supported degrees {support} are not {step}Z")
    gen = A.e(*A.component(step)[0])
    # every supported component is spanned over degree 0 by a power of the generator
    for n in support:
        p = A.power(gen, n // step)
        keys = A.component(n)
        cols = [to_column(A.field, keys, A.mul({k: A.field.one}, p)) for k in A.component(0)]
        if linalg.rank(A.field, cols, len(keys)) != len(keys):
            return GrDivisionClassification(NOT_GR_DIVISION, window=window,
                                            reason=f"degree {n} not generated by the power {n // step}")
    return GrDivisionClassification(LAURENT_OVER_FIELD, step, dim0, desc, gen, window)


@dataclass
class DgDivisionResult:
    is_division: bool
    classification: GrDivisionClassification
    cycles: Cycles
    acyclic: bool
    zero_differential: bool

    def __bool__(self):
        return self.is_division


def _homogeneous_elements(A: GradedAlgebra, n: int, limit: int = 4096):
    F, keys = A.field, A.component(n)
    if len(keys) <= 1:
        return [{k: F.one} for k in keys]
    if not F.is_finite or F.characteristic ** len(keys) > limit:
        return None
    out = []
    for coeffs in iproduct(range(F.characteristic), repeat=len(keys)):
        if any(coeffs):
            out.append({k: c for k, c in zip(keys, coeffs) if c})
    return out


def regularity_report(alg) -> Report:
    """Left-regular and right-regular homogeneous elements coincide.

    Decided by enumerating every homogeneous element of one fold (or of the
    support), so it is only available over F_p or for components of
    dimension at most 1; otherwise ``HypothesisUnverified`` is raised.
    """
    A = as_graded(alg)
    F = A.field
    window = A.basis.fold_window() if A.period is not None else A.basis.support()
    targets = A.basis.fold_window() if A.period is not None else A.basis.support()
    rep = Report("left and right regular elements coincide", window=window)

    def injective(fn, n):
        for m in targets:
            src, tgt = A.component(m), A.component(m + n)
            if not src:
                continue
            M = matrix_of(F, fn, src, tgt)
            if linalg.rank(F, M, len(src)) < len(src):
                return False
        return True

    bad = []
    for n in window:
        elems = _homogeneous_elements(A, n)
        if elems is None:
            raise HypothesisUnverified(f"degree {n} is too large to enumerate its homogeneous elements")
        for a in elems:
            left = injective(lambda k: A.mul(a, {k: F.one}), n)
            right = injective(lambda k: A.mul({k: F.one}, a), n)
            if left != right:
                bad.append(f"{a} (left {left}, right {right})")
    rep.add("regular-elements-coincide", not bad, "; ".join(bad[:3]))
    return rep


def is_dg_division(dg, window: Optional[range] = None) -> DgDivisionResult:
    """Cycles classified as gr-division; the regularity hypothesis is checked when not automatic."""
    dg = as_dg(dg)
    if not is_graded_commutative(dg) and not regularity_report(dg).passed:
        raise HypothesisUnverified("left and right regular homogeneous elements differ")
    cyc = cycles(dg)
    cls = classify_gr_division(cyc.algebra, window)
    return DgDivisionResult(cls.is_gr_division, cls, cyc, homology(dg).acyclic, dg.is_zero_differential())


# -- cycles of an extension ---------------------------------------------------------------

@dataclass
class InducedCycleExtension:
    extension: DgExtension
    source_cycles: Cycles
    target_cycles: Cycles
    report: Report
    ambient: DgExtension


def induced_cycle_extension(ext: DgExtension) -> InducedCycleExtension:
    """Restriction of the map to ``ker d_A -> ker d_B``, with a greedily found left basis."""
    ca, cb = cycles(ext.source), cycles(ext.target)
    rep = Report("induced cycle extension")
    images, bad = {}, []
    for lab in ca.algebra.labels:
        im = ext.phi(ca.embedding[lab])
        if ext.target.d(im):
            bad.append(lab)
            continue
        images[lab] = cb.coordinates(im)
    rep.add("lands-in-cycles", not bad, ", ".join(bad))
    if bad:
        raise ClosureEscape(f"images of {bad} are not cycles")
    z = None
    if ca.algebra.period is not None:
        z = cb.coordinates(ext.period_image)
    cext = DgExtension(ca.dg, cb.dg, images, [], z, name=f"ker d of {ext.name}")
    cext.left_basis = greedy_left_basis(cext)
    cext._cache.clear()
    return InducedCycleExtension(cext, ca, cb, rep, ext)


@dataclass
class CycleTensorInclusion:
    """The map ``ker d_B (x)_{ker d_A} ker d_B -> B (x)_A B`` degree by degree."""

    induced: InducedCycleExtension
    tensor: TensorBimodule
    cycle_tensor: TensorBimodule
    map: GradedLinearMap

    def injective(self) -> bool:
        return all(self.map.is_injective(n) for n in self.map.blocks)

    def image_rank(self, n: int) -> int:
        return self.map.rank(n)

    def contains(self, elem: Mapping) -> bool:
        """Whether a homogeneous element of ``B (x)_A B`` lies in the image."""
        F = self.tensor.F
        degs = {self.tensor.degree(k) for k in elem}
        for n in degs:
            part = {k: c for k, c in elem.items() if self.tensor.degree(k) == n}
            if n not in self.map.blocks:
                self._extend(n)
            try:
                linalg.solve(F, self.map.blocks[n], to_column(F, self.map.target_keys[n], part),
                             len(self.map.source_keys[n]))
            except NoSolution:
                return False
        return True

    def _extend(self, n):
        m = cycle_tensor_inclusion(self.induced, range(n, n + 1)).map
        self.map.blocks[n] = m.blocks[n]
        self.map.source_keys[n] = m.source_keys[n]
        self.map.target_keys[n] = m.target_keys[n]


def cycle_tensor_inclusion(ext_or_induced, window: Optional[range] = None) -> CycleTensorInclusion:
    ice = ext_or_induced if isinstance(ext_or_induced, InducedCycleExtension) \
        else induced_cycle_extension(ext_or_induced)
    cext = ice.extension
    T = tensor_over_source(ice.ambient)
    Tc = tensor_over_source(cext)
    F = T.F
    cb = ice.target_cycles

    def upsilon(key):
        s, lab, e = key
        x = cb.embed({(lab, e): F.one})
        m = cb.embed(cext.left_basis[s])
        return T.pure(x, m)

    window = window or T.window()
    gmap = GradedLinearMap.from_function(F, upsilon, 0, Tc.component, T.component, window)
    return CycleTensorInclusion(ice, T, Tc, gmap)


# -- the classification theorem harness ----------------------------------------------------

@dataclass
class MainTheoremReport:
    extension: DgExtension
    branch: str
    predicted: str
    computed: str
    characteristic: int
    details: Dict[str, object] = field(default_factory=dict)
    result: object = None

    @property
    def silent(self) -> bool:
        return self.predicted == THEOREM_SILENT

    @property
    def mismatch(self) -> bool:
        return not self.silent and self.predicted != self.computed

    def verdict_line(self) -> str:
        tag = THEOREM_SILENT if self.silent else ("MATCH" if not self.mismatch else "MISMATCH")
        return f"{self.extension.name}: branch={self.branch} predicted={self.predicted} computed={self.computed} [{tag}]"

    def __str__(self):
        lines = [self.verdict_line()]
        for k, v in self.details.items():
            lines.append(f"  {k}: {v}")
        return "\n".join(lines)


def _graded_prediction(src: GrDivisionClassification, tgt: GrDivisionClassification, F) -> Tuple[bool, dict]:
    """Graded-separability of ``D1[T^n] -> D2[T]`` (finite and prime fields are perfect)."""
    if src.verdict == FIELD_DEGREE_0 and tgt.verdict == FIELD_DEGREE_0:
        return True, {"n": 1, "field-extension": f"{src.base_field} -> {tgt.base_field} (separable: perfect base)"}
    if src.verdict == LAURENT_OVER_FIELD and tgt.verdict == LAURENT_OVER_FIELD:
        if src.degree_step % tgt.degree_step:
            raise HypothesisUnverified("degree supports are not nested")
        n = abs(src.degree_step // tgt.degree_step)
        inv = characteristic_is_invertible(F, n)
        return inv, {"n": n, "n-invertible": inv,
                     "field-extension": f"{src.base_field} -> {tgt.base_field} (separable: perfect base)"}
    raise HypothesisUnverified(f"unsupported cycle pair {src.verdict} -> {tgt.verdict}")


def check_main_theorem(ext: DgExtension) -> MainTheoremReport:
    """Predict the verdict from the classification and compare with ``find_casimir``."""
    F = ext.field
    A, B = ext.source, ext.target
    if not (is_graded_commutative(A) and is_graded_commutative(B)):
        raise HypothesisUnverified("both sides must be graded-commutative")
    da, db = is_dg_division(A), is_dg_division(B)
    if not (da.is_division and db.is_division):
        raise HypothesisUnverified("both sides must be dg-division algebras")
    char = F.characteristic
    details: Dict[str, object] = {"source cycles": str(da.classification), "target cycles": str(db.classification)}
    if da.zero_differential and db.zero_differential:
        branch = "zero-differential"
        sep, info = _graded_prediction(da.classification, db.classification, F)
        details.update(info)
        predicted = SEPARABLE if sep else NOT_SEPARABLE
    elif da.acyclic:
        branch = "acyclic-to-acyclic"
        details["target acyclic"] = db.acyclic
        ice = induced_cycle_extension(ext)
        sep, info = _graded_prediction(da.classification, db.classification, F)
        details.update(info)
        details["cycle extension left basis"] = len(ice.extension.left_basis)
        if sep:
            predicted = SEPARABLE
        else:
            predicted = NOT_SEPARABLE if char != 2 else THEOREM_SILENT
    elif da.zero_differential and db.acyclic:
        branch = "zero-to-acyclic"
        predicted = NOT_SEPARABLE if char != 2 else THEOREM_SILENT
    else:
        raise HypothesisUnverified("a dg-division algebra must have d = 0 or be acyclic")
    res = find_casimir(ext)
    return MainTheoremReport(ext, branch, predicted, res.verdict, char, details, res)
