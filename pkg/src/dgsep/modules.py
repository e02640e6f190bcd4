"""dg-modules, short exact sequences and their splittings.

Modules over a periodic algebra share its period: the period unit ``z`` acts
by shifting the exponent of a module key, so a module is presented by one
fold of labels, exactly like an algebra.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from . import linalg
from .algebra import Cycles, DgAlgebra, as_dg, cycles, homology, koszul, sample_keys
from .constructions import DgExtension
from .errors import CertificateInvalid, ClosureEscape, FormatError, NoSolution
from .graded import (GradedBasis, Key, Vector, add_into, add_term, from_column, scale, shift,
                     split_by_degree, to_column, vsub)
from .report import Report
from .separability import CasimirCertificate, default_generators, verify_casimir

SPLIT = "SPLIT"
NOT_SPLIT = "NOT_SPLIT"


def _refold_name(lab: str, j: int) -> str:
    return lab if j == 0 else f"{lab}*z^{j}"


@dataclass(eq=False)
class DgModule:
    """A left dg-module given by structure constants on basis labels.

    ``action[(a, m)]`` is ``a . m`` for algebra label ``a`` and module label
    ``m``; missing pairs act as zero. ``delta[m]`` is the differential.
    """

    algebra: DgAlgebra
    basis: GradedBasis
    action: Dict[Tuple[str, str], Vector]
    delta: Dict[str, Vector] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        self.algebra = as_dg(self.algebra)
        if self.basis.period != self.algebra.period:
            raise FormatError(f"module period {self.basis.period} differs from algebra period {self.algebra.period}")
        for (a, m), v in self.action.items():
            if a not in self.algebra.basis or m not in self.basis:
                raise FormatError(f"action entry ({a}, {m}) uses unknown labels")
            for k in v:
                if k[0] not in self.basis:
                    raise FormatError(f"action ({a}, {m}) refers to unknown label {k[0]}")
        for m, v in self.delta.items():
            if m not in self.basis:
                raise FormatError(f"differential on unknown label {m}")

    @property
    def field(self):
        return self.algebra.field

    @property
    def labels(self) -> Tuple[str, ...]:
        return self.basis.labels

    @property
    def period(self):
        return self.basis.period

    def component(self, n: int) -> List[Key]:
        return self.basis.component(n)

    def deg(self, key: Key) -> int:
        return self.basis.key_degree(key)

    def e(self, label: str, exp: int = 0) -> Vector:
        return {(label, exp): self.field.one}

    def act(self, a: Mapping, m: Mapping) -> Vector:
        F = self.field
        out: Vector = {}
        for (la, ea), ca in a.items():
            for (lm, em), cm in m.items():
                v = self.action.get((la, lm))
                if v:
                    add_into(F, out, shift(v, ea + em), F.mul(ca, cm))
        return out

    def d(self, m: Mapping) -> Vector:
        F = self.field
        out: Vector = {}
        for (lab, e), c in m.items():
            v = self.delta.get(lab)
            if v:
                add_into(F, out, shift(v, e), c)
        return out

    def is_zero_differential(self) -> bool:
        return not any(self.delta.values())

    def window(self) -> range:
        """One fold for periodic modules, the support otherwise."""
        if self.period is not None:
            return self.basis.fold_window(0)
        return self.basis.support()

    def dimensions(self, window=None) -> Dict[int, int]:
        return {n: len(self.component(n)) for n in (window or self.window())}

    def __repr__(self):
        return f"DgModule({self.name or '?'} over {self.algebra.name}, {len(self.labels)} labels)"


def validate_module(M: DgModule) -> Report:
    F, A = M.field, M.algebra
    rep = Report(f"dg-module {M.name}".strip())
    bad = [f"{a}.{m}" for (a, m), v in M.action.items()
           if v and any(M.deg(k) != A.basis.degree(a) + M.basis.degree(m) for k in v)]
    rep.add("action-degree", not bad, ", ".join(bad[:5]))
    bad = [m for m, v in M.delta.items() if any(M.deg(k) != M.basis.degree(m) + 1 for k in v)]
    rep.add("delta-degree+1", not bad, ", ".join(bad[:5]))
    mkeys, akeys = sample_keys(M.basis), sample_keys(A.basis)
    bad = [str(m) for m in mkeys if M.act(A.unit, {m: F.one}) != {m: F.one}]
    rep.add("unit-acts-as-identity", not bad, ", ".join(bad[:5]))
    bad = []
    for a in akeys:
        for b in akeys:
            ab = A.mul({a: F.one}, {b: F.one})
            for m in mkeys:
                mv = {m: F.one}
                if M.act(ab, mv) != M.act({a: F.one}, M.act({b: F.one}, mv)):
                    bad.append(f"({a},{b},{m})")
    rep.add("associative", not bad, ", ".join(bad[:5]))
    bad = [str(m) for m in mkeys if M.d(M.d({m: F.one}))]
    rep.add("delta-squared-zero", not bad, ", ".join(bad[:5]))
    bad = []
    for a in akeys:
        av = {a: F.one}
        sign = F(koszul(A.algebra.deg(a), 1))
        for m in mkeys:
            mv = {m: F.one}
            lhs = M.d(M.act(av, mv))
            rhs = add_into(F, M.act(A.d(av), mv), M.act(av, M.d(mv)), sign)
            if lhs != rhs:
                bad.append(f"({a},{m})")
    rep.add("leibniz", not bad, ", ".join(bad[:5]))
    return rep


# -- builders -------------------------------------------------------------------------------

def free_module(dg, shifts: Sequence[int] = (0,), name: str = "") -> DgModule:
    """``A e_1 + ... + A e_r`` with ``|e_i| = shifts[i]`` (the rank-1 case reuses the algebra labels)."""
    dg = as_dg(dg)
    A, F = dg.algebra, dg.field
    single = len(shifts) == 1 and shifts[0] == 0

    def lab(l, i):
        return l if single else f"{l}.{i}"

    pairs = [(lab(l, i), A.basis.degree(l) + s) for i, s in enumerate(shifts) for l in A.labels]
    basis = GradedBasis.of(pairs, A.period)

    def tag(v, i):
        return {(lab(l, i), e): c for (l, e), c in v.items()}

    action = {}
    for i in range(len(shifts)):
        for (a, b), v in A.products.items():
            if v:
                action[(a, lab(b, i))] = tag(v, i)
    # the Koszul sign of moving d past e_i does not arise: e_i is a cycle
    delta = {lab(l, i): tag(v, i) for i in range(len(shifts)) for l, v in dg.differential.items() if v}
    return DgModule(dg, basis, action, delta, name or (dg.name if single else f"free{list(shifts)}"))


def direct_sum(*mods: DgModule, tags: Sequence[str] = None, name: str = "") -> DgModule:
    if not mods:
        raise FormatError("empty direct sum")
    tags = list(tags or [str(i) for i in range(len(mods))])
    A = mods[0].algebra
    pairs, action, delta = [], {}, {}
    for t, M in zip(tags, mods):
        if M.algebra is not A and M.algebra.algebra is not A.algebra:
            raise FormatError("summands must live over the same algebra")
        ren = lambda v, t=t: {(f"{t}:{l}", e): c for (l, e), c in v.items()}
        pairs += [(f"{t}:{l}", M.basis.degree(l)) for l in M.labels]
        for (a, m), v in M.action.items():
            action[(a, f"{t}:{m}")] = ren(v)
        for m, v in M.delta.items():
            delta[f"{t}:{m}"] = ren(v)
    return DgModule(A, GradedBasis.of(pairs, A.period), action, delta,
                    name or " + ".join(M.name or "?" for M in mods))


def summand_maps(S: DgModule, mods: Sequence[DgModule], tags: Sequence[str] = None):
    """Inclusions into and projections out of a direct sum built by ``direct_sum``."""
    tags = list(tags or [str(i) for i in range(len(mods))])
    F = S.field
    incs, projs = [], []
    for t, M in zip(tags, mods):
        incs.append(ModuleMap(M, S, {l: {(f"{t}:{l}", 0): F.one} for l in M.labels}))
        projs.append(ModuleMap(S, M, {f"{t}:{l}": {(l, 0): F.one} for l in M.labels}))
    return incs, projs


@dataclass(eq=False)
class ModuleMap:
    """A map of modules given on source labels and extended along ``z``."""

    source: DgModule
    target: DgModule
    images: Dict[str, Vector]
    degree: int = 0

    def __call__(self, v: Mapping) -> Vector:
        F = self.source.field
        out: Vector = {}
        g = self.source.period
        for (lab, e), c in v.items():
            im = self.images.get(lab)
            if im:
                if e and g is not None and self.degree % 2 and (g * e) % 2:
                    c = F.neg(c)
                add_into(F, out, shift(im, e), c)
        return out

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """``self o other``."""
        return ModuleMap(other.source, self.target, {l: self(v) for l, v in other.images.items()},
                         self.degree + other.degree)

    def matrix(self, n: int):
        F = self.source.field
        src, tgt = self.source.component(n), self.target.component(n + self.degree)
        cols = [to_column(F, tgt, self({k: F.one})) for k in src]
        return linalg.transpose(cols, len(tgt)) if cols else [[] for _ in tgt], src, tgt


def check_module_map(f: ModuleMap, name: str = "map", generators=None) -> Report:
    """Degree, action-compatibility (with the Koszul sign of ``f``) and ``delta f = (-1)^|f| f delta``."""
    F = f.source.field
    A = f.source.algebra
    rep = Report(name)
    bad = [l for l, v in f.images.items()
           if any(f.target.deg(k) != f.source.basis.degree(l) + f.degree for k in v)]
    rep.add(f"{name}-degree", not bad, ", ".join(bad[:5]))
    mkeys = sample_keys(f.source.basis)
    gens = generators if generators is not None else [k for k in sample_keys(A.basis)]
    bad = []
    for a in gens:
        av = {a: F.one}
        sign = F(koszul(A.algebra.deg(a), f.degree))
        for m in mkeys:
            mv = {m: F.one}
            if f(f.source.act(av, mv)) != scale(F, sign, f.target.act(av, f(mv))):
                bad.append(f"({a},{m})")
    rep.add(f"{name}-linear", not bad, ", ".join(bad[:5]))
    sign = F(koszul(f.degree, 1))
    bad = [str(m) for m in mkeys
           if f.target.d(f({m: F.one})) != scale(F, sign, f(f.source.d({m: F.one})))]
    rep.add(f"{name}-commutes-with-delta", not bad, ", ".join(bad[:5]))
    return rep


# -- short exact sequences ------------------------------------------------------------------

@dataclass(eq=False)
class ShortExactSequence:
    L: DgModule
    M: DgModule
    N: DgModule
    f: ModuleMap
    g: ModuleMap
    name: str = ""

    @property
    def algebra(self) -> DgAlgebra:
        return self.M.algebra

    @property
    def field(self):
        return self.M.field

    def window(self) -> range:
        return self.M.window()


def validate_ses(s: ShortExactSequence) -> Report:
    F = s.field
    rep = Report(f"short exact sequence {s.name}".strip())
    for lab, mod in (("L", s.L), ("M", s.M), ("N", s.N)):
        rep.extend(validate_module(mod), f"{lab}:")
    rep.extend(check_module_map(s.f, "f"))
    rep.extend(check_module_map(s.g, "g"))
    window = s.window() if s.M.period is not None else range(
        min(s.L.window().start, s.M.window().start, s.N.window().start),
        max(s.L.window().stop, s.M.window().stop, s.N.window().stop))
    rep.window = window
    for n in window:
        Mf, _, tf = s.f.matrix(n)
        Mg, sg, tg = s.g.matrix(n)
        dl, dm, dn = len(s.L.component(n)), len(s.M.component(n)), len(s.N.component(n))
        rf = linalg.rank(F, Mf, dl) if dl else 0
        rg = linalg.rank(F, Mg, dm) if dm and dn else 0
        gf = s.g.compose(s.f)
        zero = all(not gf({k: F.one}) for k in s.L.component(n))
        if rf != dl:
            rep.add("f-injective", False, f"degree {n}: rank {rf} < {dl}")
        if rg != dn:
            rep.add("g-surjective", False, f"degree {n}: rank {rg} < {dn}")
        if not zero or dl + dn != dm:
            rep.add("exact-in-middle", False, f"degree {n}: dim L + dim N = {dl + dn}, dim M = {dm}")
    for name in ("f-injective", "g-surjective", "exact-in-middle"):
        if not any(c.name == name for c in rep.checks):
            rep.add(name, True)
    return rep


def split_sequence(X: DgModule, Y: DgModule, name: str = "") -> ShortExactSequence:
    """``0 -> X -> X + Y -> Y -> 0``."""
    S = direct_sum(X, Y, tags=("L", "N"))
    (i, _), (_, p) = summand_maps(S, [X, Y], ("L", "N"))
    return ShortExactSequence(X, S, Y, i, p, name or f"0 -> {X.name} -> {S.name} -> {Y.name} -> 0")


def submodule_sequence(M: DgModule, generators: Sequence[Mapping], name: str = "") -> ShortExactSequence:
    """``0 -> L -> M -> M/L -> 0`` for the dg-submodule ``L`` generated by homogeneous elements."""
    F, A = M.field, M.algebra
    akeys = [(l, 0) for l in A.labels]
    fold = M.window()
    # closure of the generators under the action and delta, per fold degree
    span: Dict[int, List[Vector]] = {}

    def fold_of(v):
        out = {}
        for n, part in split_by_degree(M.basis, v).items():
            if M.period is None:
                out[n] = part
            else:
                n0, e = M.basis.fold(n, fold.start)
                out[n0] = shift(part, -e)
        return out

    def insert(v) -> bool:
        added = False
        for n, part in fold_of(v).items():
            keys = M.component(n)
            cur = span.setdefault(n, [])
            cols = [to_column(F, keys, w) for w in cur]
            if linalg.rank(F, cols + [to_column(F, keys, part)], len(keys)) > len(cur):
                cur.append(part)
                added = True
        return added

    queue = [dict(g) for g in generators]
    while queue:
        v = queue.pop()
        if not insert(v):
            continue
        for a in akeys:
            queue.append(M.act({a: F.one}, v))
        queue.append(M.d(v))
    # L gets the spanning vectors, N a complement chosen among basis keys
    l_pairs, l_emb, n_pairs, n_keys = [], {}, [], {}
    for n in fold:
        keys = M.component(n)
        vecs = span.get(n, [])
        for i, v in enumerate(vecs):
            lab = f"l{n}_{i}".replace("-", "m")
            l_pairs.append((lab, n))
            l_emb[lab] = v
        cols = [to_column(F, keys, w) for w in vecs]
        r = len(vecs)
        for k in keys:
            c = to_column(F, keys, {k: F.one})
            if linalg.rank(F, cols + [c], len(keys)) > r:
                cols.append(c)
                r += 1
                lab = f"{k[0]}" if k[1] == 0 else f"{k[0]}^{k[1]}"
                n_pairs.append((lab, n))
                n_keys[lab] = k
    Lb = GradedBasis.of(l_pairs, M.period)
    Nb = GradedBasis.of(n_pairs, M.period)

    def solver(n):
        keys = M.component(n)
        labs = [l for l, d in l_pairs if d == n] + [l for l, d in n_pairs if d == n]
        cols = [to_column(F, keys, l_emb[l]) if l in l_emb else to_column(F, keys, {n_keys[l]: F.one})
                for l in labs]
        return labs, keys, linalg.inverse(F, linalg.transpose(cols, len(keys))) if keys else []

    cache = {}

    def coords(v):
        """Split ``v`` into its L and complement coordinates."""
        lo, no = {}, {}
        for n, part in split_by_degree(M.basis, v).items():
            n0, e = (M.basis.fold(n, fold.start) if M.period is not None else (n, 0))
            if n0 not in cache:
                cache[n0] = solver(n0)
            labs, keys, inv = cache[n0]
            x = linalg.mat_vec(F, inv, to_column(F, keys, shift(part, -e)))
            for lab, c in zip(labs, x):
                add_term(F, lo if lab in l_emb else no, (lab, e), c)
        return lo, no

    l_action, l_delta, n_action, n_delta = {}, {}, {}, {}
    for lab, v in l_emb.items():
        for a in A.labels:
            lo, no = coords(M.act(A.e(a), v))
            if no:
                raise ClosureEscape("generated submodule is not closed under the action")
            if lo:
                l_action[(a, lab)] = lo
        lo, no = coords(M.d(v))
        if no:
            raise ClosureEscape("generated submodule is not closed under delta")
        if lo:
            l_delta[lab] = lo
    for lab, k in n_keys.items():
        for a in A.labels:
            _, no = coords(M.act(A.e(a), {k: F.one}))
            if no:
                n_action[(a, lab)] = no
        _, no = coords(M.d({k: F.one}))
        if no:
            n_delta[lab] = no
    L = DgModule(A, Lb, l_action, l_delta, name="L")
    N = DgModule(A, Nb, n_action, n_delta, name="M/L")
    f = ModuleMap(L, M, dict(l_emb))
    g_images = {}
    for l in M.labels:
        _, no = coords(M.e(l))
        g_images[l] = no
    g = ModuleMap(M, N, g_images)
    return ShortExactSequence(L, M, N, f, g, name or f"0 -> L -> {M.name} -> {M.name}/L -> 0")


# -- restriction along an extension ---------------------------------------------------------

@dataclass(eq=False)
class Restriction:
    """``M`` regarded as a module over the source of ``ext``, with key conversions."""

    ext: DgExtension
    original: DgModule
    module: DgModule
    factor: int
    origin: Dict[str, Tuple[str, int]] = field(default_factory=dict)

    def down(self, v: Mapping) -> Vector:
        """Original coordinates to restricted coordinates."""
        r = self.factor
        return {(_refold_name(l, e % r), e // r): c for (l, e), c in v.items()}

    def up(self, v: Mapping) -> Vector:
        F = self.original.field
        out: Vector = {}
        for (l, q), c in v.items():
            base, j = self.origin[l]
            add_term(F, out, (base, q * self.factor + j), c)
        return out


def _refold_factor(ext: DgExtension) -> int:
    ga, gb = ext.source.period, ext.target.period
    if ga is None:
        return 1
    if ga % gb or ga // gb <= 0:
        raise FormatError(f"source period {ga} is not a positive multiple of target period {gb}")
    r = ga // gb
    if ext.period_image != shift(ext.target.unit, r):
        raise FormatError("restriction needs the source period unit to map to a power of the target period unit")
    return r


def restrict_module(ext: DgExtension, M: DgModule) -> Restriction:
    F = M.field
    r = _refold_factor(ext)
    A = ext.source
    res = Restriction(ext, M, None, r)  # type: ignore[arg-type]
    res.origin = {_refold_name(l, j): (l, j) for j in range(r) for l in M.labels}
    pairs = [(_refold_name(l, j), M.basis.degree(l) + (M.period or 0) * j) for j in range(r) for l in M.labels]
    basis = GradedBasis.of(pairs, A.period)
    action, delta = {}, {}
    for a in A.labels:
        pa = ext.phi(A.algebra.e(a))
        for j in range(r):
            for l in M.labels:
                v = M.act(pa, {(l, j): F.one})
                if v:
                    action[(a, _refold_name(l, j))] = res.down(v)
    for j in range(r):
        for l in M.labels:
            v = M.d({(l, j): F.one})
            if v:
                delta[_refold_name(l, j)] = res.down(v)
    res.module = DgModule(A, basis, action, delta, name=f"{M.name}|{A.name}")
    return res


@dataclass(eq=False)
class RestrictedSequence:
    ext: DgExtension
    original: ShortExactSequence
    sequence: ShortExactSequence
    L: Restriction
    M: Restriction
    N: Restriction


def restrict_ses(ext: DgExtension, s: ShortExactSequence) -> RestrictedSequence:
    rl, rm, rn = (restrict_module(ext, X) for X in (s.L, s.M, s.N))

    def transport(f: ModuleMap, src: Restriction, tgt: Restriction) -> ModuleMap:
        F = f.source.field
        images = {}
        for l in src.module.labels:
            images[l] = tgt.down(f(src.up({(l, 0): F.one})))
        return ModuleMap(src.module, tgt.module, images, f.degree)

    seq = ShortExactSequence(rl.module, rm.module, rn.module, transport(s.f, rl, rm), transport(s.g, rm, rn),
                             name=f"{s.name} over {ext.source.name}")
    return RestrictedSequence(ext, s, seq, rl, rm, rn)


# -- splittings -----------------------------------------------------------------------------

@dataclass
class Splitting:
    sequence: ShortExactSequence
    sigma: ModuleMap
    report: Report
    base: str = ""
    verdict: str = SPLIT

    @property
    def split(self) -> bool:
        return True

    def __str__(self):
        lines = [f"{SPLIT} over {self.base}"]
        for l, v in self.sigma.images.items():
            lines.append(f"  sigma({l}) = {_fmt(v)}")
        return "\n".join(lines) + "\n" + str(self.report)


@dataclass
class NoSplitting:
    sequence: ShortExactSequence
    unknowns: int
    rank: int
    augmented_rank: int
    witness: list
    rows: list
    base: str = ""
    verdict: str = NOT_SPLIT

    @property
    def split(self) -> bool:
        return False

    def transcript(self) -> str:
        lines = [f"{self.unknowns} unknown coefficients for sigma",
                 f"constraint rank {self.rank} < augmented rank {self.augmented_rank}: no solution",
                 "infeasibility witness:"]
        for (tag, key), c in zip(self.rows, self.witness or []):
            if c != 0:
                lines.append(f"  {c} * [{tag}] {key}")
        return "\n".join(lines)

    def __str__(self):
        return f"{NOT_SPLIT} over {self.base}\n{self.transcript()}"


def _fmt(v: Mapping) -> str:
    if not v:
        return "0"
    return " + ".join(f"{c}*{l}" + (f"z^{e}" if e else "") for (l, e), c in v.items())


def splitting_system(s: ShortExactSequence):
    """Unknowns ``(n, k)``: coefficient of the M-key ``k`` in ``sigma(n)``."""
    F, M, N = s.field, s.M, s.N
    A = s.algebra
    unknowns = [(n, k) for n in N.labels for k in M.component(N.basis.degree(n))]
    sys = linalg.LinearSystem(F, unknowns)
    one = F.one

    def sigma_unit(u):
        n, k = u
        return ModuleMap(N, M, {n: {k: one}})

    sys.add(lambda u: {(u[0], key): c for key, c in s.g({u[1]: one}).items()}, "g.sigma=id",
            rhs={(n, (n, 0)): one for n in N.labels})

    def commutes(u):
        sig = sigma_unit(u)
        out: Vector = {}
        for n in N.labels:
            v = vsub(F, M.d(sig(N.e(n))), sig(N.d(N.e(n))))
            for key, c in v.items():
                out[(n, key)] = c
        return out

    sys.add(commutes, "delta.sigma=sigma.delta")

    def linear(u):
        sig = sigma_unit(u)
        out: Vector = {}
        for a in A.labels:
            av = A.algebra.e(a)
            for n in N.labels:
                v = vsub(F, sig(N.act(av, N.e(n))), M.act(av, sig(N.e(n))))
                for key, c in v.items():
                    out[(a, n, key)] = c
        return out

    sys.add(linear, f"{A.name}-linear")
    return sys


def find_dg_splitting(s: ShortExactSequence, base: Optional[DgExtension] = None):
    """Search for a degree-0 dg-splitting of ``g``, linear over the module algebra or over ``base.source``.

    With ``base`` given, ``s`` lives over ``base.target`` and is restricted along it first.
    """
    if base is not None:
        rs = restrict_ses(base, s)
        res = find_dg_splitting(rs.sequence)
        res.base = base.source.name
        return res
    sys = splitting_system(s)
    try:
        x = sys.solve()
    except NoSolution as exc:
        A, b = sys.matrix()
        assert linalg.check_witness(s.field, A, b, exc.witness, len(sys.unknowns))
        return NoSplitting(s, len(sys.unknowns), exc.rank, exc.augmented_rank, exc.witness, sys.row_keys(),
                           base=s.algebra.name)
    images: Dict[str, Vector] = {n: {} for n in s.N.labels}
    for (n, k), c in x.items():
        images[n][k] = c
    sigma = ModuleMap(s.N, s.M, images)
    return Splitting(s, sigma, verify_splitting(s, sigma), base=s.algebra.name)


def verify_splitting(s: ShortExactSequence, sigma: ModuleMap) -> Report:
    """``g sigma = id``, base-linearity and compatibility with the differentials, element by element."""
    F = s.field
    rep = Report("splitting")
    nkeys = sample_keys(s.N.basis)
    bad = [str(n) for n in nkeys if s.g(sigma({n: F.one})) != {n: F.one}]
    rep.add("g.sigma=id", not bad, ", ".join(bad[:5]))
    rep.extend(check_module_map(sigma, "sigma"))
    return rep


def retraction(s: ShortExactSequence, split: Splitting) -> ModuleMap:
    """The retraction ``r`` of ``f`` with ``f r + sigma g = id``."""
    F = s.field
    images = {}
    for l in s.M.labels:
        rest = vsub(F, s.M.e(l), split.sigma(s.g(s.M.e(l))))
        images[l] = _preimage(s.f, rest)
    return ModuleMap(s.M, s.L, images)


def _preimage(f: ModuleMap, v: Mapping) -> Vector:
    F = f.source.field
    out: Vector = {}
    for n, part in split_by_degree(f.target.basis, v).items():
        Mf, src, tgt = f.matrix(n)
        x = linalg.solve(F, Mf, to_column(F, tgt, part), len(src))
        add_into(F, out, from_column(src, x))
    return out


# -- the lift of a splitting along a Casimir element ------------------------------------

def lift_splitting(ext: DgExtension, cert: CasimirCertificate, s: ShortExactSequence, rho) -> Splitting:
    """``tau(n) = sum_t x_t rho(m_t n)`` for ``omega = sum_t x_t (x) m_t``.

    ``rho`` is a ``Splitting`` of ``restrict_ses(ext, s).sequence`` (or its
    ``ModuleMap``). All three postconditions are verified before returning.
    """
    F = ext.field
    check = verify_casimir(ext, cert.omega, cert.generators)
    if not check.passed:
        raise CertificateInvalid(str(check))
    rs = restrict_ses(ext, s)
    rho_map = rho.sigma if isinstance(rho, Splitting) else rho
    rrep = verify_splitting(rs.sequence, ModuleMap(rs.N.module, rs.M.module, rho_map.images))
    if not rrep.passed:
        raise CertificateInvalid(f"source splitting fails verification:\n{rrep}")

    def rho_orig(v: Mapping) -> Vector:
        return rs.M.up(rho_map(rs.N.down(v)))

    B = ext.target.algebra
    images = {}
    for n in s.N.labels:
        nv = s.N.e(n)
        out: Vector = {}
        for (t, lab, e), c in cert.omega.items():
            mt = ext.left_basis[t]
            add_into(F, out, s.M.act({(lab, e): F.one}, rho_orig(s.N.act(mt, nv))), c)
        images[n] = out
    tau = ModuleMap(s.N, s.M, images)
    rep = verify_splitting(s, tau)
    rep.subject = "lifted splitting"
    return Splitting(s, tau, rep, base=ext.target.name)


# -- cycles and induction over an acyclic algebra ----------------------------------------

@dataclass(eq=False)
class ModuleCycles:
    """``ker(delta)`` as a graded module over the cycles of the algebra."""

    ambient: DgModule
    cycles: Cycles
    module: DgModule
    embedding: Dict[str, Vector]


def _kernel_vectors(M: DgModule, n: int) -> List[Vector]:
    F = M.field
    keys = M.component(n)
    if not keys:
        return []
    tgt = M.component(n + 1)
    cols = [to_column(F, tgt, M.d({k: F.one})) for k in keys]
    D = linalg.transpose(cols, len(tgt)) if tgt else []
    if not tgt:
        return [{k: F.one} for k in keys]
    return [from_column(keys, v) for v in linalg.kernel_basis(F, D, len(keys))]


def cycles_module(M: DgModule, cyc: Optional[Cycles] = None) -> ModuleCycles:
    F = M.field
    cyc = cyc or cycles(M.algebra)
    fold = M.window() if M.period is None else M.basis.fold_window(cyc.window.start)
    pairs, emb = [], {}
    for n in fold:
        for i, v in enumerate(_kernel_vectors(M, n)):
            lab = f"k{n}_{i}".replace("-", "m")
            pairs.append((lab, n))
            emb[lab] = v
    basis = GradedBasis.of(pairs, M.period)
    skel = ModuleMap(DgModule(cyc.dg, basis, {}, {}), M, emb)
    action = {}
    for a in cyc.algebra.labels:
        av = cyc.embedding[a]
        for lab, v in emb.items():
            w = M.act(av, v)
            if w:
                try:
                    action[(a, lab)] = _preimage(skel, w)
                except NoSolution:
                    raise ClosureEscape(f"{a} . {lab} is not a cycle combination") from None
    out = DgModule(cyc.dg, basis, action, {}, name=f"ker delta of {M.name}")
    return ModuleCycles(M, cyc, out, emb)


@dataclass(eq=False)
class Induced:
    cycles: Cycles
    source: DgModule
    module: DgModule
    y: Vector


def contracting_element(dg: DgAlgebra) -> Vector:
    """A degree -1 element ``y`` with ``d(y) = 1``; exists iff the algebra is acyclic."""
    F = dg.field
    keys = dg.algebra.component(-1)
    sys = linalg.LinearSystem(F, keys)
    sys.add(lambda k: dg.d({k: F.one}), "d(y)=1", rhs=dg.unit)
    return sys.solve()


def induce_from_cycles(cyc: Cycles, N: DgModule) -> Induced:
    """``A (x)_{ker d} N`` for acyclic ``A``, presented on ``1 (x) n`` and ``y (x) n``.

    Every ``x`` in ``A`` is ``d(yx) + y d(x)`` with both coefficients cycles, so
    ``A`` is free on ``{1, y}`` as a right module over its cycles.
    """
    dg = cyc.ambient
    F = dg.field
    A = dg.algebra
    if N.algebra.algebra is not cyc.algebra:
        raise FormatError("module must be given over the cycle algebra")
    y = contracting_element(dg)

    def split(x: Mapping) -> Tuple[Vector, Vector]:
        return cyc.coordinates(dg.d(A.mul(y, x))), cyc.coordinates(dg.d(x))

    pairs = [(f"1|{l}", N.basis.degree(l)) for l in N.labels] + [(f"y|{l}", N.basis.degree(l) - 1) for l in N.labels]
    basis = GradedBasis.of(pairs, N.period)
    Nm = N

    def place(prefix, v):
        return {(f"{prefix}|{l}", e): c for (l, e), c in v.items()}

    action, delta = {}, {}
    for a in A.labels:
        for base, bvec in (("1", A.unit), ("y", y)):
            c1, c2 = split(A.mul(A.e(a), bvec))
            for l in N.labels:
                nv = N.e(l)
                v = add_into(F, place("1", Nm.act(c1, nv)), place("y", Nm.act(c2, nv)))
                if v:
                    action[(a, f"{base}|{l}")] = v
    for l in N.labels:
        # delta(y (x) n) = d(y) (x) n = 1 (x) n; N has zero differential
        delta[f"y|{l}"] = {(f"1|{l}", 0): F.one}
    M = DgModule(dg, basis, action, delta, name=f"{dg.name} (x) {N.name}")
    return Induced(cyc, N, M, y)


# -- isomorphisms ----------------------------------------------------------------------------

@dataclass
class Isomorphism:
    map: ModuleMap
    report: Report


def module_hom_space(M: DgModule, N: DgModule, degree: int = 0, commute_delta: bool = True):
    """Basis of degree-``degree`` maps ``M -> N`` that are linear (and dg when asked)."""
    F = M.field
    A = M.algebra
    unknowns = [(m, k) for m in M.labels for k in N.component(M.basis.degree(m) + degree)]
    sys = linalg.LinearSystem(F, unknowns)
    one = F.one

    def unit_map(u):
        return ModuleMap(M, N, {u[0]: {u[1]: one}}, degree)

    def linear(u):
        f = unit_map(u)
        out = {}
        for a in A.labels:
            av = A.algebra.e(a)
            sign = F(koszul(A.basis.degree(a), degree))
            for m in M.labels:
                v = vsub(F, f(M.act(av, M.e(m))), scale(F, sign, N.act(av, f(M.e(m)))))
                for key, c in v.items():
                    out[(a, m, key)] = c
        return out

    sys.add(linear, "linear")
    if commute_delta:
        sign = F(koszul(degree, 1))

        def commutes(u):
            f = unit_map(u)
            out = {}
            for m in M.labels:
                v = vsub(F, N.d(f(M.e(m))), scale(F, sign, f(M.d(M.e(m)))))
                for key, c in v.items():
                    out[(m, key)] = c
            return out

        sys.add(commutes, "delta")
    maps = []
    for vec in sys.kernel():
        images: Dict[str, Vector] = {m: {} for m in M.labels}
        for (m, k), c in vec.items():
            images[m][k] = c
        maps.append(ModuleMap(M, N, images, degree))
    return maps


def _is_invertible(f: ModuleMap, window) -> bool:
    F = f.source.field
    for n in window:
        Mf, src, tgt = f.matrix(n)
        if len(src) != len(tgt):
            return False
        if src and linalg.rank(F, Mf, len(src)) != len(src):
            return False
    return True


def find_isomorphism(M: DgModule, N: DgModule, seed: int = 0, tries: int = 64) -> Optional[Isomorphism]:
    """An invertible degree-0 dg-module map ``M -> N``, or ``None`` if none was found.

    Candidates are the basis maps of the solution space followed by seeded
    random combinations; over small fields a miss is possible but never a
    false positive, since the returned map is verified.
    """
    F = M.field
    window = M.window() if M.period is not None else range(
        min(M.window().start, N.window().start), max(M.window().stop, N.window().stop))
    if any(len(M.component(n)) != len(N.component(n)) for n in window):
        return None
    basis = module_hom_space(M, N)
    rng = random.Random(seed)
    candidates = list(basis)
    for _ in range(tries):
        images: Dict[str, Vector] = {m: {} for m in M.labels}
        for f in basis:
            c = F.random(rng, 5)
            for m, v in f.images.items():
                add_into(F, images[m], v, c)
        candidates.append(ModuleMap(M, N, images))
    for f in candidates:
        if _is_invertible(f, window):
            rep = check_module_map(f, "iso")
            rep.add("bijective-on-window", True)
            rep.window = window
            return Isomorphism(f, rep)
    return None


# -- the Hom complex -------------------------------------------------------------------------

@dataclass(eq=False)
class HomComplex:
    """Graded maps ``M -> N`` with ``f(am) = (-1)^{|a|k} a f(m)`` and ``d f = delta_N f - (-1)^k f delta_M``."""

    source: DgModule
    target: DgModule
    components: Dict[int, List[ModuleMap]]

    def d(self, f: ModuleMap) -> ModuleMap:
        F = self.source.field
        sign = F.neg(F(koszul(f.degree, 1)))
        images = {}
        for m in self.source.labels:
            mv = self.source.e(m)
            images[m] = add_into(F, self.target.d(f(mv)), f(self.source.d(mv)), sign)
        return ModuleMap(self.source, self.target, images, f.degree + 1)

    def dimensions(self) -> Dict[int, int]:
        return {k: len(v) for k, v in self.components.items()}


def hom_complex(M: DgModule, N: DgModule, degrees: Optional[range] = None) -> HomComplex:
    if degrees is None:
        if M.period is not None:
            degrees = range(0, abs(M.period))
        else:
            lo = min(N.basis.degrees) - max(M.basis.degrees)
            hi = max(N.basis.degrees) - min(M.basis.degrees)
            degrees = range(lo, hi + 1)
    comps = {k: module_hom_space(M, N, k, commute_delta=False) for k in degrees}
    return HomComplex(M, N, comps)


def validate_hom(H: HomComplex) -> Report:
    F = H.source.field
    rep = Report("Hom complex")
    bad, notlin = [], []
    for k, maps in H.components.items():
        for i, f in enumerate(maps):
            df = H.d(f)
            if not check_module_map(df, "d f")["d f-linear"].passed:
                notlin.append(f"{k}:{i}")
            ddf = H.d(df)
            if any(ddf.images.values()):
                bad.append(f"{k}:{i}")
    rep.add("d(f)-is-linear", not notlin, ", ".join(notlin[:5]))
    rep.add("d-squared-zero", not bad, ", ".join(bad[:5]))
    return rep


def identity_map(M: DgModule) -> ModuleMap:
    return ModuleMap(M, M, {l: M.e(l) for l in M.labels})


def module_homology(M: DgModule, window: Optional[range] = None) -> Dict[int, int]:
    F = M.field
    out = {}
    for n in (window or M.window()):
        keys = M.component(n)
        ker = len(_kernel_vectors(M, n))
        prev = M.component(n - 1)
        cols = [to_column(F, keys, M.d({k: F.one})) for k in prev]
        im = linalg.rank(F, cols, len(keys)) if cols and keys else 0
        out[n] = ker - im
    return out


# -- random presentations ----------------------------------------------------------------

def present_in_basis(M: DgModule, emb: Mapping[str, Vector], name: str = "") -> DgModule:
    """The same module written in another homogeneous basis of one fold."""
    F = M.field
    degs = {}
    for lab, v in emb.items():
        d = {M.deg(k) for k in v}
        if len(d) != 1:
            raise FormatError(f"basis vector {lab} is not homogeneous and nonzero")
        degs[lab] = d.pop()
    basis = GradedBasis.of(list(degs.items()), M.period)
    skel = ModuleMap(DgModule(M.algebra, basis, {}, {}), M, dict(emb))
    action, delta = {}, {}
    try:
        for lab, v in emb.items():
            for a in M.algebra.labels:
                w = M.act(M.algebra.e(a), v)
                if w:
                    action[(a, lab)] = _preimage(skel, w)
            w = M.d(v)
            if w:
                delta[lab] = _preimage(skel, w)
    except NoSolution:
        raise FormatError("vectors do not span the module") from None
    out = DgModule(M.algebra, basis, action, delta, name=name or M.name)
    for n in out.window() if out.period is not None else M.window():
        if len(out.component(n)) != len(M.component(n)):
            raise FormatError(f"degree {n}: {len(out.component(n))} vectors for dimension {len(M.component(n))}")
    return out


def rebase_module(M: DgModule, rng: random.Random, name: str = "") -> Tuple[DgModule, Dict[str, Vector]]:
    """``M`` in a random basis; returns the new module and the embedding of its labels."""
    F = M.field
    emb: Dict[str, Vector] = {}
    for n in M.window():
        keys = M.component(n)
        k = len(keys)
        while True:
            P = [[F.random(rng, 4) for _ in range(k)] for _ in range(k)]
            if linalg.rank(F, P, k) == k:
                break
        for i, row in enumerate(P):
            emb[f"b{n}_{i}".replace("-", "m")] = {key: c for key, c in zip(keys, row) if c != 0}
    return present_in_basis(M, emb, name), emb


def random_cycle_module(cyc_dg: DgAlgebra, rng: random.Random, max_dim: int = 4,
                        shifts: range = range(-2, 3)) -> DgModule:
    """A randomly presented free graded module over a gr-division algebra with zero differential."""
    cyc_dg = as_dg(cyc_dg)
    # dimension counts one fold for periodic algebras
    rank = rng.randint(1, max(1, max_dim // len(cyc_dg.labels)))
    M = free_module(cyc_dg, [rng.choice(list(shifts)) for _ in range(rank)])
    out, _ = rebase_module(M, rng, name=f"random rank-{rank} module")
    return out
