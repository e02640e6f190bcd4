"""Graded bases, sparse homogeneous vectors and degree-wise linear maps.

A basis may carry a *period* ``g``: then the K-basis of the underlying space
is ``{(label, e)}`` for every integer ``e``, where ``(label, e)`` stands for
``label * z**e`` with ``z`` a central unit of degree ``g``. Every degree
component is finite, which is what makes Laurent-type objects computable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import FormatError
from .fields import Field, Scalar
from . import linalg

Key = Tuple[str, int]
Vector = Dict[Hashable, Scalar]


@dataclass(frozen=True)
class GradedBasis:
    labels: Tuple[str, ...]
    degrees: Tuple[int, ...]
    period: Optional[int] = None
    _index: Dict[str, int] = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        labels = tuple(self.labels)
        degrees = tuple(int(d) for d in self.degrees)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "degrees", degrees)
        if len(labels) != len(degrees):
            raise FormatError("labels and degrees differ in length")
        if len(set(labels)) != len(labels):
            raise FormatError("basis labels must be distinct")
        if self.period is not None and (not isinstance(self.period, int) or self.period == 0):
            raise FormatError("period must be a nonzero integer")
        object.__setattr__(self, "_index", {lab: i for i, lab in enumerate(labels)})

    @classmethod
    def of(cls, pairs: Iterable[Tuple[str, int]], period: Optional[int] = None) -> "GradedBasis":
        pairs = list(pairs)
        return cls(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs), period)

    def __len__(self):
        return len(self.labels)

    def __contains__(self, label):
        return label in self._index

    def degree(self, label: str, e: int = 0) -> int:
        try:
            d = self.degrees[self._index[label]]
        except KeyError:
            raise FormatError(f"unknown basis label {label!r}") from None
        return d + (self.period or 0) * e

    def key_degree(self, key: Key) -> int:
        return self.degree(key[0], key[1])

    def component(self, n: int) -> List[Key]:
        """Ordered ``(label, e)`` pairs spanning degree ``n``."""
        out = []
        for lab, d in zip(self.labels, self.degrees):
            if self.period is None:
                if d == n:
                    out.append((lab, 0))
            elif (n - d) % self.period == 0:
                out.append((lab, (n - d) // self.period))
        return out

    def exponents(self) -> Tuple[int, ...]:
        """Representative exponents for sign-sensitive checks (parity suffices)."""
        return (0,) if self.period is None else (0, 1)

    def support(self) -> range:
        if not self.labels:
            return range(0)
        return range(min(self.degrees), max(self.degrees) + 1)

    def fold_window(self, lo: int = 0) -> range:
        """One full period starting at ``lo``, or the support when aperiodic."""
        if self.period is None:
            return self.support()
        return range(lo, lo + abs(self.period))

    def default_window(self, periods: int = 1) -> range:
        if self.period is None:
            return self.support()
        g = abs(self.period)
        return range(-g * (periods // 2), -g * (periods // 2) + g * periods)

    def fold(self, n: int, lo: int = 0) -> Tuple[int, int]:
        """Return ``(n0, e)`` with ``n = n0 + period*e`` and ``n0`` in the fold window."""
        if self.period is None:
            return n, 0
        g = self.period
        e = (n - lo) // abs(g)
        if g < 0:
            e = -e
        return n - g * e, e


# -- sparse vectors ---------------------------------------------------------

def vec(F: Field, items: Iterable[Tuple[Hashable, object]]) -> Vector:
    out: Vector = {}
    for k, c in items:
        add_term(F, out, k, F(c))
    return out


def add_term(F: Field, acc: Vector, key, c: Scalar) -> None:
    if c == 0:
        return
    s = F.add(acc.get(key, F.zero), c)
    if s == 0:
        acc.pop(key, None)
    else:
        acc[key] = s


def add_into(F: Field, acc: Vector, v: Mapping, c: Scalar = None) -> Vector:
    """``acc += c * v`` in place; returns ``acc``."""
    if c is None:
        for k, x in v.items():
            add_term(F, acc, k, x)
    elif c != 0:
        for k, x in v.items():
            add_term(F, acc, k, F.mul(c, x))
    return acc


def vadd(F: Field, *vs: Mapping) -> Vector:
    acc: Vector = {}
    for v in vs:
        add_into(F, acc, v)
    return acc


def vsub(F: Field, u: Mapping, v: Mapping) -> Vector:
    return add_into(F, dict(u), v, F.neg(F.one))


def scale(F: Field, c: Scalar, v: Mapping) -> Vector:
    if c == 0:
        return {}
    return {k: F.mul(c, x) for k, x in v.items()}


def shift(v: Mapping, e: int) -> Vector:
    """Multiply by ``z**e`` on keys of the form ``(label, exponent)``."""
    if e == 0:
        return dict(v)
    return {(k[0], k[1] + e): c for k, c in v.items()}


def vector_degrees(basis: GradedBasis, v: Mapping) -> set:
    return {basis.key_degree(k) for k in v}


def homogeneous_degree(basis: GradedBasis, v: Mapping) -> Optional[int]:
    """Degree of a nonzero homogeneous vector; ``None`` for zero or mixed."""
    degs = vector_degrees(basis, v)
    return degs.pop() if len(degs) == 1 else None


def split_by_degree(basis: GradedBasis, v: Mapping) -> Dict[int, Vector]:
    out: Dict[int, Vector] = {}
    for k, c in v.items():
        out.setdefault(basis.key_degree(k), {})[k] = c
    return out


def to_column(F: Field, keys: Sequence, v: Mapping) -> List[Scalar]:
    idx = {k: i for i, k in enumerate(keys)}
    col = [F.zero] * len(keys)
    for k, c in v.items():
        if k not in idx:
            raise KeyError(k)
        col[idx[k]] = c
    return col


def from_column(keys: Sequence, col: Sequence[Scalar]) -> Vector:
    return {k: c for k, c in zip(keys, col) if c != 0}


def degree_component_basis(basis: GradedBasis, n: int) -> List[Key]:
    return basis.component(n)


# -- degree-wise linear maps ------------------------------------------------

@dataclass
class GradedLinearMap:
    """A map of fixed degree stored as one matrix per source degree.

    ``blocks[n]`` has rows indexed by ``target_keys[n + degree]`` and columns
    by ``source_keys[n]``.
    """

    field: Field
    degree: int
    blocks: Dict[int, List[List[Scalar]]]
    source_keys: Dict[int, List]
    target_keys: Dict[int, List]

    @classmethod
    def from_function(cls, F: Field, fn: Callable[[Hashable], Mapping], degree: int,
                      source_component: Callable[[int], List], target_component: Callable[[int], List],
                      degrees: Iterable[int]) -> "GradedLinearMap":
        blocks, src, tgt = {}, {}, {}
        for n in degrees:
            s, t = source_component(n), target_component(n + degree)
            blocks[n] = matrix_of(F, fn, s, t)
            src[n], tgt[n + degree] = s, t
        return cls(F, degree, blocks, src, tgt)

    def rank(self, n: int) -> int:
        return linalg.rank(self.field, self.blocks[n], len(self.source_keys[n]))

    def is_injective(self, n: int) -> bool:
        return self.rank(n) == len(self.source_keys[n])

    def apply(self, n: int, v: Mapping) -> Vector:
        col = to_column(self.field, self.source_keys[n], v)
        return from_column(self.target_keys[n + self.degree], linalg.mat_vec(self.field, self.blocks[n], col))


def matrix_of(F: Field, fn: Callable[[Hashable], Mapping], source_keys: Sequence, target_keys: Sequence):
    """Matrix (rows = target keys) of a linear map given on basis keys."""
    idx = {k: i for i, k in enumerate(target_keys)}
    M = [[F.zero] * len(source_keys) for _ in target_keys]
    for j, s in enumerate(source_keys):
        for k, c in fn(s).items():
            if k not in idx:
                raise KeyError(f"image of {s!r} has term {k!r} outside the target component")
            M[idx[k]][j] = c
    return M
