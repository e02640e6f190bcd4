"""Dense exact Gaussian elimination over a ``Field``.

Matrices are lists of rows. Pivoting takes the first nonzero entry of each
column, so every output (solutions, kernel bases) is deterministic.
"""

from __future__ import annotations

from typing import Callable, Dict, Hashable, List, Mapping, Sequence, Tuple

from .errors import NoSolution
from .fields import Field, Scalar

Matrix = List[List[Scalar]]


def zeros(F: Field, rows: int, cols: int) -> Matrix:
    return [[F.zero] * cols for _ in range(rows)]


def identity(F: Field, n: int) -> Matrix:
    M = zeros(F, n, n)
    for i in range(n):
        M[i][i] = F.one
    return M


def mat_vec(F: Field, A: Matrix, x: Sequence[Scalar]) -> List[Scalar]:
    out = []
    for row in A:
        s = F.zero
        for a, b in zip(row, x):
            if a != 0 and b != 0:
                s = F.add(s, F.mul(a, b))
        out.append(s)
    return out


def matmul(F: Field, A: Matrix, B: Matrix, inner: int = None) -> Matrix:
    cols = len(B[0]) if B else 0
    out = zeros(F, len(A), cols)
    for i, row in enumerate(A):
        for k, a in enumerate(row):
            if a == 0:
                continue
            for j, b in enumerate(B[k]):
                if b != 0:
                    out[i][j] = F.add(out[i][j], F.mul(a, b))
    return out


def transpose(A: Matrix, ncols: int) -> Matrix:
    return [[row[j] for row in A] for j in range(ncols)]


def rref(F: Field, A: Matrix, ncols: int = None) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form and pivot columns."""
    R = [list(r) for r in A]
    ncols = len(R[0]) if ncols is None and R else (ncols or 0)
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(R)) if R[i][c] != 0), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        inv = F.inv(R[r][c])
        R[r] = [F.mul(inv, x) for x in R[r]]
        for i in range(len(R)):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == len(R):
            break
    return R, pivots


def rank(F: Field, A: Matrix, ncols: int = None) -> int:
    if not A:
        return 0
    return len(rref(F, A, ncols)[1])


def kernel_basis(F: Field, A: Matrix, ncols: int) -> List[List[Scalar]]:
    """Basis of ``{x : A x = 0}``, one vector per free column."""
    if not A:
        return [[F.one if i == j else F.zero for i in range(ncols)] for j in range(ncols)]
    R, pivots = rref(F, A, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [F.zero] * ncols
        x[f] = F.one
        for row, pc in zip(R, pivots):
            x[pc] = F.neg(row[f])
        basis.append(x)
    return basis


def solve(F: Field, A: Matrix, b: Sequence[Scalar], ncols: int) -> List[Scalar]:
    """One exact solution of ``A x = b`` with free variables set to zero.

    Raises ``NoSolution`` carrying a Farkas-type witness ``y`` (``y A = 0``,
    ``y . b != 0``).
    """
    m = len(A)
    if m == 0:
        return [F.zero] * ncols
    # Augment with b and an identity block that records the row operations.
    aug = [list(A[i]) + [b[i]] + [F.one if j == i else F.zero for j in range(m)] for i in range(m)]
    R, pivots = rref(F, aug, ncols + 1)
    if ncols in pivots:
        row = R[pivots.index(ncols)]
        witness = row[ncols + 1:]
        rk = len([p for p in pivots if p < ncols])
        raise NoSolution(rk, rk + 1, witness)
    x = [F.zero] * ncols
    for row, pc in zip(R, pivots):
        x[pc] = row[ncols]
    return x


def inverse(F: Field, A: Matrix) -> Matrix:
    n = len(A)
    aug = [list(A[i]) + identity(F, n)[i] for i in range(n)]
    R, pivots = rref(F, aug, n)
    if pivots != list(range(n)):
        raise NoSolution(len(pivots), n, None, "matrix is singular")
    return [row[n:] for row in R]


def check_witness(F: Field, A: Matrix, b: Sequence[Scalar], y: Sequence[Scalar], ncols: int) -> bool:
    """Independent re-check of an infeasibility witness."""
    yA = [F.zero] * ncols
    for yi, row in zip(y, A):
        if yi != 0:
            for j, a in enumerate(row):
                yA[j] = F.add(yA[j], F.mul(yi, a))
    yb = F.zero
    for yi, bi in zip(y, b):
        yb = F.add(yb, F.mul(yi, bi))
    return all(v == 0 for v in yA) and yb != 0


class LinearSystem:
    """Collects linear constraints on an unknown vector given by basis keys.

    ``fn(key)`` returns the constraint values of the basis vector ``key`` as a
    mapping ``constraint_key -> scalar``; ``rhs`` gives the target values.
    Rows are ordered by first appearance, so matrices are reproducible.
    """

    def __init__(self, F: Field, unknowns: Sequence[Hashable]):
        self.F = F
        self.unknowns = list(unknowns)
        self.rows: Dict[Hashable, int] = {}
        self.columns: List[Dict[int, Scalar]] = [dict() for _ in self.unknowns]
        self.rhs: Dict[int, Scalar] = {}

    def _row(self, key) -> int:
        if key not in self.rows:
            self.rows[key] = len(self.rows)
        return self.rows[key]

    def add(self, fn: Callable[[Hashable], Mapping], tag=None, rhs: Mapping = None) -> None:
        for j, u in enumerate(self.unknowns):
            for k, c in fn(u).items():
                if c != 0:
                    r = self._row((tag, k))
                    col = self.columns[j]
                    col[r] = self.F.add(col.get(r, self.F.zero), c)
        for k, c in (rhs or {}).items():
            if c != 0:
                self.rhs[self._row((tag, k))] = c

    def matrix(self) -> Tuple[Matrix, List[Scalar]]:
        F = self.F
        A = zeros(F, len(self.rows), len(self.unknowns))
        for j, col in enumerate(self.columns):
            for r, c in col.items():
                A[r][j] = c
        b = [self.rhs.get(r, F.zero) for r in range(len(self.rows))]
        return A, b

    def solve(self) -> Dict[Hashable, Scalar]:
        A, b = self.matrix()
        x = solve(self.F, A, b, len(self.unknowns))
        return {u: c for u, c in zip(self.unknowns, x) if c != 0}

    def kernel(self) -> List[Dict[Hashable, Scalar]]:
        A, _ = self.matrix()
        return [{u: c for u, c in zip(self.unknowns, v) if c != 0}
                for v in kernel_basis(self.F, A, len(self.unknowns))]

    def row_keys(self) -> List:
        return sorted(self.rows, key=self.rows.get)
