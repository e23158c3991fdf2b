"""Exact dense linear algebra over Q (lists of Fraction rows)."""
from __future__ import annotations

from fractions import Fraction

from ..errors import NotInvertible


class Matrix:
    """Small exact matrix; rows are lists of Fraction."""

    def __init__(self, rows, ncols=None):
        self.rows = [[Fraction(x) for x in r] for r in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else (ncols or 0)

    @classmethod
    def zeros(cls, m, n):
        return cls([[0] * n for _ in range(m)], n)

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.rows == other.rows and self.ncols == other.ncols

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            cols = list(zip(*other.rows)) if other.rows else []
            return Matrix(
                [[sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)) for c in cols] for r in self.rows],
                other.ncols,
            )
        return [sum((a * b for a, b in zip(r, other) if a and b), Fraction(0)) for r in self.rows]

    def T(self):
        return Matrix([list(c) for c in zip(*self.rows)], self.nrows) if self.rows else Matrix([], 0)

    def rank(self):
        return rank(self.rows)

    def __repr__(self):
        return "Matrix(" + repr([[str(x) for x in r] for r in self.rows]) + ")"


def rref(rows, ncols=None):
    """Reduced row echelon form.  Returns (rows, pivot columns)."""
    A = [list(r) for r in rows]
    if not A:
        return [], []
    n = ncols if ncols is not None else len(A[0])
    pivots = []
    r = 0
    for c in range(n):
        p = None
        for i in range(r, len(A)):
            if A[i][c]:
                p = i
                break
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        pv = A[r][c]
        if pv != 1:
            inv = 1 / pv
            A[r] = [x * inv for x in A[r]]
        row = A[r]
        nz = [j for j in range(c, n) if row[j]]
        for i in range(len(A)):
            if i != r:
                f = A[i][c]
                if f:
                    Ai = A[i]
                    for j in nz:
                        Ai[j] -= f * row[j]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank(rows):
    if not rows:
        return 0
    return len(_echelon(rows))


def _echelon(rows):
    """Row echelon form (not reduced), sparse-friendly; used for ranks."""
    pending = [dict((j, Fraction(x)) for j, x in enumerate(r) if x) for r in rows]
    pending = [r for r in pending if r]
    basis = {}  # pivot column -> row dict with leading 1
    for r in pending:
        while r:
            c = min(r)
            if c in basis:
                f = r[c]
                for j, v in basis[c].items():
                    w = r.get(j, 0) - f * v
                    if w:
                        r[j] = w
                    else:
                        r.pop(j, None)
            else:
                inv = 1 / r[c]
                basis[c] = {j: v * inv for j, v in r.items()}
                break
    return basis


def sparse_rank(rows):
    """Rank of a list of sparse rows (dict col -> value)."""
    basis = {}
    for r0 in rows:
        r = {j: Fraction(v) for j, v in r0.items() if v}
        while r:
            c = min(r)
            if c in basis:
                f = r[c]
                for j, v in basis[c].items():
                    w = r.get(j, 0) - f * v
                    if w:
                        r[j] = w
                    else:
                        r.pop(j, None)
            else:
                inv = 1 / r[c]
                basis[c] = {j: v * inv for j, v in r.items()}
                break
    return len(basis)


def kernel(rows, ncols):
    """Basis of the right null space {x : A x = 0}."""
    R, piv = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in piv]
    out = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(piv):
            v[p] = -R[i][f]
        out.append(v)
    return out


def solve(rows, rhs, ncols=None):
    """One solution x of A x = b, or None when inconsistent."""
    n = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    R, piv = rref(aug, n + 1)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for i, p in enumerate(piv):
        x[p] = R[i][n]
    return x


def solve_many(rows, rhss, ncols):
    """Solve A x = b for several right-hand sides with one elimination.

    Returns a list with one solution (or None when inconsistent) per rhs.
    """
    k = len(rhss)
    A = [list(r) + [b[i] for b in rhss] for i, r in enumerate(rows)]
    piv = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(A)) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        row = A[r]
        nz = [j for j in range(c, ncols + k) if row[j]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                Ai = A[i]
                for j in nz:
                    Ai[j] -= f * row[j]
        piv.append(c)
        r += 1
    sols = []
    for t in range(k):
        col = ncols + t
        if any(A[i][col] for i in range(r, len(A))):
            sols.append(None)
            continue
        x = [Fraction(0)] * ncols
        for i, p in enumerate(piv):
            x[p] = A[i][col]
        sols.append(x)
    return sols


def inverse(rows):
    n = len(rows)
    aug = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(rows)]
    R, piv = rref(aug, n)
    if len(piv) < n or piv != list(range(n)):
        raise NotInvertible("singular matrix")
    return [r[n:] for r in R]


def mat_vec(rows, v):
    return [sum((a * b for a, b in zip(r, v) if a and b), Fraction(0)) for r in rows]


def mat_mul(A, B):
    if not A:
        return []
    cols = list(zip(*B))
    return [[sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)) for c in cols] for r in A]


def det(rows):
    A = [list(map(Fraction, r)) for r in rows]
    n = len(A)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            d = -d
        d *= A[c][c]
        for i in range(c + 1, n):
            f = A[i][c] / A[c][c]
            if f:
                for j in range(c, n):
                    A[i][j] -= f * A[c][j]
    return d


def linear_solve(A, b):
    x = solve(A.rows if isinstance(A, Matrix) else A, b)
    return x


def linear_kernel(A):
    rows = A.rows if isinstance(A, Matrix) else A
    ncols = A.ncols if isinstance(A, Matrix) else (len(rows[0]) if rows else 0)
    return kernel(rows, ncols)


def sparse_solve(rows, rhs, ncols=None):
    """One solution of A x = b for sparse rows (dict col -> value), or None.

    Free variables are set to zero.
    """
    basis = {}   # pivot column -> (row dict with leading 1, rhs value)
    for r0, b0 in zip(rows, rhs):
        r = {j: Fraction(v) for j, v in r0.items() if v}
        b = Fraction(b0)
        while r:
            c = min(r)
            if c in basis:
                f = r[c]
                br, bb = basis[c]
                for j, v in br.items():
                    w = r.get(j, 0) - f * v
                    if w:
                        r[j] = w
                    else:
                        r.pop(j, None)
                b -= f * bb
            else:
                inv = 1 / r[c]
                basis[c] = ({j: v * inv for j, v in r.items()}, b * inv)
                break
        else:
            if b:
                return None
    x = {}
    for c in sorted(basis, reverse=True):
        br, bb = basis[c]
        x[c] = bb - sum(v * x.get(j, 0) for j, v in br.items() if j != c)
    n = ncols if ncols is not None else (max(x) + 1 if x else 0)
    return [x.get(j, Fraction(0)) for j in range(n)]
