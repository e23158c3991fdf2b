"""Finite-dimensional commutative Q-algebras given by structure constants."""
from __future__ import annotations

from fractions import Fraction

from . import upoly
from .groebner import Ideal
from .linalg import kernel, rank, solve, solve_many, sparse_rank
from .poly import MultiPoly
from ..errors import NotInvertible, VerificationError


class FiniteAlgebra:
    """Commutative algebra with basis b_0..b_{n-1}.

    table[i][j] is the coordinate vector of b_i * b_j; unit is a vector.
    Elements are lists of Fraction of length n.
    """

    def __init__(self, table, unit, labels=None, name=""):
        self._table = table
        self.dim = len(unit)
        self.unit = [Fraction(x) for x in unit]
        self.labels = list(labels) if labels is not None else [f"b{i}" for i in range(self.dim)]
        self.name = name

    @property
    def table(self):
        if self._table is None:
            self._table = self._build_table()
        return self._table

    def _build_table(self):
        raise NotImplementedError

    # elements ---------------------------------------------------------------

    def zero(self):
        return [Fraction(0)] * self.dim

    def one(self):
        return list(self.unit)

    def basis_vector(self, i):
        v = self.zero()
        v[i] = Fraction(1)
        return v

    def add(self, u, v):
        return [a + b for a, b in zip(u, v)]

    def sub(self, u, v):
        return [a - b for a, b in zip(u, v)]

    def scale(self, u, c):
        c = Fraction(c)
        return [a * c for a in u]

    def mul(self, u, v):
        out = [Fraction(0)] * self.dim
        T = self.table
        for i, a in enumerate(u):
            if not a:
                continue
            Ti = T[i]
            for j, b in enumerate(v):
                if not b:
                    continue
                ab = a * b
                for k, c in enumerate(Ti[j]):
                    if c:
                        out[k] += ab * c
        return out

    def power(self, u, k):
        r = self.one()
        for _ in range(k):
            r = self.mul(r, u)
        return r

    def mult_matrix(self, u):
        """Matrix (rows) of v -> u*v in the basis."""
        cols = [self.mul(u, self.basis_vector(j)) for j in range(self.dim)]
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def is_zero(self, u):
        return not any(u)

    # structure --------------------------------------------------------------

    def check_axioms(self):
        """Commutativity, associativity and unit; raises VerificationError."""
        n = self.dim
        e = [self.basis_vector(i) for i in range(n)]
        for i in range(n):
            if self.mul(self.unit, e[i]) != e[i]:
                raise VerificationError(f"unit fails on basis element {i}")
            for j in range(n):
                if self.table[i][j] != self.table[j][i]:
                    raise VerificationError(f"not commutative at ({i},{j})")
        for i in range(n):
            for j in range(n):
                ij = self.table[i][j]
                for k in range(n):
                    if self.mul(ij, e[k]) != self.mul(e[i], self.table[j][k]):
                        raise VerificationError(f"not associative at ({i},{j},{k})")
        return True

    def minimal_polynomial(self, u):
        """Monic minimal polynomial of u (coefficient list, low degree first)."""
        powers = [self.one()]
        while True:
            nxt = self.mul(powers[-1], u)
            cols = powers
            rows = [[p[i] for p in cols] for i in range(self.dim)]
            x = solve(rows, nxt, len(cols))
            if x is not None:
                return [-c for c in x] + [Fraction(1)]
            powers.append(nxt)

    def inverse(self, u, idempotent=None):
        """Inverse of u in the algebra (or in the summand e*A); raises NotInvertible."""
        e = self.one() if idempotent is None else idempotent
        ue = self.mul(u, e)
        # solve ue * v = e within eA: v ranges over e*A
        span = [self.mul(e, self.basis_vector(j)) for j in range(self.dim)]
        images = [self.mul(ue, s) for s in span]
        rows = [[img[i] for img in images] for i in range(self.dim)]
        x = solve(rows, e, len(span))
        if x is None:
            raise NotInvertible("element is not a unit")
        v = self.zero()
        for c, s in zip(x, span):
            if c:
                v = self.add(v, self.scale(s, c))
        return self.mul(v, e)

    def is_unit(self, u, idempotent=None):
        try:
            self.inverse(u, idempotent)
            return True
        except NotInvertible:
            return False

    def subspace_dim(self, e):
        """Dimension of the ideal e*A."""
        return rank([self.mul(e, self.basis_vector(j)) for j in range(self.dim)])

    def eval_upoly(self, p, u):
        r = self.zero()
        for c in reversed(p):
            r = self.add(self.mul(r, u), self.scale(self.one(), c))
        return r

    def artinian_idempotents(self, generators=None, candidates=None):
        """Primitive idempotents from joint generalized eigenspaces.

        generators: elements used to split (default: the basis).  Eigenvalues
        must be rational.  Returns list of (idempotent, eigenvalue tuple).
        """
        if generators is None:
            generators = [self.basis_vector(i) for i in range(self.dim)]
        pieces = [(self.one(), ())]
        for g in generators:
            new = []
            for e, vals in pieces:
                ge = self.mul(g, e)
                mp = self._restricted_minpoly(ge, e)
                roots = _roots(mp, candidates)
                if sum(roots.values()) != upoly.deg(mp):
                    raise VerificationError("irrational eigenvalue; cannot split over Q")
                if len(roots) == 1:
                    (r,) = roots
                    new.append((e, vals + (r,)))
                    continue
                for r, m in sorted(roots.items()):
                    fac = upoly.pow_([-r, Fraction(1)], m)
                    rest, rem = upoly.divmod_(mp, fac)
                    _, s, t = upoly.ext_gcd(fac, rest)
                    # t*rest == 1 near r, 0 near the other roots
                    q = upoly.mul(t, rest)
                    idem = self.mul(self.eval_upoly(q, ge), e)
                    new.append((idem, vals + (r,)))
            pieces = new
        return pieces

    def _restricted_minpoly(self, u, e):
        # minimal polynomial of u acting inside e*A (e is the unit there)
        powers = [e]
        while True:
            nxt = self.mul(powers[-1], u)
            rows = [[p[i] for p in powers] for i in range(self.dim)]
            x = solve(rows, nxt, len(powers))
            if x is not None:
                return [-c for c in x] + [Fraction(1)]
            powers.append(nxt)

    def tensor(self, other):
        """Tensor product algebra with product basis (i, j) -> i*other.dim + j."""
        n, m = self.dim, other.dim
        table = []
        for i1 in range(n):
            for j1 in range(m):
                row = []
                for i2 in range(n):
                    for j2 in range(m):
                        a = self.table[i1][i2]
                        b = other.table[j1][j2]
                        v = [Fraction(0)] * (n * m)
                        for p, x in enumerate(a):
                            if x:
                                for q, y in enumerate(b):
                                    if y:
                                        v[p * m + q] = x * y
                        row.append(v)
                table.append(row)
        unit = [a * b for a in self.unit for b in other.unit]
        labels = [f"{a}|{b}" for a in self.labels for b in other.labels]
        return FiniteAlgebra(table, unit, labels)

    def direct_sum(self, other):
        n, m = self.dim, other.dim
        N = n + m
        table = [[[Fraction(0)] * N for _ in range(N)] for _ in range(N)]
        for i in range(n):
            for j in range(n):
                table[i][j] = list(self.table[i][j]) + [Fraction(0)] * m
        for i in range(m):
            for j in range(m):
                table[n + i][n + j] = [Fraction(0)] * n + list(other.table[i][j])
        return FiniteAlgebra(table, list(self.unit) + list(other.unit), self.labels + other.labels)


def _roots(mp, candidates):
    if candidates is not None:
        out = {}
        p = list(mp)
        for r in candidates:
            r = Fraction(r)
            while upoly.deg(p) > 0 and upoly.evaluate(p, r) == 0:
                out[r] = out.get(r, 0) + 1
                p, _ = upoly.divmod_(p, [-r, Fraction(1)])
        if upoly.deg(p) == 0:
            return out
    return upoly.rational_roots(mp)


def trivial_algebra():
    return FiniteAlgebra([[[Fraction(1)]]], [Fraction(1)], ["1"])


def zero_algebra():
    return FiniteAlgebra([], [], [])


class QuotientAlgebra(FiniteAlgebra):
    """Q[gens]/I for a zero-dimensional ideal, basis = standard monomials."""

    def __init__(self, ideal, name=""):
        self.ideal = ideal
        self.gens = ideal.gens
        mons = ideal.standard_monomials()
        self.monomials = mons
        self.index = {m: i for i, m in enumerate(mons)}
        n = len(mons)
        unit = self.coords(MultiPoly.one(self.gens)) if n else []
        labels = [str(MultiPoly.monomial(self.gens, m)) for m in mons]
        super().__init__(None, unit, labels, name)

    def _build_table(self):
        # structure constants are computed on first use
        mons = self.monomials
        n = len(mons)
        table = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                e = tuple(a + b for a, b in zip(mons[i], mons[j]))
                v = self.coords(MultiPoly.monomial(self.gens, e))
                table[i][j] = v
                table[j][i] = v
        return table

    def coords(self, f):
        r = self.ideal.reduce(f)
        v = [Fraction(0)] * len(self.monomials)
        for e, c in r.terms.items():
            v[self.index[e]] = c
        return v

    def element(self, f):
        return self.coords(f)

    def to_poly(self, v):
        return MultiPoly(self.gens, {m: c for m, c in zip(self.monomials, v) if c})


def quotient_algebra(ideal_or_polys, gens=None, name=""):
    """Finite-dimensional quotient Q[gens]/I; raises InfiniteDimensional."""
    I = ideal_or_polys if isinstance(ideal_or_polys, Ideal) else Ideal(ideal_or_polys, gens)
    return QuotientAlgebra(I, name)


def is_unit(alg, u, idempotent=None):
    return alg.is_unit(u, idempotent)


def artinian_idempotents(alg, generators=None, candidates=None):
    return alg.artinian_idempotents(generators, candidates)


def image_dim(vectors):
    return rank(vectors)


__all__ = [
    "FiniteAlgebra", "QuotientAlgebra", "quotient_algebra", "is_unit",
    "artinian_idempotents", "trivial_algebra", "zero_algebra", "kernel",
    "solve_many", "sparse_rank",
]
