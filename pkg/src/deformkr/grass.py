"""Deformed Grassmannian cohomology H_a^Σ, its two models and its splitting.

Quotient model: Q[E1..Ea] / <h_{N-a+1}(X-Σ), ..., h_N(X-Σ)>.
Exterior model: Λ^a of Q[ξ]/P(ξ), realised as antisymmetric elements of
R_a = (Q[ξ]/P)^{⊗a} with product (Δf)*(Δg) = Δ(fg), Δ = prod_{i<j}(ξ_i - ξ_j).
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product as cartesian
from math import comb, factorial

from .algebra import upoly
from .algebra.finite import FiniteAlgebra, QuotientAlgebra, trivial_algebra
from .algebra.groebner import Ideal
from .algebra.linalg import inverse as mat_inverse, rank, solve, solve_many
from .algebra.poly import MultiPoly
from .errors import InputError, NotInvertible, VerificationError
try:  # gmpy2 rationals are much faster than Fraction in the tensor-ring hot loop
    from gmpy2 import mpq as _fast

    def _slow(c):
        return Fraction(int(c.numerator), int(c.denominator))
except ImportError:  # pragma: no cover
    _fast = _slow = Fraction

from .symfn import (
    Partition, RootMultiset, elem_values, evars, h_diff_in_e, multisubsets, partitions_in_box,
    perm_sign, schur_in_e, box_complement,
)


def _check_args(N, a, sigma, maxN=None):
    sigma = RootMultiset(sigma)
    if len(sigma) != N:
        raise InputError(f"Σ has {len(sigma)} roots, expected N={N}")
    if not 0 <= a <= N:
        raise InputError(f"need 0 <= a <= N, got a={a}, N={N}")
    if maxN is not None and N > maxN:
        raise InputError(f"N={N} exceeds the supported bound {maxN}")
    return sigma


# quotient model -------------------------------------------------------------------

class GrassQuotient:
    """H_a^Σ as a quotient of the polynomial ring on elementary generators."""

    def __init__(self, N, a, sigma):
        self.N, self.a, self.sigma = N, a, RootMultiset(sigma)
        self.egens = evars(a)
        gens = [h_diff_in_e(k, self.egens, self.sigma) for k in range(N - a + 1, N + 1)]
        self.ideal = Ideal(gens, self.egens, weights=range(1, a + 1))
        self.algebra = QuotientAlgebra(self.ideal, name=f"H_{a}^Σ quotient")
        self.partitions = partitions_in_box(a, N - a)
        self._schur = None

    @property
    def dim(self):
        return self.algebra.dim

    def schur_class(self, lam):
        return self.algebra.coords(schur_in_e(lam, self.egens))

    @property
    def schur_matrix(self):
        """Columns: coordinates of [pi_alpha], alpha in P(a, N-a)."""
        if self._schur is None:
            cols = [self.schur_class(lam) for lam in self.partitions]
            self._schur = [[c[i] for c in cols] for i in range(self.dim)]
        return self._schur

    def to_schur(self, v):
        x = solve(self.schur_matrix, v, len(self.partitions))
        if x is None:
            raise VerificationError("Schur classes do not span the quotient")
        return x

    def from_schur(self, x):
        return [sum((r[j] * x[j] for j in range(len(x)) if x[j]), Fraction(0)) for r in self.schur_matrix]

    def schur_basis_is_basis(self):
        return len(self.partitions) == self.dim and rank(self.schur_matrix) == self.dim

    def evaluate(self, v, point):
        """Evaluate a class at an a-element multiset `point` of roots of Σ."""
        vals = [elem_values(point, k) for k in range(1, self.a + 1)]
        return self.algebra.to_poly(v).evaluate(vals)

    def schur_structure_constants(self):
        """c[i][j] = coefficients of pi_i * pi_j in the Schur basis."""
        n = len(self.partitions)
        cols = [self.schur_class(l) for l in self.partitions]
        out = [[None] * n for _ in range(n)]
        prods = []
        for i in range(n):
            for j in range(i, n):
                prods.append((i, j, self.algebra.mul(cols[i], cols[j])))
        sols = solve_many(self.schur_matrix, [p for _, _, p in prods], n)
        for (i, j, _), s in zip(prods, sols):
            if s is None:
                raise VerificationError("product outside Schur span")
            out[i][j] = out[j][i] = s
        return out


def build_quotient_model(N, a, sigma):
    sigma = _check_args(N, a, sigma, maxN=6)
    return _cached_quotient(N, a, tuple(sigma))


@lru_cache(maxsize=256)
def _cached_quotient(N, a, sigma):
    return GrassQuotient(N, a, sigma)


# the ring R_a = (Q[ξ]/P)^{⊗a} -------------------------------------------------------

class TensorPowerRing:
    """R_a = ⊗_{i=1}^a Q[ξ_i]/P(ξ_i); elements are dicts exponent-tuple -> Fraction."""

    def __init__(self, sigma, a):
        self.sigma = RootMultiset(sigma)
        self.N = len(self.sigma)
        self.a = a
        P = self.sigma.polynomial()
        N = self.N
        self.P = P
        self.red = []
        for k in range(2 * N + 1):
            r = upoly.mod([Fraction(0)] * k + [Fraction(1)], P)
            self.red.append({i: c for i, c in enumerate(r) if c})
        self._fast = {}

    def mono(self, e):
        return {tuple(e): Fraction(1)}

    def one(self):
        return {(0,) * self.a: Fraction(1)}

    def add(self, u, v, c=1):
        out = dict(u)
        for e, x in v.items():
            y = out.get(e, 0) + c * x
            if y:
                out[e] = y
            else:
                out.pop(e, None)
        return out

    def scale(self, u, c):
        return {e: x * c for e, x in u.items()} if c else {}

    def mul(self, u, v, raw=False):
        acc = {}
        for e1, c1 in u.items():
            for e2, c2 in v.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                acc[e] = acc.get(e, 0) + c1 * c2
        return self.reduce(acc, raw)

    def reduce(self, acc, raw=False):
        """Reduce exponents modulo P one variable at a time, merging terms as we go."""
        N = self.N
        acc = {e: _fast(c) for e, c in acc.items()}
        for i in range(self.a):
            nxt = {}
            for e, c in acc.items():
                if not c:
                    continue
                if e[i] < N:
                    nxt[e] = nxt.get(e, 0) + c
                    continue
                for k, x in self._fast_power(e[i]):
                    f = e[:i] + (k,) + e[i + 1:]
                    nxt[f] = nxt.get(f, 0) + c * x
            acc = nxt
        if raw:
            return acc
        return {e: _slow(c) for e, c in acc.items() if c}

    def _fast_power(self, k):
        hit = self._fast.get(k)
        if hit is None:
            hit = self._fast[k] = [(j, _fast(c)) for j, c in self._reduce_power(k).items()]
        return hit

    def from_poly(self, f):
        """Image of a polynomial in ξ1..ξa (variables in order)."""
        out = {}
        for e, c in f.terms.items():
            part = {(): c}
            for x in e:
                nxt = {}
                for k, v in self._reduce_power(x).items():
                    for pre, pv in part.items():
                        nxt[pre + (k,)] = nxt.get(pre + (k,), 0) + pv * v
                part = nxt
            out = self.add(out, part)
        return out

    def _reduce_power(self, k):
        if k < len(self.red):
            return self.red[k]
        r = upoly.mod([Fraction(0)] * k + [Fraction(1)], self.P)
        return {i: c for i, c in enumerate(r) if c}

    def permute(self, u, w):
        """Apply the variable permutation ξ_i -> ξ_{w(i)}."""
        out = {}
        for e, c in u.items():
            f = [0] * self.a
            for i, k in enumerate(e):
                f[w[i]] = k
            out[tuple(f)] = c
        return out

    def vec(self, u, index):
        v = [Fraction(0)] * len(index)
        for e, c in u.items():
            v[index[e]] = c
        return v

    def monomials(self):
        return list(cartesian(*(range(self.N) for _ in range(self.a))))

    def sorted_monomials(self):
        """Weakly decreasing exponent tuples: one per S_a-orbit."""
        return [e for e in self.monomials() if all(e[i] >= e[i + 1] for i in range(self.a - 1))]

    def sym_coeffs(self, u, index):
        """Coefficients of Σ_w w(u) at orbit representatives."""
        v = [0] * len(index)
        for e, c in u.items():
            rep = tuple(sorted(e, reverse=True))
            v[index[rep]] += c
        out = [Fraction(0)] * len(index)
        for rep, i in index.items():
            if v[i]:
                stab = 1
                for k in set(rep):
                    stab *= factorial(rep.count(k))
                out[i] = _slow(_fast(v[i])) * stab
        return out


def wedge(exps):
    """Antisymmetrised monomial det(ξ_i^{exps_j}) as a dict."""
    n = len(exps)
    out = {}
    for w in permutations(range(n)):
        e = [0] * n
        for j in range(n):
            e[w[j]] = exps[j]
        out[tuple(e)] = out.get(tuple(e), 0) + perm_sign(w)
    return {e: Fraction(c) for e, c in out.items() if c}


def vandermonde_R(R):
    return wedge(tuple(range(R.a - 1, -1, -1)))


# exterior model --------------------------------------------------------------------------

class GrassExterior:
    """Λ^a H_1^Σ with basis ξ^{α1+a-1} ∧ ... ∧ ξ^{αa}, α ∈ P(a, N-a)."""

    def __init__(self, N, a, sigma):
        self.N, self.a, self.sigma = N, a, RootMultiset(sigma)
        self.R = TensorPowerRing(self.sigma, a)
        self.partitions = partitions_in_box(a, N - a)
        self.exps = [tuple(lam.padded(a)[j] + a - 1 - j for j in range(a)) for lam in self.partitions]
        self.basis = [wedge(e) for e in self.exps]
        self.delta = vandermonde_R(self.R)
        # symmetric elements are determined by their coefficients on sorted monomials
        reps = self.R.sorted_monomials()
        self.index = {m: i for i, m in enumerate(reps)}
        n = len(self.basis)
        rho = tuple(range(a - 1, -1, -1))
        dcols = [self._sym_product(rho, b) for b in self.basis]
        self._dmat = [[c[i] for c in dcols] for i in range(len(reps))]
        if a > 0 and rank(self._dmat) != n:
            raise VerificationError("multiplication by Δ is not injective on antisymmetrics")
        self._algebra = None

    @property
    def dim(self):
        return len(self.basis)

    def element(self, coeffs):
        out = {}
        for c, b in zip(coeffs, self.basis):
            if c:
                out = self.R.add(out, b, c)
        return out

    def _sym_product(self, exps, y):
        # wedge(exps)·y = Σ_w w(ξ^exps · y) when y is antisymmetric
        return self.R.sym_coeffs(self.R.mul({tuple(exps): Fraction(1)}, y, raw=True), self.index)

    def coords(self, x):
        """Coordinates of an antisymmetric element of R_a in the wedge basis.

        Such an element is determined by its strictly decreasing coefficients.
        """
        pos = {e: i for i, e in enumerate(self.exps)}
        v = [Fraction(0)] * self.dim
        for e, c in x.items():
            if all(e[i] > e[i + 1] for i in range(self.a - 1)):
                if e not in pos:
                    raise VerificationError("element is not in the wedge span")
                v[pos[e]] = c
        return v

    def star(self, x, y):
        """(Δf)*(Δg) = Δfg: solve Δ·w = x·y on the antisymmetric span."""
        z = [Fraction(0)] * len(self.index)
        for e, c in self.R.mul(x, y).items():
            if e in self.index:
                z[self.index[e]] = c
        w = solve(self._dmat, z, self.dim)
        if w is None:
            raise VerificationError("product is not divisible by Δ")
        return w

    @property
    def algebra(self):
        if self._algebra is None:
            n = self.dim
            if self.a == 0:
                self._algebra = trivial_algebra()
                return self._algebra
            table = [[None] * n for _ in range(n)]
            prods = []
            for i in range(n):
                for j in range(i, n):
                    prods.append((i, j, self._sym_product(self.exps[i], self.basis[j])))
            sols = solve_many(self._dmat, [p for _, _, p in prods], n)
            for (i, j, _), s in zip(prods, sols):
                if s is None:
                    raise VerificationError("product is not divisible by Δ")
                table[i][j] = table[j][i] = s
            unit = self.coords(self.delta)
            labels = ["∧".join(f"ξ^{k}" for k in e) for e in self.exps]
            self._algebra = FiniteAlgebra(table, unit, labels, name=f"Λ^{self.a} H_1^Σ")
        return self._algebra


def build_exterior_model(N, a, sigma):
    sigma = _check_args(N, a, sigma, maxN=6)
    return _cached_exterior(N, a, tuple(sigma))


@lru_cache(maxsize=256)
def _cached_exterior(N, a, sigma):
    return GrassExterior(N, a, sigma)


def models_agree(N, a, sigma):
    """Schur structure constants of the quotient model equal the wedge ones."""
    q = build_quotient_model(N, a, sigma)
    x = build_exterior_model(N, a, sigma)
    if q.dim != x.dim or not q.schur_basis_is_basis():
        return False
    if a == 0:
        return True
    c = q.schur_structure_constants()
    alg = x.algebra
    n = q.dim
    for i in range(n):
        for j in range(n):
            if c[i][j] != alg.table[i][j]:
                return False
    unit_q = q.to_schur(q.algebra.one())
    return unit_q == alg.unit


# idempotents ------------------------------------------------------------------------

def crt_idempotent(P, lam):
    """Idempotent of Q[ξ]/P supported at the root lam (coefficient list mod P)."""
    P = upoly.trim(P)
    lam = Fraction(lam)
    m = 0
    q = list(P)
    while upoly.deg(q) > 0 and upoly.evaluate(q, lam) == 0:
        q, _ = upoly.divmod_(q, [-lam, Fraction(1)])
        m += 1
    if m == 0:
        raise InputError(f"{lam} is not a root of P")
    fac = upoly.pow_([-lam, Fraction(1)], m)
    g, s, t = upoly.ext_gcd(fac, q)
    if g != [Fraction(1)]:
        raise VerificationError("factors are not coprime")
    return upoly.mod(upoly.mul(t, q), P)


def coset_transversal(blocks):
    """Permutations of range(a) forming both a left and a right transversal
    of the Young subgroup S_{b1} x S_{b2} x ... (found by bipartite matching).
    """
    a = sum(blocks)
    label = []
    for j, b in enumerate(blocks):
        label += [j] * b
    label = tuple(label)
    perms = list(permutations(range(a)))

    def left(w):  # coset w·Y, identified by the relabelled tuple
        return tuple(label[w.index(i)] for i in range(a))

    def right(w):  # coset Y·w
        return tuple(label[w[i]] for i in range(a))

    lefts = sorted({left(w) for w in perms})
    rights = sorted({right(w) for w in perms})
    adj = {}
    for w in perms:
        adj.setdefault(left(w), []).append((right(w), w))
    match_r = {}

    def augment(L, seen):
        for R, w in adj[L]:
            if R in seen:
                continue
            seen.add(R)
            if R not in match_r or augment(match_r[R][0], seen):
                match_r[R] = (L, w)
                return True
        return False

    for L in lefts:
        if not augment(L, set()):
            raise VerificationError("no two-sided transversal")
    T = [w for _, w in sorted(match_r.values())]
    assert len({left(w) for w in T}) == len(lefts) == len(T)
    assert len({right(w) for w in T}) == len(rights) == len(T)
    return T


def minimal_length_transversal(blocks):
    """Minimal-length representatives of the left cosets w·Y."""
    a = sum(blocks)
    label = []
    for j, b in enumerate(blocks):
        label += [j] * b
    best = {}
    for w in permutations(range(a)):
        key = tuple(label[w.index(i)] for i in range(a))
        inv = sum(1 for i in range(a) for j in range(i + 1, a) if w[i] > w[j])
        if key not in best or inv < best[key][0]:
            best[key] = (inv, w)
    return [w for _, w in best.values()]


def is_two_sided(T, blocks):
    a = sum(blocks)
    label = []
    for j, b in enumerate(blocks):
        label += [j] * b
    lefts = {tuple(label[w.index(i)] for i in range(a)) for w in T}
    rights = {tuple(label[w[i]] for i in range(a)) for w in T}
    return len(lefts) == len(T) == len(rights)


class IdempotentData:
    def __init__(self, A, mu, element, exterior_coords, quotient_coords):
        self.A = A
        self.mu = mu
        self.element = element
        self.exterior_coords = exterior_coords
        self.quotient_coords = quotient_coords


def idempotent_family(N, a, sigma):
    """1_A = sum_{τ in T} τ(1_{μ_A}) for every a-element multisubset A ⊂ Σ."""
    sigma = _check_args(N, a, sigma, maxN=6)
    q = build_quotient_model(N, a, sigma)
    x = build_exterior_model(N, a, sigma)
    R = x.R
    dist = sigma.distinct()
    unis = {r: crt_idempotent(sigma.polynomial(), r) for r, _ in dist}
    out = []
    for A in multisubsets(sigma, a):
        counts = [sum(1 for s in A if s == r) for r, _ in dist]
        blocks = [c for c in counts if c]
        mu = tuple(A)
        one_mu = R.one()
        for i, r in enumerate(mu):
            e_i = {}
            for k, c in enumerate(unis[r]):
                if c:
                    ex = [0] * a
                    ex[i] = k
                    e_i[tuple(ex)] = c
            one_mu = R.mul(one_mu, e_i)
        T = coset_transversal(blocks) if a else [()]
        elem = {}
        for w in T:
            elem = R.add(elem, R.permute(one_mu, w))
        if a == 0:
            elem = R.one()
        ext = x.coords(R.mul(x.delta, elem)) if a else [Fraction(1)]
        quo = q.from_schur(ext) if a else q.algebra.one()
        out.append(IdempotentData(A, mu, elem, ext, quo))
    return out


def check_idempotent_family(N, a, sigma):
    """Orthogonality, completeness, idempotency, evaluation and agreement with
    the Artinian decomposition of the quotient model."""
    sigma = RootMultiset(sigma)
    fam = idempotent_family(N, a, sigma)
    q = build_quotient_model(N, a, sigma)
    alg = q.algebra
    rep = {"count": len(fam)}
    es = [f.quotient_coords for f in fam]
    rep["idempotent"] = all(alg.mul(e, e) == e for e in es)
    rep["orthogonal"] = all(
        not any(alg.mul(es[i], es[j])) for i in range(len(es)) for j in range(len(es)) if i != j
    )
    total = alg.zero()
    for e in es:
        total = alg.add(total, e)
    rep["complete"] = total == alg.one()
    rep["evaluation"] = all(
        q.evaluate(f.quotient_coords, g.A) == (1 if f.A == g.A else 0) for f in fam for g in fam
    )
    if a:
        gens = [alg.coords(MultiPoly.var(q.egens, i)) for i in range(a)]
        cands = {elem_values(A, k) for A in (f.A for f in fam) for k in range(1, a + 1)}
        pieces = alg.artinian_idempotents(gens, candidates=cands)
        by_vals = {vals: e for e, vals in pieces}
        ok = len(pieces) == len(fam)
        for f in fam:
            vals = tuple(elem_values(f.A, k) for k in range(1, a + 1))
            ok = ok and by_vals.get(vals) == f.quotient_coords
        rep["matches_artinian"] = ok
        R = build_exterior_model(N, a, sigma).R
        rep["ring_idempotent"] = all(R.mul(f.element, f.element) == f.element for f in fam)
    else:
        rep["matches_artinian"] = True
        rep["ring_idempotent"] = True
    rep["summand_dims"] = [alg.subspace_dim(e) for e in es]
    return rep


# local rings and the decomposition map -------------------------------------------------

class TruncatedRing:
    """Q[w_1..w_m] / (w_r^{n_r}); elements are dicts."""

    def __init__(self, bounds):
        self.bounds = tuple(bounds)
        self.m = len(bounds)

    def one(self):
        return {(0,) * self.m: Fraction(1)}

    def mul(self, u, v):
        out = {}
        b = self.bounds
        for e1, c1 in u.items():
            for e2, c2 in v.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                if any(x >= n for x, n in zip(e, b)):
                    continue
                w = out.get(e, 0) + c1 * c2
                if w:
                    out[e] = w
                else:
                    out.pop(e, None)
        return out

    def add(self, u, v, c=1):
        out = dict(u)
        for e, x in v.items():
            y = out.get(e, 0) + c * x
            if y:
                out[e] = y
            else:
                out.pop(e, None)
        return out

    def inverse(self, u):
        c0 = u.get((0,) * self.m, Fraction(0))
        if not c0:
            raise NotInvertible("not a unit in the local ring")
        n = {e: -c / c0 for e, c in u.items() if any(e)}
        inv = self.one()
        term = self.one()
        while True:
            term = self.mul(term, n)
            if not term:
                break
            inv = self.add(inv, term)
        return {e: c / c0 for e, c in inv.items()}

    def shifted_power(self, r, lam, k):
        """(w_r + lam)^k."""
        out = {}
        for j in range(min(k, self.bounds[r] - 1) + 1):
            e = [0] * self.m
            e[r] = j
            c = Fraction(comb(k, j)) * Fraction(lam) ** (k - j)
            if c:
                out[tuple(e)] = c
        return out


class SummandTarget:
    """⊗_j H_{a_j}^{N_j} (undeformed) for one multisubset A."""

    def __init__(self, sigma, A):
        self.A = tuple(A)
        dist = sigma.distinct()
        self.parts = []  # (root, N_j, a_j)
        for r, Nj in dist:
            aj = sum(1 for s in A if s == r)
            self.parts.append((r, Nj, aj))
        self.models = []
        alg = None
        for r, Nj, aj in self.parts:
            if aj == 0:
                continue
            m = build_quotient_model(Nj, aj, [0] * Nj)
            self.models.append((r, Nj, aj, m))
            alg = m.algebra if alg is None else alg.tensor(m.algebra)
        self.algebra = alg if alg is not None else trivial_algebra()

    @property
    def dim(self):
        return self.algebra.dim


def _block_layout(target):
    """Variable positions of each nontrivial block in μ_A order."""
    layout = []
    pos = 0
    for r, Nj, aj, m in target.models:
        layout.append((list(range(pos, pos + aj)), r, Nj, aj, m))
        pos += aj
    return layout


def summand_map(ext, target, scale="unit"):
    """Linear map Λ^a H_1^Σ -> target algebra as a list of image vectors.

    scale="unit" multiplies by c = 1·ΠΔ_i/Δ (the unital choice);
    scale="inverse" divides by c instead, which is not multiplicative unless c² = 1.
    """
    a = ext.a
    layout = _block_layout(target)
    bounds = [0] * a
    lam_of = [None] * a
    for positions, r, Nj, aj, m in layout:
        for p in positions:
            bounds[p] = Nj
            lam_of[p] = r
    L = TruncatedRing(bounds)
    # phi(Π_cross) and its inverse
    cross = L.one()
    blk = [None] * a
    for bi, (positions, *_rest) in enumerate(layout):
        for p in positions:
            blk[p] = bi
    for r_ in range(a):
        for s_ in range(r_ + 1, a):
            if blk[r_] != blk[s_]:
                lin = {}
                er = [0] * a
                er[r_] = 1
                es = [0] * a
                es[s_] = 1
                lin[tuple(er)] = Fraction(1)
                lin[tuple(es)] = Fraction(-1)
                const = Fraction(lam_of[r_]) - Fraction(lam_of[s_])
                if const:
                    lin[(0,) * a] = const
                cross = L.mul(cross, lin)
    cinv = L.inverse(cross) if scale == "unit" else cross
    # precompute shifted powers per position
    pw = {}

    def phi_mono(e):
        out = L.one()
        for p, k in enumerate(e):
            if k:
                key = (p, k)
                if key not in pw:
                    pw[key] = L.shifted_power(p, lam_of[p], k)
                out = L.mul(out, pw[key])
        return out

    # wedge-coordinate extraction per block
    block_keys = []
    for positions, r, Nj, aj, m in layout:
        keys = []
        for lam in m.partitions:
            keys.append(tuple(lam.padded(aj)[j] + aj - 1 - j for j in range(aj)))
        block_keys.append(keys)
    images = []
    for b in ext.basis:
        y = {}
        for e, c in b.items():
            y = L.add(y, phi_mono(e), c)
        y = L.mul(y, cinv)
        # coefficients on tensor products of wedge bases, then Schur classes
        vec = None
        coeff_tensor = {}
        for combo in cartesian(*(range(len(k)) for k in block_keys)):
            e = ()
            for bi, idx in enumerate(combo):
                e += block_keys[bi][idx]
            c = y.get(e, Fraction(0))
            if c:
                coeff_tensor[combo] = c
        # express in the target basis: tensor of Schur-class coordinates
        vec = [Fraction(0)] * target.dim
        for combo, c in coeff_tensor.items():
            part = [Fraction(1)]
            for bi, idx in enumerate(combo):
                m = layout[bi][4]
                cls = m.schur_class(m.partitions[idx])
                part = [x * z for x in part for z in cls]
            vec = [v + c * p for v, p in zip(vec, part)]
        images.append(vec)
    return images


class DecompositionReport:
    def __init__(self):
        self.summands = []  # (A, dim)
        self.dim = 0
        self.bijective = False
        self.unital = False
        self.multiplicative = False
        self.failures = []

    @property
    def iso_verified(self):
        return self.bijective and self.unital and self.multiplicative

    def to_dict(self):
        return {
            "dim": self.dim,
            "summands": [{"A": [str(s) for s in A], "dim": d} for A, d in self.summands],
            "iso_verified": self.iso_verified,
        }


def decomposition_iso(N, a, sigma, scale="unit"):
    """Build and verify H_a^Σ ≅ ⊕_A ⊗_j H_{a_j}^{N_j} (undeformed factors)."""
    sigma = _check_args(N, a, sigma, maxN=5)
    q = build_quotient_model(N, a, sigma)
    ext = build_exterior_model(N, a, sigma)
    rep = DecompositionReport()
    rep.dim = q.dim
    targets = [SummandTarget(sigma, A) for A in multisubsets(sigma, a)]
    rep.summands = [(t.A, t.dim) for t in targets]
    if a == 0:
        rep.bijective = rep.unital = rep.multiplicative = (q.dim == 1 and len(targets) == 1)
        return rep
    # source: quotient model; each basis vector -> Schur coords -> wedge element
    blocks = [summand_map(ext, t, scale) for t in targets]
    offsets = []
    tot = 0
    for t in targets:
        offsets.append(tot)
        tot += t.dim

    def F(v):
        """Image of a quotient-model vector under the full map."""
        s = q.to_schur(v)
        out = []
        for t, imgs in zip(targets, blocks):
            part = [Fraction(0)] * t.dim
            for c, img in zip(s, imgs):
                if c:
                    part = [p + c * x for p, x in zip(part, img)]
            out.append(part)
        return out

    def tmul(u, v):
        return [t.algebra.mul(x, y) for t, x, y in zip(targets, u, v)]

    alg = q.algebra
    imgs = [F(alg.basis_vector(i)) for i in range(q.dim)]
    flat = [sum(p, []) for p in imgs]
    rep.bijective = tot == q.dim and rank(flat) == q.dim
    rep.unital = F(alg.one()) == [t.algebra.one() for t in targets]
    mult = True
    for i in range(q.dim):
        for j in range(i, q.dim):
            lhs = F(alg.table[i][j])
            rhs = tmul(imgs[i], imgs[j])
            if lhs != rhs:
                mult = False
                rep.failures.append((i, j))
    rep.multiplicative = mult
    return rep


def expected_summand_dims(N, a, sigma):
    sigma = RootMultiset(sigma)
    out = []
    for A in multisubsets(sigma, a):
        d = 1
        for r, Nj in sigma.distinct():
            d *= comb(Nj, sum(1 for s in A if s == r))
        out.append((A, d))
    return out


# splitters -----------------------------------------------------------------------------

def _idempotent_poly(q, A):
    for f in idempotent_family(q.N, q.a, q.sigma):
        if tuple(f.A) == tuple(sorted(Fraction(s) for s in A)):
            return q.algebra.to_poly(f.quotient_coords)
    return None


def splitter_algebra(N, sigma, a, b, A, B, C):
    """dim of 1_C H_{a+b} ⊗ 1_A H_a ⊗ 1_B H_b / <e_i(X) = e_i(X1 ⊔ X2)>."""
    sigma = _check_args(N, a + b, sigma, maxN=6)
    qa = build_quotient_model(N, a, sigma)
    qb = build_quotient_model(N, b, sigma)
    qc = build_quotient_model(N, a + b, sigma)
    Ea = tuple(f"A{i}" for i in range(1, a + 1))
    Eb = tuple(f"B{i}" for i in range(1, b + 1))
    gens = Ea + Eb

    def ren(p, names):
        return MultiPoly(gens, {tuple(_pad(e, names, gens)): c for e, c in p.terms.items()})

    rels = [ren(g, Ea) for g in qa.ideal.generators] + [ren(g, Eb) for g in qb.ideal.generators]
    # e_k(X) in terms of the split alphabets
    ek = []
    for k in range(0, a + b + 1):
        s = MultiPoly.zero(gens)
        for i in range(0, k + 1):
            j = k - i
            if i <= a and j <= b:
                ti = MultiPoly.one(gens) if i == 0 else MultiPoly.var(gens, Ea[i - 1])
                tj = MultiPoly.one(gens) if j == 0 else MultiPoly.var(gens, Eb[j - 1])
                s = s + ti * tj
        ek.append(s)
    subsX = {qc.egens[k - 1]: ek[k] for k in range(1, a + b + 1)}
    rels += [g.subs(subsX, gens) for g in qc.ideal.generators]
    I = Ideal(rels, gens)
    S = QuotientAlgebra(I)
    pa = _idempotent_poly(qa, A)
    pb = _idempotent_poly(qb, B)
    pc = _idempotent_poly(qc, C)
    if pa is None or pb is None or pc is None:
        return 0
    e = S.coords(ren(pa, Ea) * ren(pb, Eb) * pc.subs(subsX, gens))
    return S.subspace_dim(e)


def _pad(e, names, gens):
    out = [0] * len(gens)
    for k, n in zip(e, names):
        out[gens.index(n)] = k
    return out


def split_unit_inverse(N, sigma, a, b, A, B):
    """Invert sum_α (-1)^{|α^|} π_α(X) π_{α^'}(Y) in 1_A H_a ⊗ 1_B H_b.

    Returns (inverse vector, tensor algebra, idempotent) or raises NotInvertible
    when A and B share a root.
    """
    sigma = RootMultiset(sigma)
    qa = build_quotient_model(N, a, sigma)
    qb = build_quotient_model(N, b, sigma)
    T = qa.algebra.tensor(qb.algebra)
    u = T.zero()
    for lam in partitions_in_box(a, b):
        hat = box_complement(lam, a, b)
        xa = qa.algebra.coords(schur_in_e(lam, qa.egens))
        yb = qb.algebra.coords(schur_in_e(hat.conjugate(), qb.egens))
        t = [x * y for x in xa for y in yb]
        u = T.add(u, T.scale(t, (-1) ** hat.size))
    ea = qa.algebra.coords(_idempotent_poly(qa, A))
    eb = qb.algebra.coords(_idempotent_poly(qb, B))
    e = [x * y for x in ea for y in eb]
    inv = T.inverse(u, e)
    if T.mul(inv, T.mul(u, e)) != e:
        raise VerificationError("split unit inverse check failed")
    return inv, T, e, u


def split_unit_value(A, B):
    """prod_{λ∈A, μ∈B} (λ - μ): the value of the split unit at (A, B)."""
    v = Fraction(1)
    for l in A:
        for m in B:
            v *= Fraction(l) - Fraction(m)
    return v
