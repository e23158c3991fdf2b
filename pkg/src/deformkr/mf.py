"""Deformed Koszul matrix factorizations.

Potentials, the web-to-MF compiler, foam morphisms solved from their
stabilization squares, and homology of closed 1-labeled braid closures by
variable exclusion followed by a regular-sequence quotient.

Module elements of a Koszul factorization with rows (a_i, b_i) are dicts
S -> MultiPoly with S a sorted tuple of row indices (the exterior monomial
θ_S); the differential is d = Σ a_i θ_i∧ + b_i ι_i, so d² = Σ a_i b_i.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product as cartesian

from .algebra.groebner import Ideal
from .algebra.linalg import sparse_solve
from .algebra.poly import MultiPoly, all_monomials, exact_divide
from .algebra import upoly
from .errors import InfiniteDimensional, InputError, OutOfScale, VerificationError
from .symfn import RootMultiset, power, sym_to_e, xvars, evars


# potentials ------------------------------------------------------------------------

class Potential:
    """Q with Q' = (N+1) P and Q(0) = 0, P = Π (X - λ) over Σ."""

    def __init__(self, sigma):
        self.sigma = sigma if isinstance(sigma, RootMultiset) else RootMultiset(sigma)
        self.N = len(self.sigma)
        p = self.sigma.polynomial()
        self.P = p
        self.coeffs = [Fraction(0)] + [Fraction(self.N + 1) * c / (k + 1) for k, c in enumerate(p)]

    def __call__(self, x):
        """Q evaluated at a polynomial (or number) x."""
        if not isinstance(x, MultiPoly):
            return upoly.evaluate(self.coeffs, Fraction(x))
        out = MultiPoly.zero(x.gens)
        xp = MultiPoly.one(x.gens)
        for c in self.coeffs:
            if c:
                out = out + xp.scale(c)
            xp = xp * x
        return out

    def derivative(self):
        return upoly.derivative(self.coeffs)

    def check(self):
        return upoly.trim(self.derivative()) == upoly.trim(upoly.scale(self.P, self.N + 1)) \
            and self.coeffs[0] == 0

    def pi(self, x, y):
        """(Q(x) - Q(y)) / (x - y) as a polynomial, valid also for x = y."""
        gens = x.gens
        out = MultiPoly.zero(gens)
        xs = [MultiPoly.one(gens)]
        ys = [MultiPoly.one(gens)]
        for k in range(1, len(self.coeffs)):
            xs.append(xs[-1] * x)
            ys.append(ys[-1] * y)
        for k, c in enumerate(self.coeffs):
            if c and k:
                h = MultiPoly.zero(gens)
                for j in range(k):
                    h = h + xs[j] * ys[k - 1 - j]
                out = out + h.scale(c)
        return out

    def on_alphabet(self, gens, alphabet):
        """Σ_k q_k p_k(alphabet)."""
        out = MultiPoly.zero(gens)
        for k, c in enumerate(self.coeffs):
            if c and k:
                out = out + power(k, gens, alphabet).scale(c)
        return out

    def in_e(self, k):
        """Q of a k-letter alphabet written in its elementary coordinates E1..Ek."""
        return _potential_in_e(tuple(self.coeffs), k)


@lru_cache(maxsize=64)
def _potential_in_e(coeffs, k):
    xs = xvars(k)
    f = MultiPoly.zero(xs)
    for j, c in enumerate(coeffs):
        if c and j:
            f = f + power(j, xs).scale(c)
    return sym_to_e(f, egens=evars(k))


# exterior algebra ------------------------------------------------------------------

def _wedge(i, S):
    """θ_i ∧ θ_S = sign θ_T, or None."""
    if i in S:
        return None
    n = sum(1 for j in S if j < i)
    return (-1) ** n, tuple(sorted(S + (i,)))


def _contract(i, S):
    """ι_i θ_S = sign θ_T, or None."""
    if i not in S:
        return None
    n = sum(1 for j in S if j < i)
    return (-1) ** n, tuple(j for j in S if j != i)


def _add(out, S, p):
    if not p.terms:
        return
    q = out.get(S)
    q = p if q is None else q + p
    if q.terms:
        out[S] = q
    else:
        out.pop(S, None)


def subsets(k):
    return [S for n in range(k + 1) for S in combinations(range(k), n)]


def elements_equal(m1, m2):
    keys = set(m1) | set(m2)
    for S in keys:
        a, b = m1.get(S), m2.get(S)
        if a is None:
            if b is not None and b.terms:
                return False
        elif b is None:
            if a.terms:
                return False
        elif a != b:
            return False
    return True


# Koszul factorizations -------------------------------------------------------------

class KoszulMF:
    """{a; b}: tensor product of the rank-one factorizations R ⇄ R over Q[gens]."""

    def __init__(self, gens, rows, potential=None):
        self.gens = tuple(gens)
        self.rows = [(self._lift(a), self._lift(b)) for a, b in rows]
        self.expected = potential

    def _lift(self, p):
        if isinstance(p, MultiPoly):
            return p if p.gens == self.gens else p.embed(self.gens)
        return MultiPoly.const(self.gens, p)

    def __len__(self):
        return len(self.rows)

    @property
    def potential(self):
        w = MultiPoly.zero(self.gens)
        for a, b in self.rows:
            w = w + a * b
        return w

    def basis(self):
        return subsets(len(self.rows))

    def apply_d(self, m, skip=None):
        out = {}
        for S, c in m.items():
            for i, (a, b) in enumerate(self.rows):
                if i == skip:
                    continue
                t = _wedge(i, S)
                if t is not None and a.terms:
                    _add(out, t[1], (a * c).scale(t[0]))
                t = _contract(i, S)
                if t is not None and b.terms:
                    _add(out, t[1], (b * c).scale(t[0]))
        return out

    def d_matrix(self):
        """{(T, S): entry} with d θ_S = Σ_T entry θ_T."""
        M = {}
        for S in self.basis():
            for T, p in self.apply_d({S: MultiPoly.one(self.gens)}).items():
                M[(T, S)] = p
        return M

    def check_d2(self):
        w = self.potential
        for S in self.basis():
            dd = self.apply_d(self.apply_d({S: MultiPoly.one(self.gens)}))
            if not elements_equal(dd, {S: w}):
                return False
        return True

    def tensor(self, other):
        gens = self.gens + tuple(g for g in other.gens if g not in self.gens)
        return KoszulMF(gens, [(a.embed(gens), b.embed(gens)) for a, b in self.rows + other.rows])

    def subs(self, mapping, gens):
        gens = tuple(gens)
        return KoszulMF(gens, [(a.subs(mapping, gens), b.subs(mapping, gens)) for a, b in self.rows])

    def to_two_periodic(self):
        B = self.basis()
        even = [S for S in B if len(S) % 2 == 0]
        odd = [S for S in B if len(S) % 2 == 1]
        M = self.d_matrix()
        zero = MultiPoly.zero(self.gens)
        d0 = [[M.get((T, S), zero) for S in even] for T in odd]
        d1 = [[M.get((T, S), zero) for S in odd] for T in even]
        return TwoPeriodicComplex(self.gens, even, odd, d0, d1, self.potential)

    def __repr__(self):
        return f"KoszulMF({len(self.rows)} rows over {len(self.gens)} variables)"


@dataclass
class TwoPeriodicComplex:
    """M_0 ⇄ M_1 with d_1 d_0 = w = d_0 d_1."""
    gens: tuple
    basis0: list
    basis1: list
    d0: list        # matrix M_0 -> M_1 (rows indexed by basis1)
    d1: list        # matrix M_1 -> M_0
    w: MultiPoly

    def check(self):
        def mul(A, B):
            zero = MultiPoly.zero(self.gens)
            out = []
            for r in A:
                row = []
                for j in range(len(B[0]) if B else 0):
                    s = zero
                    for k, x in enumerate(r):
                        if x.terms and B[k][j].terms:
                            s = s + x * B[k][j]
                    row.append(s)
                out.append(row)
            return out
        for P in (mul(self.d1, self.d0), mul(self.d0, self.d1)):
            for i, r in enumerate(P):
                for j, x in enumerate(r):
                    if x != (self.w if i == j else MultiPoly.zero(self.gens)):
                        return False
        return True


@dataclass
class MFMorphism:
    """Matrix {(T, S): poly} between Koszul factorizations; parity 0 or 1."""
    src: KoszulMF
    tgt: KoszulMF
    entries: dict
    parity: int = 0
    degree: int = None

    def apply(self, m):
        out = {}
        for S, c in m.items():
            for T in self.tgt.basis():
                f = self.entries.get((T, S))
                if f is not None and f.terms:
                    _add(out, T, f * c)
        return out

    def compose(self, other):
        """self ∘ other."""
        assert other.tgt.gens == self.src.gens
        ent = {}
        for S in other.src.basis():
            img = self.apply(other.apply({S: MultiPoly.one(other.src.gens)}))
            for T, p in img.items():
                ent[(T, S)] = p
        return MFMorphism(other.src, self.tgt, ent, (self.parity + other.parity) % 2)

    def __sub__(self, other):
        ent = dict(self.entries)
        for k, p in other.entries.items():
            q = ent.get(k, MultiPoly.zero(self.src.gens)) - p
            if q.terms:
                ent[k] = q
            else:
                ent.pop(k, None)
        return MFMorphism(self.src, self.tgt, ent, self.parity)

    def is_chain_map(self):
        sgn = (-1) ** self.parity
        for S in self.src.basis():
            e = {S: MultiPoly.one(self.src.gens)}
            lhs = self.tgt.apply_d(self.apply(e))
            rhs = self.apply(self.src.apply_d(e))
            rhs = {T: p.scale(sgn) for T, p in rhs.items()}
            if not elements_equal(lhs, rhs):
                return False
        return True

    def is_null_homotopic(self, max_degree=None):
        """Solve self = d h + h d (h of the opposite parity) in bounded degree."""
        gens = self.src.gens
        top = max([p.degree() for p in self.entries.values() if p.terms] or [0])
        max_degree = max_degree if max_degree is not None else top + 2
        for D in range(0, max_degree + 1):
            h = _solve_map(self.src, self.tgt, 1 - self.parity, D,
                           [("left", self.tgt, 1), ("right", self.src, 1)], self.entries)
            if h is not None:
                return True
        return False

    @staticmethod
    def scalar(K, p):
        return MFMorphism(K, K, {(S, S): K._lift(p) for S in K.basis()}, 0)

    @staticmethod
    def identity(K):
        return MFMorphism.scalar(K, 1)


# bounded-degree linear solves for morphisms ------------------------------------------

def _solve_map(src, tgt, parity, D, terms, target, fixed=None, extra=None):
    """Find X : src -> tgt of the given parity, entries of degree <= D, with

        Σ over terms:  ("left", K, c) -> c d_K ∘ X,  ("right", K, c) -> c X ∘ d_K
        equal to `target` ({(T, S): poly}, missing = 0).

    fixed: {(T, S): poly or None} pins entries exactly (None = entry is 0).
    extra: optional callable(unknowns, eqs) adding more linear constraints.
    Returns the entries dict or None.
    """
    gens = src.gens
    n = len(gens)
    monos = [e for d in range(D + 1) for e in all_monomials(n, d)]
    fixed = fixed or {}
    unknown = {}
    nvar = 0
    for S in src.basis():
        for T in tgt.basis():
            if (len(T) + len(S)) % 2 != parity or (T, S) in fixed:
                continue
            unknown[(T, S)] = list(range(nvar, nvar + len(monos)))
            nvar += len(monos)
    eqs = {}     # (T, S, exp) -> {var: coeff}
    const = {}   # (T, S, exp) -> value moved to the right side

    def add_lin(key, var, c):
        row = eqs.setdefault(key, {})
        v = row.get(var, 0) + c
        if v:
            row[var] = v
        else:
            row.pop(var, None)

    def add_const(key, c):
        const[key] = const.get(key, 0) + c

    def entry_terms(T, S):
        """Linear form of X_{T,S}: list of (var or None, exp, coeff)."""
        if (T, S) in fixed:
            p = fixed[(T, S)]
            return [] if p is None else [(None, e, c) for e, c in p.terms.items()]
        if (T, S) in unknown:
            return [(v, e, 1) for v, e in zip(unknown[(T, S)], monos)]
        return []

    for kind, K, coef in terms:
        dM = {k: p.scale(coef) for k, p in K.d_matrix().items()}
        by_col = {}
        for (T, U), p in dM.items():
            by_col.setdefault(U, []).append((T, p))
        if kind == "left":
            for S in src.basis():
                for U in tgt.basis():
                    lt = entry_terms(U, S)
                    if not lt:
                        continue
                    for T, p in by_col.get(U, []):
                        for var, e, c in lt:
                            for e2, c2 in p.terms.items():
                                key = (T, S, tuple(x + y for x, y in zip(e, e2)))
                                if var is None:
                                    add_const(key, -c * c2)
                                else:
                                    add_lin(key, var, c * c2)
        else:
            for U in src.basis():
                for S, p in [(S, p) for (T, S), p in dM.items() if T == U]:
                    for T in tgt.basis():
                        lt = entry_terms(T, U)
                        for var, e, c in lt:
                            for e2, c2 in p.terms.items():
                                key = (T, S, tuple(x + y for x, y in zip(e, e2)))
                                if var is None:
                                    add_const(key, -c * c2)
                                else:
                                    add_lin(key, var, c * c2)
    for (T, S), p in target.items():
        for e, c in p.terms.items():
            add_const((T, S, e), c)
    keys = set(eqs) | set(const)
    rows, rhs = [], []
    for k in keys:
        rows.append(eqs.get(k, {}))
        rhs.append(const.get(k, 0))
    if extra is not None:
        nvar = extra(unknown, monos, rows, rhs, nvar)
    sol = sparse_solve(rows, rhs, nvar)
    if sol is None:
        return None
    out = {}
    for key, p in fixed.items():
        if p is not None and p.terms:
            out[key] = p
    for key, vars_ in unknown.items():
        t = {e: sol[v] for v, e in zip(vars_, monos) if sol[v]}
        if t:
            out[key] = MultiPoly(gens, t)
    return out


# webs to factorizations ------------------------------------------------------------

def _union_e(ea, eb):
    """Elementary symmetric functions of a disjoint union from those of the parts."""
    gens = ea[0].gens
    k = len(ea) + len(eb) - 2
    out = [MultiPoly.one(gens)]
    for i in range(1, k + 1):
        s = MultiPoly.zero(gens)
        for j in range(max(0, i - len(eb) + 1), min(i, len(ea) - 1) + 1):
            s = s + ea[j] * eb[i - j]
        out.append(s)
    return out


@lru_cache(maxsize=256)
def _divided_differences(coeffs, k):
    """For G = Q in E-coordinates of a k-alphabet: the k telescoping quotients.

    Returned over gens (V1..Vk, U1..Uk); the i-th is
    [G(V_<=i, U_>i) - G(V_<i, U_>=i)] / (V_i - U_i).
    """
    G = _potential_in_e(coeffs, k)
    E = evars(k)
    V = tuple(f"V{i}" for i in range(1, k + 1))
    U = tuple(f"U{i}" for i in range(1, k + 1))
    gens = V + U
    out = []
    for i in range(k):
        hi = G.subs({E[j]: MultiPoly.var(gens, V[j] if j <= i else U[j]) for j in range(k)}, gens)
        lo = G.subs({E[j]: MultiPoly.var(gens, V[j] if j < i else U[j]) for j in range(k)}, gens)
        out.append(exact_divide(hi - lo, MultiPoly.var(gens, V[i]) - MultiPoly.var(gens, U[i])))
    return gens, tuple(out)


def telescoping_rows(Q, v, u):
    """Rows (U_i, v_i - u_i), i = 1..k, with Σ U_i (v_i - u_i) = Q(in) - Q(out).

    v, u: elementary symmetric functions e_1..e_k of the incoming and the
    outgoing alphabet, as polynomials over a common ring.
    """
    k = len(v)
    assert len(u) == k
    gens, quots = _divided_differences(tuple(Q.coeffs), k)
    ring = v[0].gens if k else ()
    mp = {}
    for j in range(k):
        mp[gens[j]] = v[j]
        mp[gens[k + j]] = u[j]
    return [(q.subs(mp, ring), v[i] - u[i]) for i, q in enumerate(quots)]


def web_to_mf(W, sigma):
    """Koszul factorization of a merge/split web over Q[edge alphabets].

    A k-labeled edge carries variables for e_1..e_k of its alphabet (a single
    variable when k = 1).  Edges running straight from the bottom boundary to
    the top boundary get two alphabets joined by a telescoping arc row.
    """
    Q = sigma if isinstance(sigma, Potential) else Potential(sigma)
    if any(lab == 0 for lab, _, _ in W.edges):
        W = W.erase_zero()
    if not W.check():
        raise InputError("web fails flow conservation / trivalence")
    if any(lab < 1 or lab > Q.N for lab, _, _ in W.edges):
        raise InputError(f"edge labels must lie in 1..{Q.N}")
    kinds = W.vertices
    names = []
    alph = {}

    def alphabet(tag, k):
        vs = [f"w{tag}"] if k == 1 else [f"w{tag}_{j}" for j in range(1, k + 1)]
        names.extend(vs)
        return vs

    for idx, (lab, t, h) in enumerate(W.edges):
        if kinds[t] == "in" and kinds[h] == "out":
            alph[(idx, "in")] = alphabet(f"{idx}i", lab)
            alph[(idx, "out")] = alphabet(f"{idx}o", lab)
        else:
            alph[(idx, "in")] = alph[(idx, "out")] = alphabet(str(idx), lab)
    gens = tuple(names)

    def e_of(idx, end):
        vs = alph[(idx, end)]
        return [MultiPoly.one(gens)] + [MultiPoly.var(gens, v) for v in vs]

    rows = []
    expected = MultiPoly.zero(gens)
    for idx, (lab, t, h) in enumerate(W.edges):
        if kinds[t] == "in" and kinds[h] == "out":
            rows += telescoping_rows(Q, e_of(idx, "in")[1:], e_of(idx, "out")[1:])
        if kinds[t] == "in":
            expected = expected + _q_of_e(Q, e_of(idx, "in")[1:])
        if kinds[h] == "out":
            expected = expected - _q_of_e(Q, e_of(idx, "out")[1:])
    for v in sorted(kinds):
        kind = kinds[v]
        if kind not in ("merge", "split"):
            continue
        ins = [i for i, (_, _, h) in enumerate(W.edges) if h == v]
        outs = [i for i, (_, t, _) in enumerate(W.edges) if t == v]
        if kind == "merge":
            a, b = ins
            e_in = _union_e(e_of(a, "out"), e_of(b, "out"))
            e_out = e_of(outs[0], "in")
        else:
            e_in = e_of(ins[0], "out")
            c, d = outs
            e_out = _union_e(e_of(c, "in"), e_of(d, "in"))
        rows += telescoping_rows(Q, e_in[1:], e_out[1:])
    K = KoszulMF(gens, rows, expected)
    if K.potential != expected:
        raise VerificationError("web factorization has the wrong potential")
    return K


def _q_of_e(Q, e):
    """Q of an alphabet given its elementary symmetric functions."""
    k = len(e)
    G = Q.in_e(k)
    E = evars(k)
    return G.subs({E[j]: e[j] for j in range(k)}, e[0].gens)


# crossings -------------------------------------------------------------------------

LOCAL = ("x1", "x2", "y1", "y2")     # bottom-left, bottom-right, top-left, top-right


def oriented_mf(Q, gens=LOCAL):
    x1, x2, y1, y2 = (MultiPoly.var(gens, g) for g in gens[:4])
    return KoszulMF(gens, [(Q.pi(x1, y1), x1 - y1), (Q.pi(x2, y2), x2 - y2)])


def wide_mf(Q, gens=LOCAL):
    x1, x2, y1, y2 = (MultiPoly.var(gens, g) for g in gens[:4])
    return KoszulMF(gens, telescoping_rows(Q, [x1 + x2, x1 * x2], [y1 + y2, y1 * y2]))


def solve_foam_lift(src, tgt, phi, max_degree):
    """Even chain map f: src -> tgt whose stabilization square is φ.

    With both factorizations projected onto the θ_∅ component modulo their
    b-entries, the square reads f_{∅∅} ≡ φ and f_{∅,top} ≡ 0; the exact
    versions are tried first, then versions up to multiples of the b-entries.
    Returns (entries, degree).
    """
    k = len(src)
    top = tuple(range(k))
    phi = src._lift(phi)
    for D in range(0, max_degree + 1):
        fixed = {((), ()): phi, ((), top): None}
        ent = _solve_map(src, tgt, 0, D, [("left", tgt, 1), ("right", src, -1)], {}, fixed=fixed)
        if ent is not None:
            return ent, D
        ent = _solve_map(src, tgt, 0, D, [("left", tgt, 1), ("right", src, -1)], {},
                         extra=_square_up_to(tgt, phi, top, D))
        if ent is not None:
            return ent, D
    raise VerificationError(f"no foam lift up to ansatz degree {max_degree}")


def _square_up_to(tgt, phi, top, D):
    """Constraints f_{∅∅} - φ, f_{∅,top} ∈ (b-entries of tgt), cofactors of degree <= D."""
    bs = [b for _, b in tgt.rows]
    n = len(tgt.gens)

    def extra(unknown, monos, rows, rhs, nvar):
        cof = [e for d in range(D + 1) for e in all_monomials(n, d)]
        for key, target in ((((), ()), phi), (((), top), None)):
            eqs = {}
            for v, e in zip(unknown[key], monos):
                eqs.setdefault(e, {})[v] = Fraction(1)
            for b in bs:
                for e in cof:
                    for e2, c in b.terms.items():
                        ee = tuple(x + y for x, y in zip(e, e2))
                        eqs.setdefault(ee, {})
                        eqs[ee][nvar] = eqs[ee].get(nvar, 0) - c
                    nvar += 1
            tt = target.terms if target is not None else {}
            for e in set(eqs) | set(tt):
                rows.append(eqs.get(e, {}))
                rhs.append(tt.get(e, 0))
        return nvar
    return extra


@dataclass
class CrossingMF:
    """Two-term complex of a 1-labeled crossing with its foam lifts.

    terms: [(homological degree, KoszulMF)], maps: the differential.
    zip: wide -> oriented (φ = 1), unzip: oriented -> wide (φ = x1 - y2).
    """
    sign: int
    Q: Potential
    oriented: KoszulMF
    wide: KoszulMF
    zip: MFMorphism
    unzip: MFMorphism

    @property
    def terms(self):
        if self.sign < 0:
            return [(-1, self.wide), (0, self.oriented)]
        return [(0, self.oriented), (1, self.wide)]

    @property
    def differential(self):
        return self.zip if self.sign < 0 else self.unzip

    def check(self):
        """Chain maps, potentials, and the defining squares."""
        out = {}
        out["potentials_equal"] = self.oriented.potential == self.wide.potential
        out["d2_oriented"] = self.oriented.check_d2()
        out["d2_wide"] = self.wide.check_d2()
        out["zip_chain_map"] = self.zip.is_chain_map()
        out["unzip_chain_map"] = self.unzip.is_chain_map()
        out["zip_square"] = _square_holds(self.zip, MultiPoly.one(LOCAL))
        out["unzip_square"] = _square_holds(self.unzip, _unzip_phi())
        return out


def _unzip_phi():
    x1, x2, y1, y2 = (MultiPoly.var(LOCAL, g) for g in LOCAL)
    return x1 - y2


def _square_holds(f, phi):
    ideal = Ideal([b for _, b in f.tgt.rows], gens=f.tgt.gens)
    top = tuple(range(len(f.src)))
    zero = MultiPoly.zero(f.src.gens)
    return ideal.contains(f.entries.get(((), ()), zero) - phi) and \
        ideal.contains(f.entries.get(((), top), zero))


@lru_cache(maxsize=32)
def _crossing_lifts(sigma):
    Q = Potential(sigma)
    O, W = oriented_mf(Q), wide_mf(Q)
    zip_e, dz = solve_foam_lift(W, O, MultiPoly.one(LOCAL), 2 * Q.N)
    unzip_e, du = solve_foam_lift(O, W, _unzip_phi(), 2 * Q.N)
    return Q, O, W, MFMorphism(W, O, zip_e, 0, dz), MFMorphism(O, W, unzip_e, 0, du)


def crossing_mf_complex(sign, sigma):
    if sign not in (1, -1):
        raise InputError("crossing sign must be +1 or -1")
    sigma = sigma if isinstance(sigma, RootMultiset) else RootMultiset(sigma)
    Q, O, W, z, u = _crossing_lifts(sigma)
    C = CrossingMF(sign, Q, O, W, z, u)
    chk = C.check()
    if not all(chk.values()):
        raise VerificationError(f"crossing factorization checks failed: {chk}")
    return C


# variable exclusion ----------------------------------------------------------------

@dataclass
class ExclusionStep:
    """Row r had an entry c·x + g (x not in g); x was replaced by -g/c and r dropped.

    swapped: the linear entry was a_r (not b_r); the surviving component is
    then the θ_r part rather than the θ_r-free part.
    """
    row: int
    var: str
    value: MultiPoly          # over the smaller ring
    swapped: bool
    before: KoszulMF
    after: KoszulMF


def _linear_in(p, i):
    """(c, g) with p = c·x_i + g, c a nonzero constant and x_i absent from g; else None."""
    c = None
    rest = {}
    for e, v in p.terms.items():
        if e[i]:
            if e[i] != 1 or any(k for j, k in enumerate(e) if j != i):
                return None
            c = v
        else:
            rest[e] = v
    if c is None:
        return None
    return c, MultiPoly._raw(p.gens, rest)


def eligible_rows(K):
    """All (row, var, swapped) admitting an exclusion, b-entries first."""
    out = []
    for r, (a, b) in enumerate(K.rows):
        for swapped, p in ((False, b), (True, a)):
            for i, x in enumerate(K.gens):
                if _linear_in(p, i) is not None:
                    out.append((r, x, swapped))
    return out


def exclude_variable(K, row=None, var=None, swapped=None):
    """Substitute away one variable through a row whose entry is linear in it.

    Returns (smaller KoszulMF, ExclusionStep).  Without arguments the first
    eligible row (b-entries before a-entries, variables in ring order) is used.
    """
    cands = eligible_rows(K)
    if row is not None:
        cands = [c for c in cands if c[0] == row]
    if var is not None:
        cands = [c for c in cands if c[1] == var]
    if swapped is not None:
        cands = [c for c in cands if c[2] == swapped]
    if not cands:
        raise InputError("no eligible row for exclusion")
    r, x, sw = cands[0]
    a, b = K.rows[r]
    i = K.gens.index(x)
    c, g = _linear_in(a if sw else b, i)
    gens = tuple(v for v in K.gens if v != x)
    value = g.scale(-1 / c).embed(gens)
    mp = {x: value}
    rows = [(p.subs(mp, gens), q.subs(mp, gens)) for j, (p, q) in enumerate(K.rows) if j != r]
    small = KoszulMF(gens, rows)
    return small, ExclusionStep(r, x, value, sw, K, small)


def _renumber(S, r):
    return tuple(j - (j > r) for j in S)


def _unrenumber(S, r):
    return tuple(j + (j >= r) for j in S)


def project_step(step, m):
    """Chain map (up to sign) from the larger factorization onto the smaller one."""
    r, gens = step.row, step.after.gens
    mp = {step.var: step.value}
    out = {}
    for S, p in m.items():
        if (r in S) != step.swapped:
            continue
        if step.swapped:
            sgn, T = _contract(r, S)
        else:
            sgn, T = 1, S
        _add(out, _renumber(T, r), p.subs(mp, gens).scale(sgn))
    return out


def lift_step(step, m):
    """Cycle of the larger factorization projecting onto the cycle m."""
    K, r = step.before, step.row
    a, b = K.rows[r]
    alpha = {_unrenumber(S, r): p.embed(K.gens) for S, p in m.items()}
    dM = K.apply_d(alpha, skip=r)
    if not step.swapped:
        # m = α + θ_r β with β = -d_M α / b_r
        out = dict(alpha)
        for T, p in dM.items():
            sgn, U = _wedge(r, T)
            _add(out, U, exact_divide(p, b).scale(-sgn))
        return out
    # m = θ_r γ + δ with γ = α, δ = d_M α / a_r
    out = {}
    for T, p in alpha.items():
        sgn, U = _wedge(r, T)
        _add(out, U, p.scale(sgn))
    for T, p in dM.items():
        _add(out, T, exact_divide(p, a))
    return out


# homology of closed factorizations -------------------------------------------------

@dataclass
class ClosedReduction:
    """Homology of a closed (w = 0) Koszul factorization.

    After the exclusions, one entry per remaining row is chosen (a-entries for
    rows in S0) so that the chosen entries c form a regular sequence with a
    finite-dimensional quotient; then H ≅ Q[residual]/(c), with the projection
    m ↦ m_{S0} mod (c) composed with the exclusion projections.
    """
    full: KoszulMF
    steps: list
    residual: KoszulMF
    S0: tuple = ()
    ideal: Ideal = None
    basis: list = field(default_factory=list)    # standard monomials (exponent tuples)
    contractible: bool = False

    @property
    def dim(self):
        return 0 if self.contractible else len(self.basis)

    @property
    def parity(self):
        return (len(self.S0) + sum(1 for s in self.steps if s.swapped)) % 2

    def chosen(self):
        return [a if i in self.S0 else b for i, (a, b) in enumerate(self.residual.rows)]

    def others(self):
        return [b if i in self.S0 else a for i, (a, b) in enumerate(self.residual.rows)]

    def substitute(self, p):
        """Image of a polynomial of the full ring in the residual ring."""
        p = p.embed(self.full.gens) if p.gens != self.full.gens else p
        for s in self.steps:
            p = p.subs({s.var: s.value}, s.after.gens)
        return p

    def coords(self, p):
        """Coordinates of a residual polynomial in the standard-monomial basis."""
        if self.contractible:
            return []
        if self.ideal is not None:
            p = self.ideal.reduce(p)
        idx = {e: i for i, e in enumerate(self.basis)}
        v = [Fraction(0)] * len(self.basis)
        for e, c in p.terms.items():
            if e not in idx:
                raise VerificationError("normal form left the standard monomials")
            v[idx[e]] = c
        return v

    def project(self, m):
        """Residual polynomial representing the class of the full cycle m."""
        for s in self.steps:
            m = project_step(s, m)
        p = m.get(self.S0)
        return p if p is not None else MultiPoly.zero(self.residual.gens)

    def residual_cycle(self):
        """exp(Ω)|S0⟩ with Ω = Σ A_ij c_i c_j and (others) = A (chosen), A antisymmetric."""
        R = self.residual
        k = len(R)
        gens = R.gens
        one = MultiPoly.one(gens)
        vac = {self.S0: one}
        if k <= 1:
            if k == 1 and self.others()[0].terms:
                raise VerificationError("residual row with nonzero potential")
            return vac
        A = _antisymmetric_syzygy(self.others(), self.chosen(), gens)

        def create(i, m):
            out = {}
            for S, p in m.items():
                t = _contract(i, S) if i in self.S0 else _wedge(i, S)
                if t is not None:
                    _add(out, t[1], p.scale(t[0]))
            return out

        def omega(m):
            out = {}
            for (i, j), Aij in A.items():
                for S, p in create(i, create(j, m)).items():
                    _add(out, S, p * Aij)
            return out

        total = dict(vac)
        term = vac
        n = 0
        while term:
            n += 1
            term = {S: p.scale(Fraction(1, n)) for S, p in omega(term).items()}
            for S, p in term.items():
                _add(total, S, p)
        return total

    def lift_one(self):
        """Cycle of the full factorization whose class projects to 1."""
        m = self.residual_cycle()
        for s in reversed(self.steps):
            m = lift_step(s, m)
        return m


def _antisymmetric_syzygy(alpha, beta, gens, max_degree=None):
    """A antisymmetric with alpha_i = Σ_j A_ij beta_j (bounded-degree solve)."""
    k = len(alpha)
    n = len(gens)
    top = max([p.degree() for p in alpha if p.terms] or [0])
    max_degree = top + 2 if max_degree is None else max_degree
    pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
    for D in range(0, max_degree + 1):
        monos = [e for d in range(D + 1) for e in all_monomials(n, d)]
        eqs = {}
        for pi, (i, j) in enumerate(pairs):
            for mi, e in enumerate(monos):
                var = pi * len(monos) + mi
                # A_ij contributes +A_ij beta_j to alpha_i and -A_ij beta_i to alpha_j
                for row, bb, s in ((i, beta[j], 1), (j, beta[i], -1)):
                    for e2, c in bb.terms.items():
                        key = (row, tuple(x + y for x, y in zip(e, e2)))
                        eqs.setdefault(key, {})
                        eqs[key][var] = eqs[key].get(var, 0) + s * c
        target = {(i, e): c for i, p in enumerate(alpha) for e, c in p.terms.items()}
        keys = set(eqs) | set(target)
        rows = [eqs.get(key, {}) for key in keys]
        rhs = [target.get(key, 0) for key in keys]
        sol = sparse_solve(rows, rhs, len(pairs) * len(monos))
        if sol is not None:
            A = {}
            for pi, p in enumerate(pairs):
                t = {e: sol[pi * len(monos) + mi] for mi, e in enumerate(monos) if sol[pi * len(monos) + mi]}
                if t:
                    A[p] = MultiPoly(gens, t)
            return A
    raise OutOfScale("no antisymmetric syzygy in the degree bound")


def reduce_closed(K, order=None, check=True):
    """Exclude variables exhaustively, then pick the regular sequence.

    order: None for the canonical choice, or an int seed picking a random
    eligible exclusion at every step.
    """
    if check and K.potential.terms:
        raise InputError("factorization is not closed (nonzero potential)")
    rng = random.Random(order) if order is not None else None
    steps = []
    cur = K
    while True:
        cands = eligible_rows(cur)
        if not cands:
            break
        r, x, sw = rng.choice(cands) if rng else cands[0]
        cur, step = exclude_variable(cur, r, x, sw)
        steps.append(step)
    red = ClosedReduction(K, steps, cur)
    for a, b in cur.rows:
        for p in (a, b):
            if p.terms and p.is_constant():
                red.contractible = True
                return red
    k, n = len(cur.rows), len(cur.gens)
    if k == 0:
        red.basis = [()]
        return red
    if k != n:
        raise OutOfScale(f"residual has {k} rows over {n} variables")
    for size in range(k + 1):
        for S0 in combinations(range(k), size):
            chosen = [a if i in S0 else b for i, (a, b) in enumerate(cur.rows)]
            if any(not p.terms for p in chosen):
                continue
            I = Ideal(chosen, gens=cur.gens)
            try:
                basis = I.standard_monomials()
            except InfiniteDimensional:
                continue
            red.S0, red.ideal, red.basis = S0, I, basis
            if not basis:
                red.contractible = True
            return red
    raise OutOfScale("no regular sequence among the residual entries")


def mf_homology_dim(K, order=None):
    return reduce_closed(K, order).dim


# closed braid diagrams -------------------------------------------------------------

@dataclass
class BraidMarks:
    gens: tuple
    crossings: list     # per letter: mark names (x1, x2, y1, y2)
    circles: list       # marks of positions never touched by a crossing


def braid_marks(L):
    """One mark per vertical segment of the closed braid between crossings."""
    n, m = len(L.word), L.strands
    parent = {}

    def find(q):
        parent.setdefault(q, q)
        while parent[q] != q:
            parent[q] = parent[parent[q]]
            q = parent[q]
        return q

    def union(p, q):
        parent[find(p)] = find(q)

    for lv, g in enumerate(L.word):
        i = abs(g) - 1
        for p in range(m):
            if p not in (i, i + 1):
                union((lv, p), (lv + 1, p))
    for p in range(m):
        union((n, p), (0, p))
    names = {}
    for lv in range(n + 1):
        for p in range(m):
            r = find((lv, p))
            if r not in names:
                names[r] = f"m{len(names)}"
    mark = lambda q: names[find(q)]
    crossings = []
    touched = set()
    for lv, g in enumerate(L.word):
        i = abs(g) - 1
        c = (mark((lv, i)), mark((lv, i + 1)), mark((lv + 1, i)), mark((lv + 1, i + 1)))
        crossings.append(c)
        touched.update(c)
    gens = tuple(sorted(set(names.values()), key=lambda s: int(s[1:])))
    circles = [x for x in gens if x not in touched]
    return BraidMarks(gens, crossings, circles)


def resolution_mf(L, v, Q, marks=None):
    """Factorization of the complete resolution v; crossing c owns rows 2c, 2c+1."""
    from .cube import oriented_at
    marks = marks or braid_marks(L)
    gens = marks.gens
    O, W = oriented_mf(Q), wide_mf(Q)
    rows = []
    for c, g in enumerate(L.word):
        mp = {loc: MultiPoly.var(gens, x) for loc, x in zip(LOCAL, marks.crossings[c])}
        K = O if oriented_at(g, v[c]) else W
        rows += [(a.subs(mp, gens), b.subs(mp, gens)) for a, b in K.rows]
    for x in marks.circles:
        X = MultiPoly.var(gens, x)
        rows.append((Q.pi(X, X), MultiPoly.zero(gens)))
    return KoszulMF(gens, rows)


def apply_local(f, block, mp, gens, m):
    """(id ⊗ f ⊗ id) m for an even local map f acting on rows block, block+1."""
    lo = block
    cache = {}
    out = {}
    for S, p in m.items():
        Sc = tuple(j - lo for j in S if lo <= j < lo + 2)
        rest_lo = tuple(j for j in S if j < lo)
        rest_hi = tuple(j for j in S if j >= lo + 2)
        for T in subsets(2):
            key = (T, Sc)
            e = f.entries.get(key)
            if e is None or not e.terms:
                continue
            if key not in cache:
                cache[key] = e.subs(mp, gens)
            _add(out, rest_lo + tuple(j + lo for j in T) + rest_hi, cache[key] * p)
    return out


def _check_mf_link(L, N):
    from .webs import LinkDiagram
    if not isinstance(L, LinkDiagram):
        raise InputError("expected a LinkDiagram")
    if any(x != 1 for x in L.labels):
        raise InputError("the MF engine handles 1-labeled diagrams only")
    if N > 4:
        raise OutOfScale("the MF engine is limited to N <= 4")


def closed_homology(L, sigma, order=None, check=True):
    """Homology of a closed 1-labeled braid closure through the MF engine.

    The cube of resolutions is taken after passing to homology of each
    resolution; the induced foam maps are R-linear, so each is determined by
    the image of the class of 1.
    """
    from .cube import HomologyResult, _homology_dims
    from .webs import letter_sign
    sigma = sigma if isinstance(sigma, RootMultiset) else RootMultiset(sigma)
    _check_mf_link(L, sigma.N)
    if len(L.word) > 4:
        raise OutOfScale("the MF engine is limited to 4 crossings")
    Q = Potential(sigma)
    C = crossing_mf_complex(-1, sigma) if L.word else None
    marks = braid_marks(L)
    gens = marks.gens
    n = len(L.word)
    n_plus = sum(1 for g in L.word if g > 0)
    verts = list(cartesian((0, 1), repeat=n))
    red, z = {}, {}
    for v in verts:
        K = resolution_mf(L, v, Q, marks)
        if check and K.potential.terms:
            raise VerificationError(f"resolution {v} is not closed")
        red[v] = reduce_closed(K, order)
        if red[v].dim:
            z[v] = red[v].lift_one()
            if check and K.apply_d(z[v]):
                raise VerificationError(f"lifted class at {v} is not a cycle")
    groups, index = {}, {}
    for v in verts:
        d = sum(v) - n_plus
        grp = groups.setdefault(d, [])
        for t in range(red[v].dim):
            index[(v, t)] = len(grp)
            grp.append((v, t))
    diff = {d: [dict() for _ in g] for d, g in groups.items()}
    for v in verts:
        if not red[v].dim:
            continue
        d = sum(v) - n_plus
        for k, g in enumerate(L.word):
            if v[k]:
                continue
            w = v[:k] + (1,) + v[k + 1:]
            if not red[w].dim:
                continue
            f = C.zip if letter_sign(g) < 0 else C.unzip
            mp = {loc: MultiPoly.var(gens, x) for loc, x in zip(LOCAL, marks.crossings[k])}
            image = red[w].project(apply_local(f, 2 * k, mp, gens, z[v]))
            sign = -1 if sum(v[:k]) % 2 else 1
            rv = red[v].residual.gens
            for t, e in enumerate(red[v].basis):
                r = red[w].substitute(MultiPoly.monomial(rv, e).embed(gens) if rv else MultiPoly.one(gens))
                vec = red[w].coords(r * image)
                row = diff[d][index[(v, t)]]
                for j, c in enumerate(vec):
                    if c:
                        tgt = index[(w, j)]
                        row[tgt] = row.get(tgt, 0) + sign * c
    for d in diff:
        diff[d] = [{k: x for k, x in r.items() if x} for r in diff[d]]
    if check and not _d2_zero(diff):
        raise VerificationError("d^2 != 0 on the homology cube")
    per_degree = _homology_dims(groups, diff)
    parities = {}
    for p in (0, 1):
        keep = {d: [x for x in g if red[x[0]].parity == p] for d, g in groups.items()}
        if sum(len(g) for g in keep.values()):
            parities[p] = _restricted_total(groups, diff, keep)
    extra = {
        "engine": "mf",
        "exclusion_steps": sum(len(r.steps) for r in red.values()),
        "residual_ring_dim": sum(r.dim for r in red.values()),
        "z2": {str(p): x for p, x in parities.items() if x},
        "per_vertex": {"".join(map(str, v)): {"exclusions": len(red[v].steps), "dim": red[v].dim,
                                             "parity": red[v].parity} for v in verts},
    }
    return HomologyResult(per_degree, {d: len(g) for d, g in sorted(groups.items())}, extra)


def _d2_zero(diff):
    for d, rows in diff.items():
        nxt = diff.get(d + 1)
        if nxt is None:
            continue
        for r in rows:
            acc = {}
            for j, c in r.items():
                for k, x in nxt[j].items():
                    acc[k] = acc.get(k, 0) + c * x
            if any(acc.values()):
                return False
    return True


def _restricted_total(groups, diff, keep):
    """Total homology of the subcomplex spanned by the kept generators (maps are even)."""
    from .cube import _homology_dims
    sub_groups, sub_diff = {}, {}
    pos = {}
    for d, g in groups.items():
        kept = [i for i, x in enumerate(g) if x in set(keep[d])]
        pos[d] = {i: n for n, i in enumerate(kept)}
        sub_groups[d] = [g[i] for i in kept]
    for d, rows in diff.items():
        nxt = pos.get(d + 1, {})
        sub_diff[d] = [{nxt[j]: c for j, c in rows[i].items() if j in nxt} for i in pos[d]]
    return sum(_homology_dims(sub_groups, sub_diff).values())


# identity checks on linear factorizations --------------------------------------------

class AlphabetRing:
    """Polynomial ring in elementary coordinates of named alphabets, modulo
    relations e_i(A ∪ B ∪ ...) = e_i(C).

    Internal alphabets get a large weight so that normal forms are written in
    the boundary alphabets plus the single-variable alphabets kept free.
    """

    def __init__(self, sizes, internal=(), free=()):
        self.sizes = dict(sizes)
        self.gens = []
        self.weights = []
        for name, k in self.sizes.items():
            w = 100 if name in internal else 1
            if k == 1:
                self.gens.append(name)
                self.weights.append(w if name not in free else 1)
            else:
                for j in range(1, k + 1):
                    self.gens.append(f"{name}{j}")
                    self.weights.append(w * j)
        self.gens = tuple(self.gens)
        self.relations = []
        self._ideal = None

    def e(self, name, i=None):
        k = self.sizes[name]
        es = [MultiPoly.one(self.gens)]
        if k == 1:
            es.append(MultiPoly.var(self.gens, name))
        else:
            es += [MultiPoly.var(self.gens, f"{name}{j}") for j in range(1, k + 1)]
        return es if i is None else (es[i] if 0 <= i <= k else MultiPoly.zero(self.gens))

    def h(self, name, j):
        """Complete symmetric function h_j of an alphabet."""
        if j < 0:
            return MultiPoly.zero(self.gens)
        es = self.e(name)
        hs = [MultiPoly.one(self.gens)]
        for m in range(1, j + 1):
            s = MultiPoly.zero(self.gens)
            for i in range(1, min(m, len(es) - 1) + 1):
                s = s + (es[i] * hs[m - i]).scale((-1) ** (i - 1))
            hs.append(s)
        return hs[j]

    def var(self, name):
        return MultiPoly.var(self.gens, name)

    def union_equals(self, parts, whole):
        e = self.e(parts[0])
        for p in parts[1:]:
            e = _union_e(e, self.e(p))
        target = self.e(whole)
        assert len(e) == len(target)
        for i in range(1, len(e)):
            self.relations.append(e[i] - target[i])
        self._ideal = None

    @property
    def ideal(self):
        if self._ideal is None:
            self._ideal = Ideal(self.relations, gens=self.gens, weights=self.weights)
        return self._ideal

    def nf(self, p):
        return self.ideal.reduce(p)

    def equal(self, p, q):
        return self.ideal.contains(p - q)


def _coefficients_in(ring, p, var):
    """Normal form of p split as {power of var: coefficient}."""
    i = ring.gens.index(var)
    out = {}
    for e, c in ring.nf(p).terms.items():
        k = e[i]
        f = list(e)
        f[i] = 0
        out.setdefault(k, {})[tuple(f)] = c
    return {k: MultiPoly(ring.gens, t) for k, t in out.items()}


def _check(name, ok, witness=None, **info):
    d = {"name": name, "ok": bool(ok)}
    if not ok and witness is not None:
        d["witness"] = str(witness)
    d.update(info)
    return d


def _qr_digon_removal(k):
    """1 ↦ 1⊗1 ↦ m^k ⊗ 1 ↦ 1 through Sym(V|m|M)/(V = m∪M) ⊗ Sym(m|M|Y)/(m∪M = Y)."""
    R = AlphabetRing({"M": k, "Y": k + 1, "m": 1, "V": k + 1}, internal=("M", "Y"))
    R.union_equals(["m", "M"], "V")
    R.union_equals(["m", "M"], "Y")
    m = R.var("m")

    def counit(x):
        # coefficient of m^k over the boundary ring; B is free with basis 1..m^k
        co = _coefficients_in(R, x, "m")
        assert max(co, default=0) <= k, "normal form outside the basis 1..m^k"
        return co.get(k, MultiPoly.zero(R.gens))

    tests = [MultiPoly.one(R.gens)] + [R.e("V", i) for i in range(1, k + 2)] + [R.e("V", 1) ** 2]
    for a in tests:
        out = counit(m ** k * a)
        if not R.equal(out, a):
            return _check(f"digon_removal_k{k}", False, f"{a} -> {out}")
        for j in range(k):
            if not R.nf(counit(m ** j * a)).is_zero():
                return _check(f"digon_removal_k{k}", False, f"m^{j} not killed")
    return _check(f"digon_removal_k{k}", True)


def _qr_swap_antisymmetry(max_power=3):
    """ε(f(m) g(n)) = -ε(g(m) f(n)) for the digon counit with a = b = 1."""
    R = AlphabetRing({"n": 1, "X": 2, "m": 1, "W": 2}, internal=("n", "X"))
    R.union_equals(["m", "n"], "W")
    R.union_equals(["m", "n"], "X")
    m, n = R.var("m"), R.var("n")

    def counit(x):
        co = _coefficients_in(R, x, "m")
        return co.get(1, MultiPoly.zero(R.gens))

    for i in range(max_power + 1):
        for j in range(max_power + 1):
            lhs = counit(m ** i * n ** j)
            rhs = counit(m ** j * n ** i)
            if not R.equal(lhs, -rhs):
                return _check("digon_counit_antisymmetry", False, f"m^{i} n^{j}")
    # n ⊗ 1 = e_1(W) ⊗ 1 - m ⊗ 1 and e_1(W) ⊗ 1 ↦ 0
    ok = R.equal(n, R.e("W", 1) - m) and R.nf(counit(R.e("W", 1))).is_zero()
    return _check("digon_counit_antisymmetry", ok, "n = e1(W) - m")


def _qr_square_removal(b):
    """Σ_i (-1)^i e_i(M) ∂_i = id with ∂_i(m^j) = h_{j-i}(V), V = m ∪ M, |M| = b."""
    R = AlphabetRing({"M": b, "Y": b + 1, "m": 1, "V": b + 1}, internal=("M", "Y"))
    R.union_equals(["m", "M"], "V")
    R.union_equals(["m", "M"], "Y")
    m = R.var("m")

    def partial(i, x):
        out = MultiPoly.zero(R.gens)
        for j, c in _coefficients_in(R, x, "m").items():
            out = out + c * R.h("V", j - i)
        return out

    tests = [m ** j for j in range(b + 1)] + [m ** b * R.e("V", 1), m ** (b + 1), m ** (b + 2)]
    for x in tests:
        total = MultiPoly.zero(R.gens)
        for i in range(b + 1):
            total = total + (R.e("M", i) * partial(i, x)).scale((-1) ** i)
        if not R.equal(total, x):
            return _check(f"square_removal_b{b}", False, x)
    return _check(f"square_removal_b{b}", True)


def _qr_square_flop(b):
    """The two maps of the square flop differ by the identity on generators 1, w."""
    R = AlphabetRing({"L": b + 1, "M": b, "z": 1, "l": 1, "w": 1, "P": 2, "W": b, "X": b + 1},
                     internal=("L", "M"))
    R.union_equals(["l", "w"], "P")
    R.union_equals(["w", "W"], "L")
    R.union_equals(["M", "z"], "L")
    R.union_equals(["l", "M"], "X")
    one, w, z = MultiPoly.one(R.gens), R.var("w"), R.var("z")
    first = {"1": one, "w": z}
    second = {"1": MultiPoly.zero(R.gens), "w": z - w}
    ident = {"1": one, "w": w}
    for g in ("1", "w"):
        if not R.equal(first[g] - second[g], ident[g]):
            return _check(f"square_flop_b{b}", False, g)
    nondeg = not R.ideal.contains(one) and not R.equal(z, w)
    return _check(f"square_flop_b{b}", nondeg, "degenerate ring")


def _qr_lr_symmetry(a, b, d):
    """c^{γ^}_{α^ β^} = c^γ_{αβ} and the Schur-sum composite, α ∈ P(b,d), β ∈ P(a,d)."""
    from .symfn import lr_coeff, partitions_in_box, schur, split_complement
    P = xvars(d, "p")
    bad = None
    for al in partitions_in_box(b, d):
        for be in partitions_in_box(a, d):
            ah, bh = split_complement(al, b, d), split_complement(be, a, d)
            lhs = (schur(ah, P) * schur(bh, P)).scale((-1) ** (ah.size + bh.size))
            rhs = MultiPoly.zero(P)
            for ga in partitions_in_box(a + b, d):
                c = lr_coeff(al, be, ga)
                gh = split_complement(ga, a + b, d)
                if c != lr_coeff(ah, bh, gh):
                    bad = (al, be, ga)
                if c:
                    rhs = rhs + schur(gh, P).scale(c * (-1) ** gh.size)
            if lhs != rhs:
                bad = bad or (al, be, "schur sum")
    return _check(f"lr_symmetry_{a}{b}{d}", bad is None, bad)


def _mf_composites(sigma):
    """zip∘unzip ≃ (x1 - x2)·id on the oriented pair; unzip∘zip ≃ (x1 - y2)·id on the wide edge."""
    C = crossing_mf_complex(-1, sigma)
    x1, x2, y1, y2 = (MultiPoly.var(LOCAL, g) for g in LOCAL)
    zu = C.zip.compose(C.unzip)
    uz = C.unzip.compose(C.zip)
    r1 = (zu - MFMorphism.scalar(C.oriented, x1 - x2)).is_null_homotopic()
    r2 = (uz - MFMorphism.scalar(C.wide, x1 - y2)).is_null_homotopic()
    r3 = not (zu - MFMorphism.scalar(C.oriented, 0)).is_null_homotopic(1)
    return [_check("zip_unzip_split_unit", r1, "zip∘unzip"),
            _check("unzip_zip_decoration", r2, "unzip∘zip"),
            _check("zip_unzip_nonzero", r3, "zip∘unzip null-homotopic")]


def qr_identity_checks(sigma, max_b=2):
    """Run the linear-factorization identity checks; returns {"ok", "checks"}."""
    sigma = sigma if isinstance(sigma, RootMultiset) else RootMultiset(sigma)
    N = sigma.N
    if N > 3:
        raise OutOfScale("identity checks are run for N <= 3")
    if N < 2:
        raise InputError("identity checks need N >= 2")
    checks = []
    for k in range(1, N):
        checks.append(_qr_digon_removal(k))
    checks.append(_qr_swap_antisymmetry())
    for b in range(1, min(max_b, N - 1) + 1):
        checks.append(_qr_square_removal(b))
    for b in range(1, N):
        checks.append(_qr_square_flop(b))
    for a, b, d in [(1, 1, 2), (1, 2, 1), (2, 1, 2)]:
        checks.append(_qr_lr_symmetry(a, b, d))
    checks += _mf_composites(sigma)
    return {"N": N, "sigma": str(sigma), "ok": all(c["ok"] for c in checks), "checks": checks}
