"""Deformed N=2 link homology from the cube of resolutions.

The Frobenius algebra is A = Q[X]/P(X) for a monic quadratic P with rational
roots; basis (1, X) is indexed 0, 1.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as cartesian

from .algebra.linalg import sparse_rank
from .errors import InputError, VerificationError
from .symfn import RootMultiset
from .webs import LinkDiagram


class FrobeniusData:
    """A = Q[X]/(X^2 - e1 X + e2) with trace ε(1)=0, ε(X)=1."""

    def __init__(self, sigma):
        self.sigma = RootMultiset(sigma)
        if len(self.sigma) != 2:
            raise InputError("the cube engine needs N = 2 (two roots)")
        self.e1 = self.sigma.elementary(1)
        self.e2 = self.sigma.elementary(2)

    # elements are dicts {basis index: coeff}; tensors use tuple keys

    def m(self, i, j):
        if i + j < 2:
            return {i + j: Fraction(1)}
        return {1: self.e1, 0: -self.e2}    # X^2 = e1 X - e2

    def delta(self, i):
        if i == 0:
            return {(0, 1): Fraction(1), (1, 0): Fraction(1), (0, 0): -self.e1}
        return {(1, 1): Fraction(1), (0, 0): -self.e2}

    def eps(self, i):
        return Fraction(i)

    def unit(self):
        return {0: Fraction(1)}

    def mul(self, x, y):
        out = Counter()
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.m(i, j).items():
                    out[k] += a * b * c
        return {k: v for k, v in out.items() if v}

    def comul(self, x):
        out = Counter()
        for i, a in x.items():
            for k, c in self.delta(i).items():
                out[k] += a * c
        return {k: v for k, v in out.items() if v}

    def pairing(self):
        """Gram matrix of (x, y) -> ε(xy) on the basis (1, X)."""
        return [[sum(c * self.eps(k) for k, c in self.m(i, j).items()) for j in range(2)] for i in range(2)]

    def check_axioms(self):
        """Associativity, coassociativity, counit, Frobenius identity, nondegeneracy."""
        res = {}
        B = range(2)
        res["associative"] = all(
            self.mul(self.mul({i: 1}, {j: 1}), {k: 1}) == self.mul({i: 1}, self.mul({j: 1}, {k: 1}))
            for i in B for j in B for k in B)

        def d_left(t):   # (Δ ⊗ id)
            out = Counter()
            for (i, j), c in t.items():
                for (a, b), d in self.delta(i).items():
                    out[(a, b, j)] += c * d
            return {k: v for k, v in out.items() if v}

        def d_right(t):  # (id ⊗ Δ)
            out = Counter()
            for (i, j), c in t.items():
                for (a, b), d in self.delta(j).items():
                    out[(i, a, b)] += c * d
            return {k: v for k, v in out.items() if v}

        res["coassociative"] = all(d_left(self.delta(i)) == d_right(self.delta(i)) for i in B)
        ok = True
        for i in B:
            left, right = Counter(), Counter()
            for (a, b), c in self.delta(i).items():
                left[b] += c * self.eps(a)
                right[a] += c * self.eps(b)
            ok &= {k: v for k, v in left.items() if v} == {i: 1}
            ok &= {k: v for k, v in right.items() if v} == {i: 1}
        res["counit"] = ok
        # Frobenius: Δ(xy) = (x ⊗ 1)Δ(y) = Δ(x)(1 ⊗ y)
        ok = True
        for i in B:
            for j in B:
                lhs = self.comul(self.m(i, j))
                mid, rgt = Counter(), Counter()
                for (a, b), c in self.delta(j).items():
                    for k, d in self.m(i, a).items():
                        mid[(k, b)] += c * d
                for (a, b), c in self.delta(i).items():
                    for k, d in self.m(b, j).items():
                        rgt[(a, k)] += c * d
                mid = {k: v for k, v in mid.items() if v}
                rgt = {k: v for k, v in rgt.items() if v}
                ok &= lhs == mid == rgt
        res["frobenius"] = ok
        g = self.pairing()
        res["nondegenerate"] = g[0][0] * g[1][1] - g[0][1] * g[1][0] != 0
        return res


# resolutions ---------------------------------------------------------------------

class _DSU:
    def __init__(self):
        self.p = {}

    def find(self, x):
        self.p.setdefault(x, x)
        while self.p[x] != x:
            self.p[x] = self.p[self.p[x]]
            x = self.p[x]
        return x

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a != b:
            self.p[max(a, b)] = min(a, b)


def _check_link(L):
    if not isinstance(L, LinkDiagram):
        raise InputError("expected a LinkDiagram")
    if any(x != 1 for x in L.labels):
        raise InputError("the cube engine handles 1-labeled diagrams only")


def oriented_at(g, bit):
    """Is the bit-resolution of letter g the oriented smoothing?

    σ_i: 0 = merged, 1 = oriented; σ_i^{-1}: 0 = oriented, 1 = merged.
    """
    return bool(bit) if g > 0 else not bit


@dataclass
class Resolution:
    vertex: tuple
    circles: list          # list of frozensets of points (level, position)
    circle_of: dict        # point -> circle index
    arcs: list             # per crossing: one point on each of the two arcs the saddle joins

    def __len__(self):
        return len(self.circles)


def resolve(L, v):
    """Circles of the complete resolution v ∈ {0,1}^n of the braid closure."""
    _check_link(L)
    n, m = len(L.word), L.strands
    v = tuple(v)
    if len(v) != n or any(b not in (0, 1) for b in v):
        raise InputError(f"vertex must be a 0/1 tuple of length {n}")
    dsu = _DSU()
    pts = [(lv, p) for lv in range(n + 1) for p in range(m)]
    for q in pts:
        dsu.find(q)
    for lv, g in enumerate(L.word):
        i = abs(g) - 1
        for p in range(m):
            if p not in (i, i + 1):
                dsu.union((lv, p), (lv + 1, p))
        if oriented_at(g, v[lv]):
            dsu.union((lv, i), (lv + 1, i))
            dsu.union((lv, i + 1), (lv + 1, i + 1))
        else:
            dsu.union((lv, i), (lv, i + 1))
            dsu.union((lv + 1, i), (lv + 1, i + 1))
    for p in range(m):            # closure
        dsu.union((n, p), (0, p))
    groups = {}
    for q in pts:
        groups.setdefault(dsu.find(q), set()).add(q)
    circles = sorted((frozenset(s) for s in groups.values()), key=min)
    circle_of = {q: k for k, c in enumerate(circles) for q in c}
    arcs = []
    for lv, g in enumerate(L.word):
        i = abs(g) - 1
        # oriented: left and right verticals; merged: lower cup and upper cap
        other = (lv, i + 1) if oriented_at(g, v[lv]) else (lv + 1, i)
        arcs.append(((lv, i), other))
    return Resolution(v, circles, circle_of, arcs)


# the cube complex ------------------------------------------------------------------

def _basis(c):
    return list(cartesian((0, 1), repeat=c))


def saddle_map(F, R0, R1, k):
    """Matrix of the saddle at crossing k from resolution R0 to R1.

    Returns (kind, rows) with rows a list (one per source basis tuple) of
    dicts target-index -> coeff.
    """
    p, q = R0.arcs[k]
    a, b = R0.circle_of[p], R0.circle_of[q]
    # circles away from the crossing are matched by their point sets
    touched0 = {a, b}
    lev, i0 = p
    local = {(lev, i0), (lev, i0 + 1), (lev + 1, i0), (lev + 1, i0 + 1)}
    t1 = {R1.circle_of[x] for x in local}
    match = {}
    for i, c in enumerate(R0.circles):
        if i in touched0:
            continue
        j = R1.circle_of[min(c)]
        match[i] = j
    B1 = _basis(len(R1))
    idx1 = {t: n for n, t in enumerate(B1)}
    rows = []
    if a != b:
        kind = "m"
        (c1,) = t1
        for t in _basis(len(R0)):
            out = {}
            for r, coef in F.m(t[a], t[b]).items():
                tgt = [0] * len(R1)
                for i, j in match.items():
                    tgt[j] = t[i]
                tgt[c1] = r
                out[idx1[tuple(tgt)]] = coef
            rows.append(out)
    else:
        kind = "Δ"
        c1, c2 = sorted(t1)
        if len(t1) != 2:
            raise VerificationError("split saddle should produce two circles")
        for t in _basis(len(R0)):
            out = {}
            for (r1, r2), coef in F.delta(t[a]).items():
                tgt = [0] * len(R1)
                for i, j in match.items():
                    tgt[j] = t[i]
                tgt[c1], tgt[c2] = r1, r2
                out[idx1[tuple(tgt)]] = out.get(idx1[tuple(tgt)], 0) + coef
            rows.append({k2: v2 for k2, v2 in out.items() if v2})
    return kind, rows


@dataclass
class CubeComplex:
    link: LinkDiagram
    frob: FrobeniusData
    resolutions: dict                 # vertex -> Resolution
    n_minus: int
    groups: dict = field(default_factory=dict)     # degree -> list of (vertex, basis tuple)
    diff: dict = field(default_factory=dict)       # degree -> sparse rows (per source basis) of d^deg

    def degree_of(self, v):
        return sum(v) - self.n_minus

    def dims(self):
        return {d: len(g) for d, g in sorted(self.groups.items())}

    def check_d2(self):
        for d, rows in self.diff.items():
            nxt = self.diff.get(d + 1)
            if nxt is None:
                continue
            for r in rows:
                acc = Counter()
                for j, c in r.items():
                    for k, x in nxt[j].items():
                        acc[k] += c * x
                if any(acc.values()):
                    return False
        return True


def build_complex(L, sigma, check=True):
    _check_link(L)
    F = sigma if isinstance(sigma, FrobeniusData) else FrobeniusData(sigma)
    n = len(L.word)
    n_minus = sum(1 for g in L.word if g > 0)
    verts = list(cartesian((0, 1), repeat=n))
    res = {v: resolve(L, v) for v in verts}
    C = CubeComplex(L, F, res, n_minus)
    index = {}
    for v in verts:
        d = C.degree_of(v)
        grp = C.groups.setdefault(d, [])
        for t in _basis(len(res[v])):
            index[(v, t)] = len(grp)
            grp.append((v, t))
    for d in C.groups:
        C.diff[d] = [dict() for _ in C.groups[d]]
    for v in verts:
        d = C.degree_of(v)
        for k in range(n):
            if v[k]:
                continue
            w = v[:k] + (1,) + v[k + 1:]
            sign = -1 if sum(v[:k]) % 2 else 1
            _, rows = saddle_map(F, res[v], res[w], k)
            B1 = _basis(len(res[w]))
            for t, row in zip(_basis(len(res[v])), rows):
                src = C.diff[d][index[(v, t)]]
                for j, c in row.items():
                    tgt = index[(w, B1[j])]
                    src[tgt] = src.get(tgt, 0) + sign * c
    for d in C.diff:
        C.diff[d] = [{k: x for k, x in r.items() if x} for r in C.diff[d]]
    if check and not C.check_d2():
        raise VerificationError("d^2 != 0 in the cube complex")
    return C


@dataclass
class HomologyResult:
    per_degree: dict
    chain_dims: dict = None
    extra: dict = None

    @property
    def total(self):
        return sum(self.per_degree.values())

    @property
    def euler(self):
        return sum((-1) ** (d % 2) * x for d, x in self.per_degree.items())

    def to_dict(self):
        out = {"per_degree": {str(d): x for d, x in sorted(self.per_degree.items())},
               "total": self.total, "euler": self.euler}
        if self.extra:
            out.update(self.extra)
        return out


def _homology_dims(groups, diff):
    ranks = {d: sparse_rank(rows) if rows else 0 for d, rows in diff.items()}
    out = {}
    for d, g in groups.items():
        h = len(g) - ranks.get(d, 0) - ranks.get(d - 1, 0)
        if h < 0:
            raise VerificationError("negative homology dimension")
        if h:
            out[d] = h
    return out


def homology(C):
    return HomologyResult(_homology_dims(C.groups, C.diff), C.dims())


def link_homology(L, sigma):
    return homology(build_complex(L, sigma))


# Karoubi splitting for distinct roots --------------------------------------------

def _point_components(L):
    """Link component of every point (level, position)."""
    comps = L.components()
    comp_of = {s: i for i, c in enumerate(comps) for s in c}
    pos = list(range(L.strands))
    out = {}
    for lv in range(len(L.word) + 1):
        for p in range(L.strands):
            out[(lv, p)] = comp_of[pos[p]]
        if lv < len(L.word):
            i = abs(L.word[lv]) - 1
            pos[i], pos[i + 1] = pos[i + 1], pos[i]
    return out


@dataclass
class ColoringPiece:
    coloring: tuple       # root per link component, or None where inconsistent
    dim: int
    chain_dim: int
    per_degree: dict

    @property
    def consistent(self):
        return all(c is not None for c in self.coloring)

    def to_dict(self):
        return {"coloring": [None if c is None else str(c) for c in self.coloring],
                "dim": self.dim, "chain_dim": self.chain_dim,
                "per_degree": {str(k): v for k, v in sorted(self.per_degree.items())}}


def split_by_coloring(C):
    """Rewrite every tensor factor in the idempotent basis and split the complex.

    Returns pieces grouped by the coloring they induce on link components.
    """
    dist = C.frob.sigma.distinct()
    if len(dist) != 2:
        raise InputError("split_by_coloring needs two distinct roots")
    lam, mu = dist[0][0], dist[1][0]
    roots = (lam, mu)
    # 1_λ = (X - μ)/(λ - μ), 1_μ = (X - λ)/(μ - λ); columns: idempotent -> (1, X) coords
    to_std = [[-mu / (lam - mu), Fraction(1) / (lam - mu)], [-lam / (mu - lam), Fraction(1) / (mu - lam)]]
    # inverse: 1 = 1_λ + 1_μ, X = λ 1_λ + μ 1_μ
    to_idem = [[Fraction(1), Fraction(1)], [lam, mu]]

    pts = _point_components(C.link)
    ncomp = len(C.link.components())
    new_groups, new_diff, labels = {}, {}, {}
    # new basis at vertex v: colorings t ∈ {0,1}^c (index into roots); same shape as before
    for d, grp in C.groups.items():
        new_groups[d] = list(grp)
    pos = {d: {key: i for i, key in enumerate(g)} for d, g in C.groups.items()}
    for d, rows in C.diff.items():
        grp = C.groups[d]
        nxt = C.groups.get(d + 1, [])
        out_rows = []
        for (v, t) in grp:
            # idempotent basis element as a combination of standard ones
            src = {(): Fraction(1)}
            for bit in t:
                src = {k + (s,): c * to_std[bit][s] for k, c in src.items() for s in (0, 1) if to_std[bit][s]}
            img = Counter()
            for tt, c in src.items():
                for j, x in rows[pos[d][(v, tt)]].items():
                    img[j] += c * x
            # re-express the image in idempotent coordinates
            acc = Counter()
            for j, c in img.items():
                if not c:
                    continue
                w, s = nxt[j]
                part = {(): c}
                for bit in s:
                    part = {k + (r,): y * to_idem[bit][r] for k, y in part.items() for r in (0, 1) if to_idem[bit][r]}
                for k, y in part.items():
                    acc[pos[d + 1][(w, k)]] += y
            out_rows.append({k: y for k, y in acc.items() if y})
        new_diff[d] = out_rows
    # connected components of the nonzero pattern
    dsu = _DSU()
    for d, grp in new_groups.items():
        for i in range(len(grp)):
            dsu.find((d, i))
    for d, rows in new_diff.items():
        for i, r in enumerate(rows):
            for j in r:
                dsu.union((d, i), (d + 1, j))
    blocks = {}
    for d, grp in new_groups.items():
        for i in range(len(grp)):
            blocks.setdefault(dsu.find((d, i)), []).append((d, i))
    pieces = {}
    for members in blocks.values():
        seen = [set() for _ in range(ncomp)]
        for d, i in members:
            v, t = new_groups[d][i]
            R = C.resolutions[v]
            for q, k in R.circle_of.items():
                # a circle color becomes the complementary root across each
                # erased thick edge, i.e. it alternates with the strand position
                seen[pts[q]].add(roots[t[k] ^ (q[1] % 2)])
        label = tuple(next(iter(s)) if len(s) == 1 else None for s in seen)
        loc = {}
        groups = {}
        for d, i in members:
            loc[(d, i)] = len(groups.setdefault(d, []))
            groups[d].append(i)
        diff = {}
        for d, idxs in groups.items():
            rows = []
            for i in idxs:
                r = new_diff[d][i] if d in new_diff else {}
                rows.append({loc[(d + 1, j)]: x for j, x in r.items()})
            diff[d] = rows
        h = _homology_dims(groups, diff)
        P = pieces.setdefault(label, ColoringPiece(label, 0, 0, Counter()))
        P.dim += sum(h.values())
        P.chain_dim += len(members)
        for k, x in h.items():
            P.per_degree[k] += x
    out = []
    for label in sorted(pieces, key=lambda l: tuple((c is None, c) for c in l)):
        P = pieces[label]
        P.per_degree = {k: v for k, v in P.per_degree.items() if v}
        out.append(P)
    return out
