"""Buchberger's algorithm (grevlex) over Q and ideal membership."""
from __future__ import annotations

from fractions import Fraction

from .poly import MultiPoly, divides, grevlex_key
from ..errors import InfiniteDimensional


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def weighted_key(weights):
    """Weighted-degree order refined by reverse lex."""
    w = tuple(weights)

    def key(e):
        return (sum(a * b for a, b in zip(w, e)), tuple(-v for v in reversed(e)))

    return key


def _lead(p, key):
    e = max(p.terms, key=key)
    return e, p.terms[e]


def _monic(p, key=grevlex_key):
    e, c = _lead(p, key)
    return p.scale(1 / c) if c != 1 else p


def reduce_full(f, basis, key=grevlex_key):
    """Complete reduction of f modulo a list of (leading exponent, monic poly)."""
    p = dict(f.terms)
    r = {}
    while p:
        e = max(p, key=key)
        c = p[e]
        for lg, g in basis:
            if divides(lg, e):
                m = tuple(a - b for a, b in zip(e, lg))
                for eg, vg in g.terms.items():
                    ee = tuple(a + b for a, b in zip(eg, m))
                    v = p.get(ee, 0) - c * vg
                    if v:
                        p[ee] = v
                    else:
                        p.pop(ee, None)
                break
        else:
            r[e] = c
            del p[e]
    return MultiPoly._raw(f.gens, r)


def buchberger(gens_polys, key=grevlex_key):
    """Reduced Groebner basis of the ideal generated by gens_polys.

    `key` maps exponent tuples to sort keys (default grevlex).
    """
    polys = [_monic(p, key) for p in gens_polys if p.terms]
    if not polys:
        return []
    G = []
    LM = []
    for p in polys:
        p = reduce_full(p, list(zip(LM, G)), key)
        if p.terms:
            G.append(_monic(p, key))
            LM.append(_lead(G[-1], key)[0])
    pairs = [(i, j) for j in range(len(G)) for i in range(j)]
    while pairs:
        # normal selection strategy
        pairs.sort(key=lambda ij: key(_lcm(LM[ij[0]], LM[ij[1]])))
        i, j = pairs.pop(0)
        li, lj = LM[i], LM[j]
        l = _lcm(li, lj)
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue  # coprime leading monomials
        # chain criterion
        skip = False
        for k in range(len(G)):
            if k in (i, j) or G[k] is None:
                continue
            if divides(LM[k], l):
                a, b = (min(i, k), max(i, k)), (min(j, k), max(j, k))
                if a not in pairs and b not in pairs:
                    skip = True
                    break
        if skip:
            continue
        mi = tuple(x - y for x, y in zip(l, li))
        mj = tuple(x - y for x, y in zip(l, lj))
        s = G[i].mul_term(mi, Fraction(1)) - G[j].mul_term(mj, Fraction(1))
        r = reduce_full(s, list(zip(LM, G)), key)
        if r.terms:
            G.append(_monic(r, key))
            LM.append(_lead(G[-1], key)[0])
            n = len(G) - 1
            pairs.extend((k, n) for k in range(n))
    return _interreduce(G, key)


def _interreduce(G, key=grevlex_key):
    # drop redundant leading terms, then fully reduce each element by the rest
    G = sorted(G, key=lambda g: key(_lead(g, key)[0]))
    keep = []
    for g in G:
        lg = _lead(g, key)[0]
        if not any(divides(_lead(h, key)[0], lg) for h in keep):
            keep.append(g)
    out = []
    for i, g in enumerate(keep):
        others = [(_lead(h, key)[0], h) for j, h in enumerate(keep) if j != i]
        lg, cg = _lead(g, key)
        rest = MultiPoly._raw(g.gens, {e: c for e, c in g.terms.items() if e != lg})
        red = reduce_full(rest, others, key)
        out.append(_monic(red + MultiPoly.monomial(g.gens, lg, cg), key))
    out.sort(key=lambda g: key(_lead(g, key)[0]))
    return out


class Ideal:
    """Ideal of Q[gens] with a lazily computed reduced Groebner basis."""

    def __init__(self, generators, gens=None, weights=None):
        generators = list(generators)
        if gens is None:
            if not generators:
                raise ValueError("need variables for an empty generating set")
            gens = generators[0].gens
        self.gens = tuple(gens)
        self.generators = [g.embed(self.gens) if g.gens != self.gens else g for g in generators]
        self.weights = tuple(weights) if weights is not None else None
        self.key = weighted_key(self.weights) if self.weights else grevlex_key
        self._gb = None
        self._rb = None

    @property
    def groebner_basis(self):
        if self._gb is None:
            self._gb = buchberger(self.generators, self.key)
        return self._gb

    def _red_basis(self):
        if self._rb is None:
            self._rb = [(_lead(g, self.key)[0], g) for g in self.groebner_basis]
        return self._rb

    def leading_monomials(self):
        return [e for e, _ in self._red_basis()]

    def reduce(self, f):
        if f.gens != self.gens:
            f = f.embed(self.gens)
        return reduce_full(f, self._red_basis(), self.key)

    def contains(self, f):
        return not self.reduce(f).terms

    def is_unit_ideal(self):
        gb = self.groebner_basis
        return len(gb) == 1 and gb[0].is_constant()

    def standard_monomials(self):
        """Monomials not in the leading-term ideal; raises if infinitely many."""
        n = len(self.gens)
        if self.is_unit_ideal():
            return []
        leads = self.leading_monomials()
        bounds = []
        for i in range(n):
            pure = [e[i] for e in leads if all(e[j] == 0 for j in range(n) if j != i) and e[i] > 0]
            if not pure:
                raise InfiniteDimensional(f"quotient is infinite dimensional (no pure power of {self.gens[i]})")
            bounds.append(min(pure))
        out = []

        def rec(prefix):
            i = len(prefix)
            if i == n:
                out.append(tuple(prefix))
                return
            for k in range(bounds[i]):
                cand = prefix + [k]
                partial = tuple(cand) + (0,) * (n - i - 1)
                if any(divides(l, partial) for l in leads):
                    break
                rec(cand)

        rec([])
        out.sort(key=self.key)
        return out


def groebner(polys, weights=None):
    return buchberger(polys, weighted_key(weights) if weights else grevlex_key)
