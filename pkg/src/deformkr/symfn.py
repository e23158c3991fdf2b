"""Symmetric functions: e, h, p and Schur polynomials, LR coefficients.

Symmetric polynomials are plain MultiPolys in the alphabet variables.  The ring
Sym(X) for |X| = a is also modelled as the free polynomial ring on elementary
generators E1..Ea (`egens`); helpers convert between the two pictures.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations

from .algebra.poly import MultiPoly, grevlex_key, exact_divide
from .errors import InputError


# partitions ------------------------------------------------------------------

class Partition(tuple):
    """Weakly decreasing tuple of positive ints; text form `[3,1,1]`."""

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts if int(p) != 0)
        if any(p < 0 for p in parts):
            raise InputError("partition parts must be nonnegative")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise InputError(f"not a partition: {list(parts)}")
        return super().__new__(cls, parts)

    @classmethod
    def parse(cls, text):
        t = text.strip()
        if not (t.startswith("[") and t.endswith("]")):
            raise InputError(f"partition must look like [3,1,1], got {text!r}")
        body = t[1:-1].strip()
        if not body:
            return cls(())
        try:
            return cls(int(x) for x in body.split(","))
        except ValueError as exc:
            raise InputError(str(exc)) from None

    def __str__(self):
        return "[" + ",".join(str(p) for p in self) + "]"

    def __repr__(self):
        return f"Partition({str(self)})"

    @property
    def size(self):
        return sum(self)

    def conjugate(self):
        if not self:
            return Partition(())
        return Partition(sum(1 for p in self if p > j) for j in range(self[0]))

    def padded(self, n):
        if len(self) > n:
            raise ValueError("too many parts")
        return tuple(self) + (0,) * (n - len(self))


def conjugate(lam):
    return Partition(lam).conjugate()


def partitions_in_box(a, b):
    """P(a,b): partitions with at most a parts, each at most b (reverse-lex order)."""
    out = []

    def rec(prefix, maxpart, left):
        if left == 0:
            out.append(Partition(prefix))
            return
        for p in range(maxpart, -1, -1):
            rec(prefix + [p], p, left - 1)

    rec([], b, a)
    out.sort(key=lambda p: (p.size, tuple(p)))
    return out


def box_complement(lam, a, b):
    """Complement of lam in the a x b box: entries b - lam_{a+1-i}."""
    lam = Partition(lam)
    if len(lam) > a or (lam and lam[0] > b):
        raise InputError(f"{lam} does not fit in a {a}x{b} box")
    p = lam.padded(a)
    return Partition(b - p[a - 1 - i] for i in range(a))


def split_complement(lam, a, b):
    """Conjugate of the box complement; a partition in P(b, a)."""
    return box_complement(lam, a, b).conjugate()


# root multisets -----------------------------------------------------------------

class RootMultiset(tuple):
    """Multiset of rational roots Σ, kept sorted; text form `0,0,1` or `1/2,-1/2`."""

    def __new__(cls, roots):
        return super().__new__(cls, sorted(Fraction(r) for r in roots))

    @classmethod
    def parse(cls, text):
        if text is None or not str(text).strip():
            raise InputError("empty root multiset")
        try:
            return cls(Fraction(t.strip()) for t in str(text).split(","))
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"cannot parse roots {text!r}: {exc}") from None

    def __str__(self):
        return ",".join(str(r) for r in self)

    @property
    def N(self):
        return len(self)

    def distinct(self):
        """[(root, multiplicity)] in increasing root order."""
        out = []
        for r in self:
            if out and out[-1][0] == r:
                out[-1] = (r, out[-1][1] + 1)
            else:
                out.append((r, 1))
        return out

    def multiplicity(self, r):
        return sum(1 for s in self if s == Fraction(r))

    def elementary(self, k):
        return elem_values(self, k)

    def polynomial(self):
        """Coefficient list of P(X) = prod (X - s), lowest degree first."""
        from .algebra import upoly
        return upoly.from_roots(self)


def elem_values(vals, k):
    """e_k of a list of numbers."""
    if k < 0:
        return Fraction(0)
    e = [Fraction(1)] + [Fraction(0)] * k
    for v in vals:
        for j in range(k, 0, -1):
            e[j] += e[j - 1] * v
    return e[k]


def comp_values(vals, k):
    if k < 0:
        return Fraction(0)
    h = [Fraction(1)] + [Fraction(0)] * k
    for v in vals:
        for j in range(1, k + 1):
            h[j] += h[j - 1] * v
    return h[k]


def multisubsets(sigma, size):
    """All size-`size` sub-multisets of Σ, as tuples of multiplicities per distinct root."""
    dist = sigma.distinct() if isinstance(sigma, RootMultiset) else RootMultiset(sigma).distinct()
    out = []

    def rec(i, left, acc):
        if i == len(dist):
            if left == 0:
                out.append(tuple(acc))
            return
        for k in range(min(left, dist[i][1]), -1, -1):
            rec(i + 1, left - k, acc + [k])

    rec(0, size, [])
    return [tuple(Fraction(r) for (r, _), k in zip(dist, mult) for _ in range(k)) for mult in out]


# symmetric polynomials in variables ----------------------------------------------------

def xvars(n, prefix="x"):
    return tuple(f"{prefix}{i}" for i in range(1, n + 1))


def _gens_of(gens_or_n):
    return xvars(gens_or_n) if isinstance(gens_or_n, int) else tuple(gens_or_n)


def elem(k, gens, alphabet=None):
    """e_k of the alphabet (subset of gens; default all gens)."""
    gens = _gens_of(gens)
    idx = range(len(gens)) if alphabet is None else [gens.index(v) for v in alphabet]
    idx = list(idx)
    if k < 0 or k > len(idx):
        return MultiPoly.zero(gens)
    terms = {}
    for S in combinations(idx, k):
        e = [0] * len(gens)
        for i in S:
            e[i] = 1
        terms[tuple(e)] = Fraction(1)
    return MultiPoly._raw(gens, terms)


def comp(k, gens, alphabet=None):
    """Complete homogeneous h_k."""
    gens = _gens_of(gens)
    idx = list(range(len(gens)) if alphabet is None else [gens.index(v) for v in alphabet])
    if k < 0:
        return MultiPoly.zero(gens)
    terms = {}

    def rec(pos, left, e):
        if pos == len(idx):
            if left == 0:
                terms[tuple(e)] = Fraction(1)
            return
        for j in range(left, -1, -1):
            e[idx[pos]] = j
            rec(pos + 1, left - j, e)
        e[idx[pos]] = 0

    if not idx:
        return MultiPoly.one(gens) if k == 0 else MultiPoly.zero(gens)
    rec(0, k, [0] * len(gens))
    return MultiPoly._raw(gens, terms)


def power(k, gens, alphabet=None):
    gens = _gens_of(gens)
    idx = list(range(len(gens)) if alphabet is None else [gens.index(v) for v in alphabet])
    if k == 0:
        return MultiPoly.const(gens, len(idx))
    terms = {}
    for i in idx:
        e = [0] * len(gens)
        e[i] = k
        terms[tuple(e)] = Fraction(1)
    return MultiPoly._raw(gens, terms)


def vandermonde(gens, alphabet=None):
    """prod_{i<j} (x_i - x_j) over the alphabet."""
    gens = _gens_of(gens)
    alphabet = list(gens if alphabet is None else alphabet)
    out = MultiPoly.one(gens)
    for i in range(len(alphabet)):
        for j in range(i + 1, len(alphabet)):
            out = out * (MultiPoly.var(gens, alphabet[i]) - MultiPoly.var(gens, alphabet[j]))
    return out


def perm_sign(p):
    p = list(p)
    s = 1
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            s = -s
    return s


def antisymmetrize_exps(exps, gens, alphabet=None):
    """det(x_i^{exps_j}) over the alphabet: sum_w sgn(w) x_{w(1)}^{e_1} ... ."""
    gens = _gens_of(gens)
    alphabet = list(gens if alphabet is None else alphabet)
    pos = [gens.index(v) for v in alphabet]
    n = len(alphabet)
    terms = {}
    for w in permutations(range(n)):
        e = [0] * len(gens)
        for j in range(n):
            e[pos[w[j]]] = exps[j]
        terms[tuple(e)] = terms.get(tuple(e), 0) + perm_sign(w)
    return MultiPoly(gens, terms)


def schur(lam, gens, alphabet=None):
    """Schur polynomial via the bialternant; zero if lam has too many rows."""
    gens = _gens_of(gens)
    alphabet = list(gens if alphabet is None else alphabet)
    lam = Partition(lam)
    n = len(alphabet)
    if len(lam) > n:
        return MultiPoly.zero(gens)
    if n == 0:
        return MultiPoly.one(gens)
    p = lam.padded(n)
    num = antisymmetrize_exps([p[j] + n - 1 - j for j in range(n)], gens, alphabet)
    return exact_divide(num, vandermonde(gens, alphabet))


def h_diff(k, gens, sigma, alphabet=None):
    """h_k(X - Σ) = sum_i (-1)^i e_i(Σ) h_{k-i}(X)."""
    gens = _gens_of(gens)
    out = MultiPoly.zero(gens)
    for i in range(0, min(k, len(sigma)) + 1):
        c = elem_values(sigma, i)
        if c:
            out = out + comp(k - i, gens, alphabet).scale((-1) ** i * c)
    return out


def is_symmetric(f, alphabet=None):
    gens = f.gens
    idx = list(range(len(gens)) if alphabet is None else [gens.index(v) for v in alphabet])
    for a, b in zip(idx, idx[1:]):
        perm = list(range(len(gens)))
        perm[a], perm[b] = b, a
        if f.swap_vars(perm) != f:
            return False
    return True


# Schur expansion and LR coefficients -------------------------------------------

def _lex_leading(f):
    return max(f.terms) if f.terms else None


def schur_expand(f, n=None):
    """Expand a symmetric polynomial in the Schur basis (n = number of variables)."""
    gens = f.gens
    n = len(gens) if n is None else n
    out = {}
    rem = f
    while rem.terms:
        e = _lex_leading(rem)
        if any(e[i] < e[i + 1] for i in range(len(e) - 1)):
            raise ValueError("polynomial is not symmetric")
        lam = Partition(e)
        c = rem.terms[e]
        out[lam] = out.get(lam, 0) + c
        rem = rem - schur(lam, gens).scale(c)
    return out


@lru_cache(maxsize=4096)
def _lr_table(alpha, beta):
    n = len(alpha) + len(beta)
    if n == 0:
        return {Partition(()): Fraction(1)}
    gens = xvars(n)
    return schur_expand(schur(alpha, gens) * schur(beta, gens))


def lr_coeff(alpha, beta, gamma):
    """Littlewood-Richardson coefficient c^gamma_{alpha beta} by expansion."""
    alpha, beta, gamma = Partition(alpha), Partition(beta), Partition(gamma)
    if gamma.size != alpha.size + beta.size:
        return 0
    return int(_lr_table(alpha, beta).get(gamma, 0))


def split_unit_sum(a, b, xg, yg, gens=None):
    """sum_{alpha in P(a,b)} (-1)^{|alpha^|} pi_alpha(X) pi_{alpha^'}(Y).

    alpha^ is the box complement; its conjugate lives in P(b,a) so that the
    Schur polynomial in the b variables of Y is nonzero.  The sum equals
    prod_{x in X, y in Y} (x - y).
    """
    xg, yg = list(xg), list(yg)
    if len(xg) != a or len(yg) != b:
        raise InputError("alphabet sizes must match (a, b)")
    gens = tuple(gens) if gens is not None else tuple(xg + yg)
    out = MultiPoly.zero(gens)
    for lam in partitions_in_box(a, b):
        hat = box_complement(lam, a, b)
        term = schur(lam, gens, xg) * schur(hat.conjugate(), gens, yg)
        out = out + term.scale((-1) ** hat.size)
    return out


# elementary coordinates ----------------------------------------------------------

def evars(a, prefix="E"):
    return tuple(f"{prefix}{i}" for i in range(1, a + 1))


def comp_in_e(k, egens):
    """h_k written in the elementary generators egens = (E1..Ea)."""
    return _comp_in_e_table(tuple(egens), k)[k]


@lru_cache(maxsize=512)
def _comp_in_e_table(egens, k):
    a = len(egens)
    h = [MultiPoly.one(egens)]
    E = [MultiPoly.one(egens)] + [MultiPoly.var(egens, i) for i in range(a)]
    for m in range(1, k + 1):
        s = MultiPoly.zero(egens)
        for i in range(1, min(m, a) + 1):
            s = s + (E[i] * h[m - i]).scale((-1) ** (i - 1))
        h.append(s)
    return tuple(h)


def elem_in_e(k, egens):
    egens = tuple(egens)
    if k == 0:
        return MultiPoly.one(egens)
    if k < 0 or k > len(egens):
        return MultiPoly.zero(egens)
    return MultiPoly.var(egens, k - 1)


def h_diff_in_e(k, egens, sigma):
    egens = tuple(egens)
    out = MultiPoly.zero(egens)
    for i in range(0, min(k, len(sigma)) + 1):
        c = elem_values(sigma, i)
        if c and k - i >= 0:
            out = out + comp_in_e(k - i, egens).scale((-1) ** i * c)
    return out


def schur_in_e(lam, egens):
    """Schur function in elementary generators via det(e_{lam'_i - i + j})."""
    egens = tuple(egens)
    lam = Partition(lam)
    mu = lam.conjugate()
    m = len(mu)
    if m == 0:
        return MultiPoly.one(egens)
    M = [[elem_in_e(mu[i] - i + j, egens) for j in range(m)] for i in range(m)]
    return poly_det(M, egens)


def poly_det(M, gens):
    n = len(M)
    if n == 0:
        return MultiPoly.one(gens)
    if n == 1:
        return M[0][0]
    out = MultiPoly.zero(gens)
    for j in range(n):
        if M[0][j].terms:
            minor = [row[:j] + row[j + 1:] for row in M[1:]]
            out = out + (M[0][j] * poly_det(minor, gens)).scale((-1) ** j)
    return out


def sym_to_e(f, alphabet=None, egens=None):
    """Rewrite a symmetric polynomial (in `alphabet`) in elementary generators."""
    gens = f.gens
    alphabet = list(gens if alphabet is None else alphabet)
    pos = [gens.index(v) for v in alphabet]
    n = len(alphabet)
    egens = tuple(egens) if egens is not None else evars(n)
    other = [i for i in range(len(gens)) if i not in pos]
    if any(e[i] for e in f.terms for i in other):
        raise ValueError("polynomial involves variables outside the alphabet")
    elems = [elem(k, gens, alphabet) for k in range(n + 1)]
    out = MultiPoly.zero(egens)
    rem = f
    cache = {}
    while rem.terms:
        e = max(rem.terms, key=lambda t: tuple(t[i] for i in pos))
        c = rem.terms[e]
        ex = [e[i] for i in pos]
        if any(ex[i] < ex[i + 1] for i in range(n - 1)):
            raise ValueError("polynomial is not symmetric")
        # x^lam leads e_1^{l1-l2} e_2^{l2-l3} ... e_n^{ln}
        mult = tuple(ex[i] - (ex[i + 1] if i + 1 < n else 0) for i in range(n))
        if mult not in cache:
            t = MultiPoly.one(gens)
            for k, m in enumerate(mult, start=1):
                if m:
                    t = t * elems[k] ** m
            cache[mult] = t
        rem = rem - cache[mult].scale(c)
        out = out + MultiPoly.monomial(egens, mult, c)
    return out


def e_to_sym(g, gens, alphabet=None):
    """Substitute E_k -> e_k(alphabet)."""
    gens = _gens_of(gens)
    return g.subs({v: elem(k, gens, alphabet) for k, v in enumerate(g.gens, start=1)}, gens)
