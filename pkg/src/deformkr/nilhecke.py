"""The nilHecke algebra acting on Q[xi1..xia] and its matrix form over Sym."""
from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from itertools import product as cartesian
from math import comb, factorial

from .algebra.groebner import Ideal
from .algebra.poly import MultiPoly, all_monomials
from .errors import InputError
from .symfn import (
    RootMultiset, comp_in_e, e_to_sym, elem_values, evars, h_diff, h_diff_in_e, is_symmetric,
    schur, partitions_in_box,
)


def xi_vars(a):
    return tuple(f"xi{i}" for i in range(1, a + 1))


class NHWord:
    """Linear combination of words in xi(i) and del(i).

    A word is a tuple of letters ('x', i) or ('d', i), 1-based, read as a
    composition of operators: the rightmost letter acts first.
    """

    def __init__(self, a, terms=None):
        self.a = a
        self.terms = {}
        for w, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                self._check(w)
                self.terms[tuple(w)] = self.terms.get(tuple(w), 0) + c

    def _check(self, w):
        for kind, i in w:
            if kind == "x" and not 1 <= i <= self.a:
                raise InputError(f"xi({i}) out of range for a={self.a}")
            if kind == "d" and not 1 <= i <= self.a - 1:
                raise InputError(f"del({i}) out of range for a={self.a}")
            if kind not in ("x", "d"):
                raise InputError(f"unknown generator {kind!r}")

    @classmethod
    def one(cls, a):
        return cls(a, {(): 1})

    @classmethod
    def xi(cls, a, i):
        return cls(a, {(("x", i),): 1})

    @classmethod
    def dd(cls, a, i):
        return cls(a, {(("d", i),): 1})

    @classmethod
    def poly(cls, a, f):
        """Multiplication operator by a polynomial in the xi variables."""
        out = {}
        for e, c in f.terms.items():
            w = tuple(("x", i + 1) for i, k in enumerate(e) for _ in range(k))
            out[w] = out.get(w, 0) + c
        return cls(a, out)

    def __add__(self, other):
        t = dict(self.terms)
        for w, c in other.terms.items():
            t[w] = t.get(w, 0) + c
        return NHWord(self.a, t)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return NHWord(self.a, {w: c * v for w, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, NHWord):
            return self.scale(other)
        t = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                t[w1 + w2] = t.get(w1 + w2, 0) + c1 * c2
        return NHWord(self.a, t)

    def __pow__(self, k):
        r = NHWord.one(self.a)
        for _ in range(k):
            r = r * self
        return r

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in sorted(self.terms.items()):
            name = "*".join(f"{'xi' if k == 'x' else 'del'}({i})" for k, i in w) or "1"
            parts.append(f"{c}*{name}" if c != 1 else name)
        return " + ".join(parts)

    def apply(self, f):
        return apply(self, f)


def _dd_monomial(e, i):
    """Divided difference del_i (0-based i) of a monomial exponent tuple."""
    p, q = e[i], e[i + 1]
    out = {}
    if p == q:
        return out
    if p > q:
        sign, hi, lo = 1, p, q
    else:
        sign, hi, lo = -1, q, p
    # (x^p y^q - x^q y^p)/(x - y)
    for k in range(hi - lo):
        f = list(e)
        if p > q:
            f[i], f[i + 1] = p - 1 - k, q + k
        else:
            f[i], f[i + 1] = q - 1 - k, p + k
        out[tuple(f)] = Fraction(sign)
    return out


def divided_difference(f, i):
    """del_i on a polynomial (1-based i)."""
    out = {}
    for e, c in f.terms.items():
        for g, s in _dd_monomial(e, i - 1).items():
            v = out.get(g, 0) + c * s
            if v:
                out[g] = v
            else:
                out.pop(g, None)
    return MultiPoly._raw(f.gens, out)


def divided_difference_naive(f, i):
    """Oracle: (f - s_i f)/(x_i - x_{i+1}) by literal polynomial division."""
    perm = list(range(len(f.gens)))
    perm[i - 1], perm[i] = i, i - 1
    num = f - f.swap_vars(perm)
    den = MultiPoly.var(f.gens, i - 1) - MultiPoly.var(f.gens, i)
    return num / den


def _apply_word(w, f):
    for kind, i in reversed(w):
        if kind == "x":
            e = [0] * len(f.gens)
            e[i - 1] = 1
            f = f.mul_term(tuple(e), Fraction(1))
        else:
            f = divided_difference(f, i)
        if not f.terms:
            break
    return f


def apply(word, f):
    out = MultiPoly.zero(f.gens)
    for w, c in word.terms.items():
        out = out + _apply_word(w, f).scale(c)
    return out


def operators_equal(w1, w2, maxdeg, gens=None):
    a = w1.a
    gens = gens or xi_vars(a)
    for d in range(maxdeg + 1):
        for e in all_monomials(a, d):
            m = MultiPoly.monomial(gens, e)
            if apply(w1, m) != apply(w2, m):
                return False, e
    return True, None


# relations ---------------------------------------------------------------------

def relation_list(a):
    X = lambda i: NHWord.xi(a, i)
    D = lambda i: NHWord.dd(a, i)
    one = NHWord.one(a)
    rels = {"xi-commute": [], "xi-del-commute": [], "del-square": [], "del-far-commute": [],
            "del-braid": [], "xi-del-mixed": []}
    for i in range(1, a + 1):
        for j in range(i + 1, a + 1):
            rels["xi-commute"].append((f"xi{i}xi{j}", X(i) * X(j), X(j) * X(i)))
    for i in range(1, a + 1):
        for j in range(1, a):
            if i not in (j, j + 1):
                rels["xi-del-commute"].append((f"xi{i}del{j}", X(i) * D(j), D(j) * X(i)))
    for i in range(1, a):
        rels["del-square"].append((f"del{i}^2", D(i) * D(i), NHWord(a)))
        rels["xi-del-mixed"].append((f"xi{i}del{i}-del{i}xi{i + 1}", X(i) * D(i) - D(i) * X(i + 1), one))
        rels["xi-del-mixed"].append((f"del{i}xi{i}-xi{i + 1}del{i}", D(i) * X(i) - X(i + 1) * D(i), one))
        for j in range(i + 2, a):
            rels["del-far-commute"].append((f"del{i}del{j}", D(i) * D(j), D(j) * D(i)))
    for i in range(1, a - 1):
        rels["del-braid"].append((f"braid{i}", D(i) * D(i + 1) * D(i), D(i + 1) * D(i) * D(i + 1)))
    return rels


def check_relations(a, maxdeg=None):
    """Verify every nilHecke relation family; returns {family: bool}."""
    if not 1 <= a <= 5:
        raise InputError("check_relations supports 1 <= a <= 5")
    maxdeg = 2 * a if maxdeg is None else maxdeg
    report = {}
    for fam, rels in relation_list(a).items():
        ok = True
        for _, lhs, rhs in rels:
            good, _ = operators_equal(lhs, rhs, maxdeg)
            ok = ok and good
        report[fam] = ok
    return report


def longest_dd(a):
    """D_a = (del1..del_{a-1})(del1..del_{a-2})...(del1)."""
    w = []
    for top in range(a - 1, 0, -1):
        w.extend(("d", i) for i in range(1, top + 1))
    return NHWord(a, {tuple(w): 1})


def delta_word(a):
    w = tuple(("x", i) for i in range(1, a) for _ in range(a - i))
    return NHWord(a, {w: 1})


def e_a(a):
    return delta_word(a) * longest_dd(a)


def check_idempotent(a, maxdeg=None):
    maxdeg = a * (a - 1) if maxdeg is None else maxdeg
    e = e_a(a)
    return operators_equal(e * e, e, maxdeg)[0]


def schur_explosion_check(a, alpha):
    """pi_alpha(xi) e_a == e_a xi^alpha e_a as operators."""
    gens = xi_vars(a)
    lam = tuple(alpha) + (0,) * (a - len(alpha))
    pi = NHWord.poly(a, schur(alpha, gens))
    mono = NHWord.poly(a, MultiPoly.monomial(gens, lam))
    e = e_a(a)
    return operators_equal(pi * e, e * mono * e, sum(alpha) + a * a)[0]


def random_word(a, rng, maxlen=4):
    letters = [("x", i) for i in range(1, a + 1)] + [("d", i) for i in range(1, a)]
    n = rng.randint(0, maxlen)
    return NHWord(a, {tuple(rng.choice(letters) for _ in range(n)): rng.choice([1, -1, 2, Fraction(1, 2)])})


def center_check(a, n_words=20, seed=0, maxdeg=None):
    rng = random.Random(seed)
    gens = xi_vars(a)
    sym = [schur(lam, gens) for lam in partitions_in_box(a, 2) if lam]
    maxdeg = 2 * a if maxdeg is None else maxdeg
    for k in range(n_words):
        w = random_word(a, rng)
        z = NHWord.poly(a, sym[k % len(sym)])
        if not is_symmetric(sym[k % len(sym)]):
            return False
        if not operators_equal(z * w, w * z, maxdeg)[0]:
            return False
    return True


# theta: matrix over Sym in the basis H_a --------------------------------------------

def h_basis(a):
    """Ordered basis H_a: blocks B_alpha (alpha lex), descending xi1 power inside."""
    alphas = list(cartesian(*(range(a - i + 1) for i in range(2, a + 1))))
    alphas.sort()
    out = []
    for al in alphas:
        for p in range(a - 1, -1, -1):
            out.append((p,) + tuple(al))
    return out


class _Reducer:
    """Writes polynomials in xi as combinations of H_a with coefficients in Q[E]."""

    def __init__(self, a):
        self.a = a
        self.egens = evars(a)
        self.gens = self.egens + xi_vars(a)
        self.basis = h_basis(a)
        self.index = {b: i for i, b in enumerate(self.basis)}
        self.rules = {}
        self.cache = {}
        G = self.gens
        for k in range(a, 0, -1):
            d = a - k + 1
            # xi_k^d = -sum_{j=1}^{d} (-1)^j e_j(xi_k..xi_a) xi_k^{d-j}
            rhs = MultiPoly.zero(G)
            for j in range(1, d + 1):
                ej = MultiPoly.zero(G)
                for i in range(0, j + 1):
                    hi = _comp_vars(i, G, [f"xi{t}" for t in range(1, k)])
                    Ej = MultiPoly.one(G) if j - i == 0 else MultiPoly.var(G, self.egens[j - i - 1])
                    ej = ej + (hi * Ej).scale((-1) ** i)
                xe = [0] * len(G)
                xe[a + k - 1] = d - j
                rhs = rhs - ej.mul_term(tuple(xe), Fraction((-1) ** j))
            self.rules[k] = (d, rhs)

    def reduce(self, f):
        """f over self.gens -> reduced polynomial (xi_k exponents <= a-k)."""
        a = self.a
        cur = dict(f.terms)
        for k in range(a, 0, -1):
            d, rhs = self.rules[k]
            pos = a + k - 1
            done = {}
            while cur:
                e, c = cur.popitem()
                if e[pos] < d:
                    v = done.get(e, 0) + c
                    if v:
                        done[e] = v
                    else:
                        done.pop(e, None)
                    continue
                m = list(e)
                m[pos] -= d
                m = tuple(m)
                for e2, c2 in rhs.terms.items():
                    ee = tuple(x + y for x, y in zip(m, e2))
                    v = cur.get(ee, 0) + c * c2
                    if v:
                        cur[ee] = v
                    else:
                        cur.pop(ee, None)
            cur = done
        return MultiPoly._raw(self.gens, cur)

    def coords(self, f):
        """f in Q[xi] -> list over H_a of polynomials in E."""
        a = self.a
        out = [MultiPoly.zero(self.egens) for _ in self.basis]
        for e, c in f.terms.items():
            if e not in self.cache:
                big = MultiPoly.monomial(self.gens, (0,) * a + tuple(e))
                red = self.reduce(big)
                col = {}
                for ee, cc in red.terms.items():
                    b = ee[a:]
                    col.setdefault(b, {})[ee[:a]] = cc
                self.cache[e] = {self.index[b]: MultiPoly(self.egens, t) for b, t in col.items()}
            for i, p in self.cache[e].items():
                out[i] = out[i] + p.scale(c)
        return out


def _comp_vars(k, gens, names):
    from .symfn import comp
    if not names:
        return MultiPoly.one(gens) if k == 0 else MultiPoly.zero(gens)
    return comp(k, gens, names)


@lru_cache(maxsize=8)
def reducer(a):
    return _Reducer(a)


class ThetaMatrix:
    """Square matrix with entries in Sym, stored as polynomials in E1..Ea."""

    def __init__(self, rows, egens):
        self.rows = rows
        self.egens = tuple(egens)
        self.n = len(rows)

    @classmethod
    def identity(cls, n, egens):
        z, o = MultiPoly.zero(egens), MultiPoly.one(egens)
        return cls([[o if i == j else z for j in range(n)] for i in range(n)], egens)

    def __matmul__(self, other):
        n = self.n
        cols = list(zip(*other.rows))
        rows = []
        for r in self.rows:
            row = []
            for c in cols:
                s = MultiPoly.zero(self.egens)
                for x, y in zip(r, c):
                    if x.terms and y.terms:
                        s = s + x * y
                row.append(s)
            rows.append(row)
        return ThetaMatrix(rows, self.egens)

    def __add__(self, other):
        return ThetaMatrix([[x + y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.egens)

    def scale(self, c):
        return ThetaMatrix([[x.scale(c) for x in r] for r in self.rows], self.egens)

    def __pow__(self, k):
        r = ThetaMatrix.identity(self.n, self.egens)
        for _ in range(k):
            r = r @ self
        return r

    def __eq__(self, other):
        return isinstance(other, ThetaMatrix) and self.rows == other.rows

    def block(self, b, size):
        return [row[b * size:(b + 1) * size] for row in self.rows[b * size:(b + 1) * size]]

    def to_sym(self, gens=None):
        """Entries as symmetric polynomials in the xi variables."""
        gens = gens or xi_vars(len(self.egens))
        return [[e_to_sym(x, gens) for x in r] for r in self.rows]

    def __str__(self):
        return "\n".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows)


def theta(a, word):
    """Matrix of the operator `word` on Q[xi] over Sym, in the ordered basis H_a."""
    if not 1 <= a <= 4:
        raise InputError("theta supports 1 <= a <= 4")
    R = reducer(a)
    gens = xi_vars(a)
    cols = []
    for b in R.basis:
        cols.append(R.coords(apply(word, MultiPoly.monomial(gens, b))))
    n = len(R.basis)
    rows = [[cols[j][i] for j in range(n)] for i in range(n)]
    return ThetaMatrix(rows, R.egens)


def theta_xi1(a):
    return theta(a, NHWord.xi(a, 1))


def b_recursion_oracle(a, k):
    """a x a matrix from the recursion for powers of the companion block."""
    E = evars(a)
    h = lambda m: comp_in_e(m, E) if m >= 0 else MultiPoly.zero(E)
    B = [[None] * a for _ in range(a)]
    for j in range(1, a + 1):
        for i in range(1, a + 1):
            if j <= k:
                v = h(k + i - j)
                for l in range(1, i):
                    v = v - h(i - l) * B[l - 1][j - 1]
            else:
                v = MultiPoly.one(E) if i + k == j else MultiPoly.zero(E)
            B[i - 1][j - 1] = v
    return B


def grassmannian_ideal_e(a, sigma):
    """I_a^Σ in elementary coordinates: h_{N-a+1}(X-Σ), ..., h_N(X-Σ)."""
    N = len(sigma)
    E = evars(a)
    return Ideal([h_diff_in_e(k, E, sigma) for k in range(N - a + 1, N + 1)], E)


def theta_of_P(a, sigma):
    """theta(P(xi_1)) as sum_l (-1)^l e_l(Σ) theta(xi_1)^{N-l}."""
    N = len(sigma)
    T = theta_xi1(a)
    out = ThetaMatrix.identity(T.n, T.egens).scale(0)
    Tk = ThetaMatrix.identity(T.n, T.egens)
    powers = [Tk]
    for _ in range(N):
        Tk = Tk @ T
        powers.append(Tk)
    for l in range(N + 1):
        c = elem_values(sigma, l)
        if c:
            out = out + powers[N - l].scale((-1) ** l * c)
    return out


def deformed_quotient_check(a, sigma):
    """Verify the structure of theta(P(xi_1)) and the dimension count.

    Returns a report dict; every boolean must be True.
    """
    sigma = RootMultiset(sigma)
    N = len(sigma)
    if not 1 <= a <= min(4, N):
        raise InputError(f"need 1 <= a <= min(4, N); got a={a}, N={N}")
    E = evars(a)
    C = theta_of_P(a, sigma)
    report = {}
    # direct route: multiplication operator by P(xi_1)
    gens = xi_vars(a)
    P = MultiPoly.zero(gens)
    x1 = MultiPoly.var(gens, 0)
    for l in range(N + 1):
        P = P + (x1 ** (N - l)).scale((-1) ** l * elem_values(sigma, l))
    report["sum_matches_operator"] = theta(a, NHWord.poly(a, P)) == C
    # block structure
    blocks = factorial(a - 1)
    first = C.block(0, a)
    report["identical_blocks"] = all(C.block(b, a) == first for b in range(blocks))
    off = True
    for i in range(C.n):
        for j in range(C.n):
            if i // a != j // a and C.rows[i][j].terms:
                off = False
    report["block_diagonal"] = off
    # first row
    report["first_row"] = all(first[0][j - 1] == h_diff_in_e(N + 1 - j, E, sigma) for j in range(1, a + 1))
    xs = xi_vars(a)
    report["first_row_in_x"] = all(
        e_to_sym(first[0][j - 1], xs) == h_diff(N + 1 - j, xs, sigma) for j in range(1, a + 1)
    )
    # recursion for the remaining rows
    rec_ok = True
    for i in range(2, a + 1):
        for j in range(1, a + 1):
            v = h_diff_in_e(N + i - j, E, sigma)
            for r in range(1, i):
                v = v - comp_in_e(i - r, E) * first[r - 1][j - 1]
            rec_ok = rec_ok and v == first[i - 1][j - 1]
    report["row_recursion"] = rec_ok
    I = grassmannian_ideal_e(a, sigma)
    report["others_in_ideal"] = all(
        I.contains(first[i][j]) for i in range(1, a) for j in range(a)
    )
    dim_H = len(I.standard_monomials())
    report["dim_H"] = dim_H == comb(N, a)
    report["dim_matrix_algebra"] = factorial(a) ** 2 * dim_H == factorial(a) ** 2 * comb(N, a)
    report["dim_value"] = factorial(a) ** 2 * dim_H
    return report
