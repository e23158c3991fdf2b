"""Sparse multivariate polynomials with exact rational coefficients.

A polynomial is a dict from exponent tuples to nonzero Fractions, tied to an
ordered tuple of variable names.  Terms are ordered by grevlex.
"""
from __future__ import annotations

import re
from fractions import Fraction
from itertools import product as _cartesian

Rational = Fraction


def as_rational(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, str):
        return Fraction(c.strip())
    return Fraction(c)


def grevlex_key(e):
    return (sum(e), tuple(-v for v in reversed(e)))


def _natural_key(name):
    m = re.fullmatch(r"([A-Za-z_]+)(\d*)", name)
    if not m:
        return (name, 0)
    return (m.group(1), int(m.group(2)) if m.group(2) else -1)


class MultiPoly:
    __slots__ = ("gens", "terms")

    def __init__(self, gens, terms=None):
        self.gens = tuple(gens)
        t = {}
        if terms:
            n = len(self.gens)
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != n:
                    raise ValueError("exponent length does not match variables")
                c = as_rational(c)
                if c:
                    t[e] = t.get(e, 0) + c
                    if not t[e]:
                        del t[e]
        self.terms = t

    # construction ---------------------------------------------------------

    @classmethod
    def _raw(cls, gens, terms):
        p = cls.__new__(cls)
        p.gens = gens
        p.terms = terms
        return p

    @classmethod
    def const(cls, gens, c):
        gens = tuple(gens)
        c = as_rational(c)
        return cls._raw(gens, {(0,) * len(gens): c} if c else {})

    @classmethod
    def zero(cls, gens):
        return cls._raw(tuple(gens), {})

    @classmethod
    def one(cls, gens):
        return cls.const(gens, 1)

    @classmethod
    def var(cls, gens, name_or_index):
        gens = tuple(gens)
        i = gens.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        e = [0] * len(gens)
        e[i] = 1
        return cls._raw(gens, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, gens, exps, c=1):
        gens = tuple(gens)
        c = as_rational(c)
        return cls._raw(gens, {tuple(exps): c} if c else {})

    def coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.gens != self.gens:
                if not other.terms:
                    return MultiPoly.zero(self.gens)
                if other.is_constant():
                    return MultiPoly.const(self.gens, other.constant_coeff())
                raise ValueError(f"variable mismatch: {self.gens} vs {other.gens}")
            return other
        return MultiPoly.const(self.gens, other)

    def embed(self, gens):
        """Re-express over a variable list containing all variables in use."""
        gens = tuple(gens)
        if gens == self.gens:
            return self
        idx = []
        for i, g in enumerate(self.gens):
            if g in gens:
                idx.append(gens.index(g))
            else:
                idx.append(None)
        out = {}
        for e, c in self.terms.items():
            f = [0] * len(gens)
            for i, k in enumerate(e):
                if k:
                    if idx[i] is None:
                        raise ValueError(f"variable {self.gens[i]} not in target ring")
                    f[idx[i]] = k
            out[tuple(f)] = c
        return MultiPoly._raw(gens, out)

    # inspection -----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_coeff(self):
        return self.terms.get((0,) * len(self.gens), Fraction(0))

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, var):
        i = self.gens.index(var) if isinstance(var, str) else var
        return max((e[i] for e in self.terms), default=-1)

    def used_vars(self):
        used = set()
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used.add(self.gens[i])
        return used

    def leading(self):
        """(exponent, coefficient) of the grevlex-leading term."""
        e = max(self.terms, key=grevlex_key)
        return e, self.terms[e]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def coeff(self, exps):
        return self.terms.get(tuple(exps), Fraction(0))

    # arithmetic -----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            if other.gens != self.gens:
                try:
                    other = self.coerce(other)
                except ValueError:
                    return False
            return self.terms == other.terms
        try:
            return self.terms == MultiPoly.const(self.gens, other).terms
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.gens, frozenset(self.terms.items())))

    def __add__(self, other):
        other = self.coerce(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = t.get(e, 0) + c
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return MultiPoly._raw(self.gens, t)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.gens, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self.coerce(other))

    def __rsub__(self, other):
        return self.coerce(other) - self

    def scale(self, c):
        c = as_rational(c)
        if not c:
            return MultiPoly.zero(self.gens)
        return MultiPoly._raw(self.gens, {e: v * c for e, v in self.terms.items()})

    def mul_term(self, exps, c):
        return MultiPoly._raw(
            self.gens,
            {tuple(a + b for a, b in zip(e, exps)): v * c for e, v in self.terms.items()},
        )

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        other = self.coerce(other)
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = t.get(e, 0) + c1 * c2
                if v:
                    t[e] = v
                else:
                    t.pop(e, None)
        return MultiPoly._raw(self.gens, t)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        r = MultiPoly.one(self.gens)
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def __truediv__(self, c):
        if isinstance(c, MultiPoly):
            q, r = divmod_exact(self, c)
            if r:
                raise ArithmeticError("inexact polynomial division")
            return q
        return self.scale(1 / as_rational(c))

    # substitution ---------------------------------------------------------

    def subs(self, mapping, gens=None):
        """Substitute variables by polynomials (or numbers).

        mapping: name -> MultiPoly/number.  The result lives over `gens` if given,
        otherwise over the gens of the substituted polynomials (or self.gens).
        """
        if gens is None:
            gens = self.gens
            for v in mapping.values():
                if isinstance(v, MultiPoly):
                    gens = v.gens
                    break
        gens = tuple(gens)
        vals = []
        for g in self.gens:
            if g in mapping:
                v = mapping[g]
                vals.append(v.embed(gens) if isinstance(v, MultiPoly) else MultiPoly.const(gens, v))
            else:
                vals.append(MultiPoly.var(gens, g) if g in gens else None)
        cache = {}

        def pw(i, k):
            key = (i, k)
            if key not in cache:
                if vals[i] is None:
                    raise ValueError(f"variable {self.gens[i]} has no image")
                cache[key] = vals[i] ** k
            return cache[key]

        out = MultiPoly.zero(gens)
        for e, c in self.terms.items():
            term = MultiPoly.const(gens, c)
            for i, k in enumerate(e):
                if k:
                    term = term * pw(i, k)
            out = out + term
        return out

    def evaluate(self, values):
        """Evaluate at a dict name->number or a sequence aligned with gens."""
        if isinstance(values, dict):
            values = [as_rational(values[g]) for g in self.gens]
        else:
            values = [as_rational(v) for v in values]
        s = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for v, k in zip(values, e):
                if k:
                    t *= v ** k
            s += t
        return s

    def swap_vars(self, perm):
        """Permute variables: perm[i] is the new slot of variable i."""
        out = {}
        for e, c in self.terms.items():
            f = [0] * len(e)
            for i, k in enumerate(e):
                f[perm[i]] = k
            out[tuple(f)] = c
        return MultiPoly._raw(self.gens, out)

    def diff(self, var):
        i = self.gens.index(var) if isinstance(var, str) else var
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return MultiPoly._raw(self.gens, out)

    # text -----------------------------------------------------------------

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"MultiPoly({format_poly(self)!r}, gens={self.gens})"


# division ------------------------------------------------------------------

def divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def divmod_exact(f, g):
    """Multivariate division by a single divisor (grevlex); returns (q, r)."""
    if not g.terms:
        raise ZeroDivisionError("division by zero polynomial")
    g = f.coerce(g)
    lg, cg = g.leading()
    q = {}
    r = {}
    p = dict(f.terms)
    while p:
        e = max(p, key=grevlex_key)
        c = p[e]
        if divides(lg, e):
            m = tuple(a - b for a, b in zip(e, lg))
            k = c / cg
            q[m] = q.get(m, 0) + k
            for eg, vg in g.terms.items():
                ee = tuple(a + b for a, b in zip(eg, m))
                v = p.get(ee, 0) - k * vg
                if v:
                    p[ee] = v
                else:
                    p.pop(ee, None)
        else:
            r[e] = c
            del p[e]
    return MultiPoly._raw(f.gens, {e: c for e, c in q.items() if c}), MultiPoly._raw(f.gens, r)


def exact_divide(f, g):
    q, r = divmod_exact(f, g)
    if r.terms:
        raise ArithmeticError("inexact polynomial division")
    return q


# text format -----------------------------------------------------------------

def _fmt_coeff(c):
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(p):
    if not p.terms:
        return "0"
    pieces = []
    for e, c in p.sorted_terms():
        mono = "*".join(
            p.gens[i] if k == 1 else f"{p.gens[i]}^{k}" for i, k in enumerate(e) if k
        )
        a = abs(c)
        if not mono:
            body = _fmt_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_fmt_coeff(a)}*{mono}"
        sign = "-" if c < 0 else "+"
        pieces.append((sign, body))
    s0, b0 = pieces[0]
    out = ("-" if s0 == "-" else "") + b0
    for s, b in pieces[1:]:
        out += f" {s} {b}"
    return out


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\^)|(\*)|([+-])|(\()|(\)))")


def _tokenize(text):
    pos = 0
    toks = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial near {text[pos:pos + 10]!r}")
        pos = m.end()
        num, name, caret, star, sign, lp, rp = m.groups()
        if num is not None:
            toks.append(("num", Fraction(num)))
        elif name is not None:
            toks.append(("var", name))
        elif caret:
            toks.append(("^", None))
        elif star:
            toks.append(("*", None))
        elif sign:
            toks.append((sign, None))
        elif lp:
            toks.append(("(", None))
        elif rp:
            toks.append((")", None))
    return toks


def parse_poly(text, gens=None):
    """Parse the text format `3/2*x1^2*x2 - x3 + 1` (parentheses allowed)."""
    toks = _tokenize(text)
    if not toks:
        raise ValueError("empty polynomial")
    if gens is None:
        names = sorted({v for k, v in toks if k == "var"}, key=_natural_key)
        gens = tuple(names)
    gens = tuple(gens)
    pos = [0]

    def peek():
        return toks[pos[0]][0] if pos[0] < len(toks) else None

    def take(kind=None):
        t = toks[pos[0]]
        if kind and t[0] != kind:
            raise ValueError(f"expected {kind}, got {t[0]}")
        pos[0] += 1
        return t

    def expr():
        sign = 1
        if peek() in ("+", "-"):
            sign = -1 if take()[0] == "-" else 1
        acc = term().scale(sign)
        while peek() in ("+", "-"):
            s = take()[0]
            t = term()
            acc = acc + t if s == "+" else acc - t
        return acc

    def term():
        acc = factor()
        while peek() in ("*", "num", "var", "("):
            if peek() == "*":
                take()
            acc = acc * factor()
        return acc

    def factor():
        k = peek()
        if k == "num":
            base = MultiPoly.const(gens, take()[1])
        elif k == "var":
            name = take()[1]
            if name not in gens:
                raise ValueError(f"unknown variable {name!r}")
            base = MultiPoly.var(gens, name)
        elif k == "(":
            take()
            base = expr()
            take(")")
        elif k == "-":
            take()
            return -factor()
        else:
            raise ValueError(f"unexpected token {k!r}")
        if peek() == "^":
            take()
            ex = take("num")[1]
            if ex.denominator != 1 or ex < 0:
                raise ValueError("exponents must be nonnegative integers")
            base = base ** int(ex)
        return base

    out = expr()
    if pos[0] != len(toks):
        raise ValueError(f"trailing tokens in {text!r}")
    return out


def poly_ring(*names):
    """Return the generators of Q[names] as MultiPolys."""
    if len(names) == 1 and not isinstance(names[0], str):
        names = tuple(names[0])
    return tuple(MultiPoly.var(names, n) for n in names)


def all_monomials(nvars, degree):
    """Exponent tuples of total degree exactly `degree`."""
    if nvars == 0:
        if degree == 0:
            yield ()
        return
    for k in range(degree, -1, -1):
        for rest in all_monomials(nvars - 1, degree - k):
            yield (k,) + rest


def box_monomials(bounds):
    """Exponent tuples with e[i] < bounds[i]."""
    return [tuple(e) for e in _cartesian(*(range(b) for b in bounds))]
