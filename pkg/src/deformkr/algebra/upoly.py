"""Dense univariate polynomials over Q: coefficient lists, lowest degree first."""
from __future__ import annotations

from fractions import Fraction
from math import gcd


def trim(p):
    p = [Fraction(c) for c in p]
    while p and not p[-1]:
        p.pop()
    return p


def deg(p):
    return len(trim(p)) - 1


def add(p, q):
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def sub(p, q):
    return add(p, [-c for c in q])


def mul(p, q):
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def scale(p, c):
    return trim([a * c for a in p])


def divmod_(p, q):
    p, q = trim(p), trim(q)
    if not q:
        raise ZeroDivisionError
    quo = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    r = list(p)
    lq = q[-1]
    while len(r) >= len(q) and r:
        k = len(r) - len(q)
        c = r[-1] / lq
        quo[k] = c
        for i, b in enumerate(q):
            r[i + k] -= c * b
        r = trim(r)
    return trim(quo), r


def mod(p, q):
    return divmod_(p, q)[1]


def pow_(p, k):
    out = [Fraction(1)]
    for _ in range(k):
        out = mul(out, p)
    return out


def ext_gcd(a, b):
    """(g, s, t) with s*a + t*b = g and g monic."""
    r0, r1 = trim(a), trim(b)
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        q, r = divmod_(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1))
        t0, t1 = t1, sub(t0, mul(q, t1))
    lc = r0[-1]
    return scale(r0, 1 / lc), scale(s0, 1 / lc), scale(t0, 1 / lc)


def evaluate(p, x):
    s = Fraction(0)
    for c in reversed(p):
        s = s * x + c
    return s


def from_roots(roots):
    p = [Fraction(1)]
    for r in roots:
        p = mul(p, [-Fraction(r), Fraction(1)])
    return p


def derivative(p):
    return trim([i * c for i, c in enumerate(p)][1:])


def _divisors(n):
    n = abs(n)
    out = set()
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.add(i)
            out.add(n // i)
        i += 1
    return out


def rational_roots(p):
    """Rational roots with multiplicity, as a dict root -> multiplicity."""
    p = trim(p)
    roots = {}
    # strip zero roots
    while p and not p[0]:
        roots[Fraction(0)] = roots.get(Fraction(0), 0) + 1
        p = p[1:]
    if len(p) <= 1:
        return roots
    den = 1
    for c in p:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in p]
    a0, an = ints[0], ints[-1]
    cands = set()
    for u in _divisors(a0):
        for v in _divisors(an):
            cands.add(Fraction(u, v))
            cands.add(Fraction(-u, v))
    for r in sorted(cands):
        while len(p) > 1 and evaluate(p, r) == 0:
            roots[r] = roots.get(r, 0) + 1
            p, _ = divmod_(p, [-r, Fraction(1)])
    return roots
