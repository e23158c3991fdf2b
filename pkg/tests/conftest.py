import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import HealthCheck, settings

from deformkr.algebra.poly import MultiPoly

# fixed-seed property runs: every hypothesis example is derived deterministically
settings.register_profile(
    "fixed", derandomize=True, deadline=None, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("fixed")


def to_sympy(p, symbols=None):
    """MultiPoly -> sympy expression in symbols named like p.gens."""
    syms = symbols or [sympy.Symbol(g) for g in p.gens]
    out = sympy.Integer(0)
    for e, c in p.terms.items():
        t = sympy.Rational(c.numerator, c.denominator)
        for s, k in zip(syms, e):
            t *= s ** k
        out += t
    return sympy.expand(out)


def from_sympy(expr, gens):
    syms = [sympy.Symbol(g) for g in gens]
    P = sympy.Poly(sympy.expand(expr), *syms, domain="QQ")
    return MultiPoly(gens, {e: Fraction(int(c.numerator), int(c.denominator)) for e, c in P.terms()})


def random_poly(rng, gens, nterms=4, maxdeg=3, coeffs=(-3, 3)):
    terms = {}
    for _ in range(nterms):
        e = tuple(rng.randint(0, maxdeg) for _ in gens)
        terms[e] = Fraction(rng.randint(*coeffs), rng.choice([1, 1, 2, 3]))
    return MultiPoly(gens, terms)


def random_sigma(rng, N, pool=(0, 1, -1, 2, Fraction(1, 2))):
    return [rng.choice(pool) for _ in range(N)]


@pytest.fixture
def rng():
    return random.Random(20240611)


# acceptance criteria report: one line per criterion at the end of the run
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
