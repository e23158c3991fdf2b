import random
from fractions import Fraction
from itertools import combinations, product

import pytest
import sympy
from hypothesis import given, strategies as st

from conftest import random_poly, to_sympy
from deformkr.algebra.poly import MultiPoly, poly_ring
from deformkr.cube import link_homology
from deformkr.errors import InputError, OutOfScale
from deformkr.mf import (
    KoszulMF, Potential, _mf_composites, closed_homology, crossing_mf_complex, exclude_variable,
    mf_homology_dim, qr_identity_checks, reduce_closed, resolution_mf, web_to_mf,
)
from deformkr.symfn import evars
from deformkr.webs import Ladder, LinkDiagram, Rung, Web, builtin_link, colorings_admissible

small = st.fractions(min_value=-2, max_value=2, max_denominator=2)


# potentials ---------------------------------------------------------------------------

@pytest.mark.parametrize("sigma", [[0, 0], [0, 1], [1, -1, 2], [Fraction(1, 2), 0, 0, 3]])
def test_potential_is_scaled_antiderivative(sigma):
    Q = Potential(sigma)
    assert Q.check()
    X = sympy.Symbol("X")
    P = sympy.prod([X - sympy.Rational(str(s)) for s in sigma])
    want = sympy.Poly(sympy.integrate((len(sigma) + 1) * P, X), X)
    got = sympy.Poly(sum(sympy.Rational(str(c)) * X ** k for k, c in enumerate(Q.coeffs)), X)
    assert got == want


@given(st.lists(small, min_size=2, max_size=4))
def test_potential_pi(sigma):
    Q = Potential(sigma)
    x, y = poly_ring("x", "y")
    assert Q.pi(x, y) * (x - y) == Q(x) - Q(y)
    # on the diagonal it is Q'(x) = (N+1) P(x)
    dQ = MultiPoly.zero(("x", "y"))
    for k, c in enumerate(Q.derivative()):
        dQ = dQ + (x ** k).scale(c)
    assert Q.pi(x, x) == dQ


def test_potential_on_two_letter_alphabet():
    # Q(x) + Q(y) written through e1 = x + y, e2 = x y
    Q = Potential([0, 1, -1])
    x, y = poly_ring("x", "y")
    E = evars(2)
    G = Q.in_e(2)
    sub = G.subs({E[0]: x + y, E[1]: x * y}, ("x", "y"))
    assert sub == Q(x) + Q(y)


# Koszul factorizations ----------------------------------------------------------------

def _random_mf(rng, gens=("x", "y"), rows=3):
    return KoszulMF(gens, [(random_poly(rng, gens, 2, 2), random_poly(rng, gens, 2, 2)) for _ in range(rows)])


def _dd_matrix_product(K):
    # d∘d from the explicit matrix, compared in sympy against Σ a_r b_r
    B = K.basis()
    M = K.d_matrix()
    zero = MultiPoly.zero(K.gens)
    w = sympy.expand(sum(to_sympy(a) * to_sympy(b) for a, b in K.rows))
    for S in B:
        for T in B:
            acc = sum((to_sympy(M.get((T, U), zero)) * to_sympy(M.get((U, S), zero)) for U in B), sympy.Integer(0))
            if sympy.expand(acc - (w if S == T else 0)) != 0:
                return False
    return True


@pytest.mark.parametrize("seed", range(6))
def test_d2_is_potential(seed):
    rng = random.Random(seed)
    K = _random_mf(rng, rows=1 + seed % 3)
    assert K.check_d2()
    assert _dd_matrix_product(K)
    assert K.to_two_periodic().check()


def test_d2_negative_control():
    x, y = poly_ring("x", "y")
    K = KoszulMF(("x", "y"), [(x, y), (y, x ** 2)])
    assert _dd_matrix_product(K)
    # perturbing one matrix entry breaks d² = w
    P = K.to_two_periodic()
    P.d0[0][0] = P.d0[0][0] + 1
    assert not P.check()


@given(st.integers(0, 10 ** 6))
def test_potential_additive_under_tensor(seed):
    rng = random.Random(seed)
    A = _random_mf(rng, ("x", "y"), 2)
    B = _random_mf(rng, ("y", "z"), 1)
    T = A.tensor(B)
    assert T.check_d2()
    g = T.gens
    assert T.potential == A.potential.embed(g) + B.potential.embed(g)


# webs ------------------------------------------------------------------------------------

def test_single_strand():
    W = Web(3, {0: "in", 1: "out"}, [(1, 0, 1)])
    K = web_to_mf(W, [0, 0, 0])
    Q = Potential([0, 0, 0])
    a, b = poly_ring(*K.gens)
    assert len(K) == 1 and K.check_d2()
    assert K.potential == Q(a) - Q(b)


def test_merge_web():
    W = Web(3, {0: "in", 1: "in", 2: "merge", 3: "out"}, [(1, 0, 2), (1, 1, 2), (2, 2, 3)])
    K = web_to_mf(W, [0, 1, 2])
    assert len(K.gens) == 4 and len(K) == 2 and K.check_d2()
    with pytest.raises(InputError):
        web_to_mf(Web(2, {0: "in", 1: "out"}, [(3, 0, 1)]), [0, 1])


def _web_colorings(W, sigma):
    """Admissible colorings by brute force over k-subsets of distinct roots."""
    choices = [list(combinations(sigma, lab)) for lab, _, _ in W.edges]
    return sum(1 for c in product(*choices) if colorings_admissible(W, dict(enumerate(c))))


DIGON = [Rung(0, "E", 1), Rung(0, "F", 1)]
CLOSED = [(2, (1,), []), (2, (1, 1), []), (2, (1, 1), DIGON),
          (3, (1,), []), (3, (1, 1), []), (3, (1, 1), DIGON), (3, (1, 2), DIGON)]


@pytest.mark.parametrize("N,bottom,rungs", CLOSED)
def test_closed_web_dims_are_coloring_counts(N, bottom, rungs):
    W = Ladder(N, bottom, rungs).to_web(closed=True)
    sigma = list(range(N))
    want = _web_colorings(W, sigma)
    K = web_to_mf(W, sigma)
    assert not K.potential.terms
    assert mf_homology_dim(K) == want
    # the undeformed state space has the same dimension
    assert mf_homology_dim(web_to_mf(W, [0] * N)) == want


# exclusion ----------------------------------------------------------------------------------

def test_exclusion_examples():
    x, y, u = poly_ring("x", "y", "u")
    K = KoszulMF(("x", "y", "u"), [(u, x - y)])
    small_, step = exclude_variable(K)
    assert len(small_) == 0 and step.var in ("x", "y")
    # the unknot circle reduces to a single row in one variable
    L = builtin_link("unknot")
    Q = Potential([0, 1, 1])
    R = reduce_closed(resolution_mf(L, (), Q))
    assert R.dim == 3 and len(R.residual) == 1
    with pytest.raises(InputError):
        exclude_variable(KoszulMF(("x", "y"), [(x ** 2, y ** 2)]))


def test_reduce_rejects_open():
    x, y = poly_ring("x", "y")
    with pytest.raises(InputError):
        reduce_closed(KoszulMF(("x", "y"), [(x, y)]))


@pytest.mark.parametrize("N,bottom,rungs", [c for c in CLOSED if c[1] != (1,)])
def test_exclusion_order_invariance_webs(N, bottom, rungs):
    K = web_to_mf(Ladder(N, bottom, rungs).to_web(closed=True), [0, 1, 1][:N])
    dims = {mf_homology_dim(K, order=s) for s in [None] + list(range(5))}
    assert len(dims) == 1


@pytest.mark.parametrize("name,sigma", [("hopf", [0, 0]), ("trefoil", [0, 1]), ("hopf", [0, 1, 1])])
def test_exclusion_order_invariance_links(name, sigma):
    L = builtin_link(name)
    res = [closed_homology(L, sigma, order=s).per_degree for s in (None, 1, 2)]
    assert res[0] == res[1] == res[2]


# crossings -----------------------------------------------------------------------------------

@pytest.mark.parametrize("sigma", [[0, 0], [0, 1], [0, 1, 1]])
def test_crossing_complex_checks(sigma):
    for sign in (1, -1):
        C = crossing_mf_complex(sign, sigma)
        assert all(C.check().values())
        degs = [d for d, _ in C.terms]
        assert degs == ([0, 1] if sign > 0 else [-1, 0])
    with pytest.raises(InputError):
        crossing_mf_complex(0, sigma)


@pytest.mark.parametrize("sigma", [[0, 0], [1, -1]])
def test_crossing_composites(sigma):
    assert all(c["ok"] for c in _mf_composites(sigma))


# closed links -----------------------------------------------------------------------------------

@pytest.mark.parametrize("N", [2, 3, 4])
def test_unknot(N):
    for sigma in ([0] * N, list(range(N))):
        h = closed_homology(builtin_link("unknot"), sigma)
        assert h.per_degree == {0: N}


@pytest.mark.parametrize("name", ["unknot", "hopf", "trefoil"])
@pytest.mark.parametrize("sigma", [[0, 0], [0, 1], [1, -1]])
def test_matches_cube_at_n2(name, sigma):
    L = builtin_link(name)
    assert closed_homology(L, sigma).per_degree == link_homology(L, sigma).per_degree


def test_n3_values():
    T = builtin_link("trefoil")
    assert closed_homology(T, [0, 1, 2]).total == 3
    h = closed_homology(T, [0, 0, 0])
    assert h.total == 7 and h.euler == 3
    assert closed_homology(builtin_link("hopf"), [0, 1, 2]).total == 9


def test_closed_homology_scope():
    with pytest.raises(OutOfScale):
        closed_homology(builtin_link("unknot"), [0] * 5)
    with pytest.raises(InputError):
        closed_homology(LinkDiagram(1, (2,), ()), [0, 0, 0])
    with pytest.raises(OutOfScale):
        closed_homology(LinkDiagram(2, (1, 1), (1, 1, 1, 1, 1)), [0, 0])


# identity checks ------------------------------------------------------------------------------------

@pytest.mark.parametrize("sigma", [[0, 0], [0, 1], [0, 0, 0], [0, 1, 1]])
def test_qr_identity_checks(sigma):
    rep = qr_identity_checks(sigma)
    assert rep["ok"], [c for c in rep["checks"] if not c["ok"]]
    names = {c["name"] for c in rep["checks"]}
    assert "zip_unzip_split_unit" in names and "digon_counit_antisymmetry" in names


def test_qr_identity_scope():
    with pytest.raises(OutOfScale):
        qr_identity_checks([0] * 4)
    with pytest.raises(InputError):
        qr_identity_checks([0])
