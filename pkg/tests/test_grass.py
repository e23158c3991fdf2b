import random
from fractions import Fraction
from math import comb, prod

import pytest
import sympy
from hypothesis import given, strategies as st

from conftest import random_sigma
from deformkr.algebra import upoly
from deformkr.algebra.poly import MultiPoly
from deformkr.errors import InputError, NotInvertible
from deformkr.grass import (
    build_exterior_model, build_quotient_model, check_idempotent_family, coset_transversal,
    crt_idempotent, decomposition_iso, expected_summand_dims, idempotent_family, is_two_sided,
    minimal_length_transversal, models_agree, split_unit_inverse, split_unit_value, splitter_algebra,
)
from deformkr.symfn import RootMultiset, elem_values, lr_coeff, multisubsets, partitions_in_box, schur_in_e


def sympy_quotient_dim(N, a, sigma):
    """dim Q[E]/(h_{N-a+1..N}(X-Σ)) from generating functions and sympy's Groebner basis."""
    t = sympy.Symbol("t")
    E = sympy.symbols([f"E{i}" for i in range(1, a + 1)])
    den = 1 + sum((-1) ** j * E[j - 1] * t ** j for j in range(1, a + 1))
    num = sympy.prod([1 - sympy.Rational(s) * t for s in sigma])
    ser = sympy.series(num / den, t, 0, N + 1).removeO()
    gens = [sympy.expand(ser.coeff(t, k)) for k in range(N - a + 1, N + 1)]
    G = sympy.groebner(gens, *E, order="grevlex")
    leads = [sympy.Poly(g, *E).monoms(order="grevlex")[0] for g in G.exprs]
    bound = N + 1
    count = 0
    for e in _box(a, bound):
        if not any(all(x >= l for x, l in zip(e, L)) for L in leads):
            count += 1
    return count


def _box(n, b):
    if n == 0:
        yield ()
        return
    for k in range(b):
        for rest in _box(n - 1, b):
            yield (k,) + rest


# models -------------------------------------------------------------------------------

def test_quotient_examples():
    q = build_quotient_model(2, 1, [1, -1])
    assert q.dim == 2
    x = q.algebra.coords(MultiPoly.var(q.egens, 0))
    assert q.algebra.mul(x, x) == q.algebra.one()
    assert build_quotient_model(4, 4, [0, 1, 2, 3]).dim == 1
    for sigma in ([0] * 5, [0, 1, 2, 3, 4], [1, 1, -1, 0, 0]):
        assert build_quotient_model(5, 2, sigma).dim == 10


@pytest.mark.parametrize("N,a,sigma", [(3, 1, [0, 1, 1]), (4, 2, [0, 0, 1, 2]), (4, 3, [1, 1, 1, 1]),
                                       (5, 2, [0, 0, 1, 1, 1]), (5, 3, [Fraction(1, 2), 0, 2, 2, -1])])
def test_quotient_dim_matches_sympy(N, a, sigma):
    assert build_quotient_model(N, a, sigma).dim == sympy_quotient_dim(N, a, sigma) == comb(N, a)


def test_exterior_examples():
    x = build_exterior_model(3, 1, [0, 1, 1])
    q = build_quotient_model(3, 1, [0, 1, 1])
    assert x.algebra.table == q.schur_structure_constants()
    ext = build_exterior_model(2, 2, [0, 1])
    assert ext.dim == 1 and ext.algebra.table == [[[1]]]
    assert models_agree(4, 2, [0, 0, 1, 2])


@pytest.mark.parametrize("N,a", [(2, 1), (3, 2), (4, 2), (5, 2), (5, 3), (6, 2)])
def test_undeformed_structure_constants_are_lr(N, a):
    # at Σ = {0^N} the Schur structure constants are LR coefficients truncated to the box
    q = build_quotient_model(N, a, [0] * N)
    P = q.partitions
    c = q.schur_structure_constants()
    for i, al in enumerate(P):
        for j, be in enumerate(P):
            assert c[i][j] == [lr_coeff(al, be, ga) for ga in P]


@pytest.mark.parametrize("seed", range(4))
def test_models_agree_random(seed):
    rng = random.Random(seed)
    N = rng.randint(2, 5)
    a = rng.randint(1, N)
    sigma = random_sigma(rng, N)
    assert models_agree(N, a, sigma)


def test_schur_classes_form_a_basis():
    for a in range(4):
        q = build_quotient_model(4, a, [0, 1, 1, 2])
        assert q.schur_basis_is_basis()


def test_input_validation():
    with pytest.raises(InputError):
        build_quotient_model(3, 1, [0, 1])
    with pytest.raises(InputError):
        build_quotient_model(2, 3, [0, 1])


# idempotents ---------------------------------------------------------------------------

def test_crt_examples():
    assert crt_idempotent(upoly.from_roots([1, -1]), 1) == [Fraction(1, 2), Fraction(1, 2)]
    assert crt_idempotent(upoly.from_roots([0, 0]), 0) == [1]
    P = upoly.from_roots([0, 1, 1])
    e = crt_idempotent(P, 0)
    assert e == upoly.from_roots([1, 1])
    assert upoly.mod(upoly.mul(e, e), P) == e
    with pytest.raises(InputError):
        crt_idempotent(P, 2)


def test_transversals():
    blocks = [2, 1]
    T = coset_transversal(blocks)
    assert len(T) == 3 and is_two_sided(T, blocks)
    assert not is_two_sided(minimal_length_transversal(blocks), blocks)
    for b in ([1, 1, 1], [2, 2], [3, 1], [1, 2, 1]):
        assert is_two_sided(coset_transversal(b), b)


def test_idempotent_family_examples():
    for N, a in ((3, 1), (4, 2), (4, 3)):
        rep = check_idempotent_family(N, a, list(range(N)))
        assert rep["summand_dims"] == [1] * comb(N, a)
    rep = check_idempotent_family(5, 2, [0, 0, 1, 1, 1])
    assert rep["summand_dims"] == [1, 6, 3]
    assert [tuple(f.A) for f in idempotent_family(5, 2, [0, 0, 1, 1, 1])] == [(0, 0), (0, 1), (1, 1)]


@pytest.mark.parametrize("N,a,sigma", [(3, 1, [0, 1, 1]), (4, 2, [0, 0, 1, 2]), (4, 2, [1, 1, 2, 2]),
                                       (5, 2, [0, 0, 1, 1, 1]), (5, 3, [0, 1, 1, 2, 2]), (3, 3, [0, 1, 1])])
def test_idempotent_family_properties(N, a, sigma):
    rep = check_idempotent_family(N, a, sigma)
    for k in ("idempotent", "orthogonal", "complete", "evaluation", "matches_artinian", "ring_idempotent"):
        assert rep[k], k
    assert rep["summand_dims"] == [d for _, d in expected_summand_dims(N, a, sigma)]
    assert sum(rep["summand_dims"]) == comb(N, a)


def test_summand_is_local():
    # each summand 1_A H has a single idempotent: e_i restricted to it are nilpotent shifts
    q = build_quotient_model(5, 2, [0, 0, 1, 1, 1])
    alg = q.algebra
    for f in idempotent_family(5, 2, [0, 0, 1, 1, 1]):
        e = f.quotient_coords
        for k in range(1, 3):
            g = alg.mul(e, alg.coords(MultiPoly.var(q.egens, k - 1)))
            n = alg.sub(g, alg.scale(e, elem_values(f.A, k)))
            assert not any(alg.power(n, alg.dim))


def test_multisubset_not_in_sigma_is_zero():
    # evaluation characterization: no class of the family is supported at {2,2} ⊄ Σ
    fam = idempotent_family(3, 2, [0, 1, 2])
    assert all(tuple(f.A) != (2, 2) for f in fam)
    assert (2, 2) not in [tuple(A) for A in multisubsets(RootMultiset([0, 1, 2]), 2)]


def test_unit_iff_nonzero_at_A():
    rng = random.Random(7)
    N, a, sigma = 4, 2, [0, 0, 1, 2]
    q = build_quotient_model(N, a, sigma)
    alg = q.algebra
    fam = idempotent_family(N, a, sigma)
    lams = partitions_in_box(2, 2)
    for _ in range(100):
        f = MultiPoly.zero(q.egens)
        for lam in rng.sample(lams, 3):
            f = f + schur_in_e(lam, q.egens).scale(rng.randint(-2, 2))
        v = alg.coords(f)
        for fa in fam:
            val = q.evaluate(v, fa.A)
            assert alg.is_unit(v, fa.quotient_coords) == (val != 0)


# decomposition ---------------------------------------------------------------------------

@pytest.mark.parametrize("N,a,sigma", [(3, 1, [0, 1, 2]), (4, 2, [0] * 4), (4, 2, [0, 0, 1, 2]),
                                       (5, 2, [0, 0, 1, 1, 1]), (4, 3, [1, 1, 2, 2]), (2, 1, [1, -1])])
def test_decomposition_iso(N, a, sigma):
    rep = decomposition_iso(N, a, sigma)
    assert rep.bijective and rep.unital and rep.multiplicative and not rep.failures
    assert [d for _, d in rep.summands] == [d for _, d in expected_summand_dims(N, a, sigma)]


def test_decomposition_examples():
    rep = decomposition_iso(5, 2, [0, 0, 1, 1, 1])
    assert rep.dim == 10 and [d for _, d in rep.summands] == [1, 6, 3] and rep.iso_verified
    rep = decomposition_iso(4, 2, [0, 1, 2, 3])
    assert [d for _, d in rep.summands] == [1] * 6
    rep = decomposition_iso(4, 2, [0] * 4)
    assert len(rep.summands) == 1 and rep.summands[0][1] == 6


def test_inverse_scaling_is_not_multiplicative():
    # dividing by the unit c instead of multiplying breaks multiplicativity
    rep = decomposition_iso(4, 2, [0, 0, 1, 1], scale="inverse")
    assert rep.bijective and not rep.multiplicative


@given(st.integers(1, 6), st.data())
def test_vandermonde_count(N, data):
    sigma = data.draw(st.lists(st.sampled_from([0, 1, 2]), min_size=N, max_size=N))
    a = data.draw(st.integers(0, N))
    dims = [d for _, d in expected_summand_dims(N, a, sigma)]
    assert sum(dims) == comb(N, a)


# splitters ---------------------------------------------------------------------------------

def test_splitter_examples():
    sigma = [0, 1, 1]
    assert splitter_algebra(3, sigma, 1, 1, [0], [1], [0, 1]) > 0
    assert splitter_algebra(3, sigma, 1, 1, [0], [1], [1, 1]) == 0
    assert splitter_algebra(3, sigma, 1, 1, [1], [1], [1, 1]) > 0
    assert splitter_algebra(3, [0, 1, 2], 1, 1, [0], [0], [0, 0]) == 0


def test_split_unit_inverse_examples():
    inv, T, e, u = split_unit_inverse(2, [0, 1], 1, 1, [0], [1])
    assert T.mul(inv, T.mul(u, e)) == e
    assert split_unit_value([0], [1]) == -1
    with pytest.raises(NotInvertible):
        split_unit_inverse(3, [0, 0, 1], 1, 1, [0], [0])


@pytest.mark.parametrize("a,b,A,B", [(1, 2, [0], [1, 1]), (2, 1, [0, 1], [2]), (2, 2, [0, 0], [1, 2])])
def test_split_unit_inverse_higher(a, b, A, B):
    sigma = [0, 0, 1, 1, 2]
    inv, T, e, u = split_unit_inverse(5, sigma, a, b, A, B)
    assert T.mul(inv, T.mul(u, e)) == e
    assert split_unit_value(A, B) != 0
