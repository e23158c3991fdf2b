import random
from fractions import Fraction
from math import comb, factorial

import pytest
import sympy
from hypothesis import given, strategies as st

from conftest import random_sigma, to_sympy
from deformkr.algebra.poly import MultiPoly, all_monomials
from deformkr.errors import InputError
from deformkr.nilhecke import (
    NHWord, apply, b_recursion_oracle, center_check, check_idempotent, check_relations,
    deformed_quotient_check, divided_difference, divided_difference_naive, e_a, h_basis, longest_dd,
    operators_equal, random_word, schur_explosion_check, theta, theta_of_P, theta_xi1, xi_vars,
)
from deformkr.symfn import comp_in_e, e_to_sym, evars, h_diff, h_diff_in_e, is_symmetric, partitions_in_box


def X(a, i):
    return NHWord.xi(a, i)


def D(a, i):
    return NHWord.dd(a, i)


# divided differences -------------------------------------------------------------

def test_dd_examples():
    g = xi_vars(2)
    x1, x2 = MultiPoly.var(g, 0), MultiPoly.var(g, 1)
    assert divided_difference(x1, 1) == MultiPoly.one(g)
    assert divided_difference(x1 ** 2, 1) == x1 + x2
    assert not divided_difference(x1 * x2 + x1 + x2, 1)


def _dd_sympy(f, i):
    xs = [sympy.Symbol(v) for v in f.gens]
    e = to_sympy(f, xs)
    sw = e.subs({xs[i - 1]: xs[i], xs[i]: xs[i - 1]}, simultaneous=True)
    return sympy.cancel((e - sw) / (xs[i - 1] - xs[i]))


@given(st.dictionaries(st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4)),
                       st.integers(-3, 3), max_size=5),
       st.integers(1, 2))
def test_dd_matches_oracles(terms, i):
    f = MultiPoly(xi_vars(3), terms)
    got = divided_difference(f, i)
    assert got == divided_difference_naive(f, i)
    assert to_sympy(got) == sympy.expand(_dd_sympy(f, i))


# relations and e_a ------------------------------------------------------------------

@pytest.mark.parametrize("a", [1, 2, 3, 4])
def test_relations(a):
    rep = check_relations(a)
    assert all(rep.values()), rep


def test_relation_examples():
    assert operators_equal(D(3, 1) * D(3, 1), NHWord(3), 6)[0]
    assert operators_equal(X(2, 1) * D(2, 1) - D(2, 1) * X(2, 2), NHWord.one(2), 4)[0]
    assert operators_equal(D(3, 1) * D(3, 2) * D(3, 1), D(3, 2) * D(3, 1) * D(3, 2), 6)[0]


def test_relation_negative_control():
    # a wrong relation must be caught by the same degree-bounded comparison
    assert not operators_equal(X(2, 1) * D(2, 1), D(2, 1) * X(2, 2), 4)[0]
    assert not operators_equal(D(3, 1) * D(3, 2), D(3, 2) * D(3, 1), 6)[0]


def test_check_relations_range():
    with pytest.raises(InputError):
        check_relations(6)


def test_e_a_examples():
    assert operators_equal(e_a(1), NHWord.one(1), 3)[0]
    assert operators_equal(e_a(2), X(2, 1) * D(2, 1), 4)[0]
    for a in (2, 3):
        assert check_idempotent(a)
    assert check_idempotent(3, maxdeg=6)


def test_longest_dd_symmetric_and_absorbs_e_a():
    g = xi_vars(3)
    Da = longest_dd(3)
    for d in range(6):
        for e in all_monomials(3, d):
            assert is_symmetric(apply(Da, MultiPoly.monomial(g, e)))
    assert operators_equal(Da * e_a(3), Da, 6)[0]
    assert apply(Da, MultiPoly.monomial(g, (2, 1, 0))) == MultiPoly.one(g)


@pytest.mark.parametrize("a", [1, 2, 3])
def test_schur_explosion(a):
    for alpha in partitions_in_box(a, 2):
        assert schur_explosion_check(a, alpha)


@pytest.mark.parametrize("a", [2, 3])
def test_center(a):
    assert center_check(a, n_words=20, seed=a)


# theta -------------------------------------------------------------------------------

def test_theta_examples():
    T = theta_xi1(2)
    E = evars(2)
    e1, e2 = MultiPoly.var(E, 0), MultiPoly.var(E, 1)
    assert T.rows == [[e1, MultiPoly.one(E)], [-e2, MultiPoly.zero(E)]]
    assert theta(3, NHWord.one(3)).rows == theta(3, NHWord.one(3)).identity(6, evars(3)).rows
    T2 = T ** 2
    assert T2.rows[0] == [comp_in_e(2, E), comp_in_e(1, E)]


def _reconstruct(a, word):
    """w(b_j) == sum_i theta_ij b_i, checked as polynomials in xi."""
    g = xi_vars(a)
    T = theta(a, word)
    basis = [MultiPoly.monomial(g, b) for b in h_basis(a)]
    for j, bj in enumerate(basis):
        rhs = MultiPoly.zero(g)
        for i, bi in enumerate(basis):
            if T.rows[i][j].terms:
                rhs = rhs + e_to_sym(T.rows[i][j], g) * bi
        assert apply(word, bj) == rhs


@pytest.mark.parametrize("a", [1, 2, 3])
def test_theta_reconstructs_action(a):
    rng = random.Random(a)
    for _ in range(5):
        _reconstruct(a, random_word(a, rng))
    for i in range(1, a):
        _reconstruct(a, D(a, i))


def test_h_basis_shape():
    assert len(h_basis(3)) == 6 and len(h_basis(4)) == 24
    assert h_basis(2) == [(1, 0), (0, 0)]


@pytest.mark.parametrize("a,pairs", [(1, 100), (2, 100), (3, 100), (4, 15)])
def test_theta_multiplicative(a, pairs):
    rng = random.Random(100 + a)
    for _ in range(pairs):
        w1, w2 = random_word(a, rng, 3), random_word(a, rng, 3)
        assert theta(a, w1 * w2) == theta(a, w1) @ theta(a, w2)


@pytest.mark.parametrize("a", [2, 3])
def test_theta_relations(a):
    one = theta(a, NHWord.one(a))
    for i in range(1, a):
        Di = theta(a, D(a, i))
        assert Di @ Di == one.scale(0)
        lhs = theta(a, X(a, i)) @ Di + Di.scale(-1) @ theta(a, X(a, i + 1))
        assert lhs == one


@pytest.mark.parametrize("a", [1, 2, 3, 4])
def test_b_recursion(a):
    T = theta_xi1(a)
    for k in range(1, 8 if a < 4 else 6):
        assert b_recursion_oracle(a, k) == (T ** k).block(0, a)


def test_b_recursion_examples():
    E = evars(2)
    assert b_recursion_oracle(2, 1) == theta_xi1(2).block(0, 2)
    assert b_recursion_oracle(2, 3)[0][0] == comp_in_e(3, E)


# deformed quotient -----------------------------------------------------------------------

def test_theta_P_a1():
    E = evars(1)
    x = MultiPoly.var(E, 0)
    C = theta_of_P(1, [0, 1])
    assert C.rows == [[x ** 2 - x]]
    assert C.rows[0][0] == h_diff_in_e(2, E, [0, 1])


def test_theta_P_first_row_a2():
    for sigma in ([0, 0], [1, -1], [0, 1]):
        first = theta_of_P(2, sigma).rows[0][:2]
        assert first == [h_diff_in_e(2, evars(2), sigma), h_diff_in_e(1, evars(2), sigma)]


@pytest.mark.parametrize("a,sigma", [(1, [0, 1]), (2, [0, 1, 2]), (2, [0, 0, 1]), (3, [1, 1, 1, -1]),
                                     (2, [Fraction(1, 2), 0, 0, 3])])
def test_deformed_quotient(a, sigma):
    rep = deformed_quotient_check(a, sigma)
    assert all(v for v in rep.values() if isinstance(v, bool)), rep
    assert rep["dim_value"] == factorial(a) ** 2 * comb(len(sigma), a)


def test_dim_NH2_N3():
    assert deformed_quotient_check(2, [0, 1, 2])["dim_value"] == 12


def test_first_row_in_x_oracle():
    # first row of theta(P(xi_1)) equals h_{N+1-j}(X - Σ) built directly in x-variables
    a, sigma = 2, [2, -1, 0]
    g = xi_vars(a)
    C = theta_of_P(a, sigma)
    for j in range(1, a + 1):
        assert e_to_sym(C.rows[0][j - 1], g) == h_diff(len(sigma) + 1 - j, g, sigma)


def test_deformed_quotient_range():
    with pytest.raises(InputError):
        deformed_quotient_check(3, [0, 1])
    with pytest.raises(InputError):
        deformed_quotient_check(5, [0] * 6)
