from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from deformkr.cube import (
    FrobeniusData, build_complex, homology, link_homology, oriented_at, resolve,
    split_by_coloring,
)
from deformkr.errors import InputError
from deformkr.webs import LinkDiagram, builtin_link, predict_decomposition

small = st.fractions(min_value=-3, max_value=3, max_denominator=2)


def _links(data, max_strands=3, max_len=4):
    m = data.draw(st.integers(1, max_strands))
    if m == 1:
        return LinkDiagram(1, (1,), ())
    word = data.draw(st.lists(st.integers(1, m - 1).flatmap(lambda i: st.sampled_from([i, -i])),
                              min_size=0, max_size=max_len))
    return LinkDiagram(m, (1,) * m, tuple(word))


# Frobenius data ------------------------------------------------------------------------

@given(small, small)
def test_frobenius_axioms(r1, r2):
    rep = FrobeniusData([r1, r2]).check_axioms()
    assert all(rep.values()), rep


def test_frobenius_examples():
    F = FrobeniusData([1, -1])
    assert F.mul({1: 1}, {1: 1}) == {0: 1}
    assert FrobeniusData([0, 0]).mul({1: 1}, {1: 1}) == {}
    assert FrobeniusData([0, 1]).pairing() == [[0, 1], [1, 1]]
    with pytest.raises(InputError):
        FrobeniusData([0, 1, 2])


def test_frobenius_matches_quotient_ring():
    # multiplication table against sympy polynomial remainder mod (X - r1)(X - r2)
    X = sympy.Symbol("X")
    for r1, r2 in ((0, 1), (2, 2), (Fraction(1, 2), -3)):
        F = FrobeniusData([r1, r2])
        P = (X - sympy.Rational(r1)) * (X - sympy.Rational(r2))
        for i in (0, 1):
            for j in (0, 1):
                rem = sympy.Poly(sympy.rem(X ** (i + j), P, X), X)
                want = {k: Fraction(str(c)) for (k,), c in rem.terms() if c}
                assert F.mul({i: 1}, {j: 1}) == want


# resolutions -----------------------------------------------------------------------------

def test_resolution_examples():
    assert len(resolve(builtin_link("unknot"), ())) == 1
    assert len(resolve(builtin_link("hopf"), (0, 0))) == 2
    assert len(resolve(builtin_link("trefoil"), (1, 1, 1))) == 2
    assert len(resolve(builtin_link("trefoil"), (0, 0, 0))) == 3
    assert oriented_at(1, 1) and oriented_at(-1, 0) and not oriented_at(1, 0)
    with pytest.raises(InputError):
        resolve(builtin_link("hopf"), (0, 2))


@given(st.data())
def test_oriented_resolution_has_strand_circles(data):
    # the all-oriented resolution is the trivial braid closure: one circle per strand
    L = _links(data)
    v = tuple(1 if g > 0 else 0 for g in L.word)
    assert len(resolve(L, v)) == L.strands


# complexes and homology -----------------------------------------------------------------

def test_complex_shapes():
    C = build_complex(builtin_link("trefoil"), [0, 0])
    assert C.dims() == {-3: 8, -2: 12, -1: 6, 0: 4}
    assert C.check_d2()
    H = build_complex(builtin_link("hopf"), [0, 1])
    assert H.dims() == {-2: 4, -1: 4, 0: 4}


def test_d2_negative_control():
    C = build_complex(builtin_link("hopf"), [0, 0])
    d = min(C.diff)
    row = next(r for r in C.diff[d] if r)
    j = next(iter(row))
    row[j] = -row[j] + 1 if row[j] == 1 else row[j] + 1
    assert not C.check_d2()


def _dense_homology(C):
    out = {}
    ranks = {}
    for d, rows in C.diff.items():
        n = len(C.groups.get(d + 1, []))
        M = sympy.Matrix(len(rows), n, lambda i, j: sympy.Rational(str(rows[i].get(j, 0)))) if rows and n else None
        ranks[d] = M.rank() if M is not None else 0
    for d, g in C.groups.items():
        h = len(g) - ranks.get(d, 0) - ranks.get(d - 1, 0)
        if h:
            out[d] = h
    return out


@pytest.mark.parametrize("name", ["unknot", "hopf", "trefoil", "figure-eight"])
@pytest.mark.parametrize("sigma", [[0, 0], [0, 1], [1, -1]])
def test_homology_matches_dense_ranks(name, sigma):
    C = build_complex(builtin_link(name), sigma)
    assert homology(C).per_degree == _dense_homology(C)


def test_n2_table():
    # undeformed / two distinct roots
    assert link_homology(builtin_link("unknot"), [0, 0]).total == 2
    assert link_homology(builtin_link("trefoil"), [0, 0]).per_degree == {-3: 1, -2: 1, 0: 2}
    assert link_homology(builtin_link("trefoil"), [0, 1]).total == 2
    assert link_homology(builtin_link("trefoil"), [1, -1]).total == 2
    assert link_homology(builtin_link("hopf"), [0, 0]).total == 4
    assert link_homology(builtin_link("hopf"), [1, -1]).total == 4
    assert link_homology(builtin_link("figure-eight"), [0, 0]).total == 6
    assert link_homology(builtin_link("figure-eight"), [0, 1]).total == 2


def test_repeated_root_is_shifted_undeformed():
    # Σ = {r, r} is a change of variable X -> X - r away from Σ = {0, 0}
    for name in ("trefoil", "figure-eight"):
        L = builtin_link(name)
        assert link_homology(L, [2, 2]).per_degree == link_homology(L, [0, 0]).per_degree


@given(st.data(), st.sampled_from([[0, 1], [1, -1], [Fraction(1, 2), 3]]))
def test_random_braids(data, sigma):
    L = _links(data)
    C0 = build_complex(L, [0, 0])
    C1 = build_complex(L, sigma)
    h0, h1 = homology(C0), homology(C1)
    # Euler characteristic does not see the deformation
    assert h0.euler == h1.euler
    # distinct roots: one generator per coloring of components
    assert h1.total == 2 ** len(L.components())
    # deformed homology is no larger in any degree
    assert all(h1.per_degree.get(d, 0) <= h0.per_degree.get(d, 0) for d in set(h0.per_degree) | set(h1.per_degree))
    assert (h1.total - h0.total) % 2 == 0


def test_homology_result_dict():
    d = link_homology(builtin_link("trefoil"), [0, 0]).to_dict()
    assert d["per_degree"] == {"-3": 1, "-2": 1, "0": 2} and d["total"] == 4 and d["euler"] == 2


# splitting by colorings -------------------------------------------------------------------

def test_split_examples():
    pieces = split_by_coloring(build_complex(builtin_link("trefoil"), [0, 1]))
    good = [p for p in pieces if p.consistent]
    assert [p.coloring for p in good] == [(0,), (1,)]
    assert all(p.dim == 1 for p in good)
    assert all(p.dim == 0 for p in pieces if not p.consistent)
    H = split_by_coloring(build_complex(builtin_link("hopf"), [0, 1]))
    assert sum(p.dim for p in H if p.consistent) == 4
    with pytest.raises(InputError):
        split_by_coloring(build_complex(builtin_link("hopf"), [0, 0]))


@given(st.data())
def test_split_is_a_direct_sum(data):
    L = _links(data)
    C = build_complex(L, [0, 1])
    pieces = split_by_coloring(C)
    assert sum(p.chain_dim for p in pieces) == sum(C.dims().values())
    assert sum(p.dim for p in pieces) == homology(C).total
    for p in pieces:
        assert p.dim == (1 if p.consistent else 0)


def test_predictor_matches_cube():
    for name in ("unknot", "hopf", "trefoil", "figure-eight"):
        L = builtin_link(name)
        h = link_homology(L, [0, 1])
        pred = predict_decomposition(L, [0, 1])
        assert pred.total == h.total
        pieces = [p for p in split_by_coloring(build_complex(L, [0, 1])) if p.consistent]
        assert sorted(s.dim for s in pred.summands) == sorted(p.dim for p in pieces)
