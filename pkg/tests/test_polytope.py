from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from padicpaths.polytope import (
    EMPTY,
    AffineMap,
    EmptyPolytopeError,
    Polytope,
    Unbounded,
    cube_face,
    parse_shape,
    simplex_degeneracy,
    simplex_face,
    veebar_check,
    wedge,
)

F = Fraction


def V(*pts):
    return tuple(sorted(tuple(F(x) for x in p) for p in pts))


def test_standard_shapes():
    assert Polytope.simplex(1, 4).vertices == V((4, 0), (0, 4))
    assert Polytope.cube(2, 4).vertices == V((0, 0), (0, 4), (4, 0), (4, 4))
    assert Polytope.interval(4).vertices == V((0,), (4,))
    assert parse_shape("box:0,2;1,3").vertices == V((0, 1), (0, 3), (2, 1), (2, 3))


def test_empty_and_unbounded():
    with pytest.raises(EmptyPolytopeError):
        Polytope(1, [(1, -3), (-1, 1)])
    with pytest.raises(Unbounded):
        Polytope(1, [(1, 0)])
    assert not EMPTY


def test_lattice_L():
    assert Polytope.cube(3, 4).lattice_L() == []
    assert Polytope.simplex(1, 4).lattice_L() == [(1, 1, -4)]
    assert Polytope.simplex(3, 4).lattice_L() == [(1, 1, 1, 1, -4)]
    flat = Polytope.from_points([(0, 0, 0), (4, 0, 0), (0, 4, 0)])
    assert any(r[:3] == (0, 0, 1) and r[3] == 0 for r in flat.lattice_L())


def test_thick_representative_simplex():
    T, a, a_inv = Polytope.simplex(1, 4).thick
    assert T == Polytope.interval(4)
    assert a((F(1), F(3))) == (F(1),)
    assert a_inv((F(1),)) == (F(1), F(3))


def test_thick_representative_cube_and_point():
    T, a, a_inv = Polytope.cube(2, 4).thick
    assert T == Polytope.cube(2, 4)
    assert a.A == ((1, 0), (0, 1))
    P = Polytope.point((4,))
    T, a, a_inv = P.thick
    assert T.n == 0


def test_non_unimodular_hull():
    S = Polytope.from_points([(0, 0, 0), (2, 3, 0)])
    T = S.thick.T
    assert T == Polytope.interval(1)


def test_face_maps():
    f = cube_face(1, 1, 0, 4)
    assert f(()) == (F(0),)
    img = f.image(Polytope(0, []))
    assert img.vertices == V((0,))
    assert AffineMap.identity(2).compose(cube_face(2, 1, 1, 4)) == cube_face(2, 1, 1, 4)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_cosimplicial_identities(n):
    # s^j d^i on Delta^n, with d^i: Delta^n -> Delta^(n+1), s^j: Delta^(n+1) -> Delta^n
    for i in range(n + 2):
        for j in range(n + 1):
            lhs = simplex_degeneracy(n + 1, j).compose(simplex_face(n + 1, i))
            if i < j:
                rhs = simplex_face(n, i).compose(simplex_degeneracy(n, j - 1))
            elif i in (j, j + 1):
                rhs = AffineMap.identity(n + 1)
            else:
                rhs = simplex_face(n, i - 1).compose(simplex_degeneracy(n, j))
            assert lhs == rhs, (i, j)


def test_wedge_and_veebar():
    I = Polytope.interval
    assert wedge(Polytope.box([(0, 2)]), Polytope.box([(1, 3)])) == Polytope.box([(1, 2)])
    assert wedge(Polytope.box([(0, 1)]), Polytope.box([(2, 3)])) is EMPTY
    assert wedge(Polytope.box([(0, 2)]), Polytope.box([(2, 3)])) is EMPTY
    assert veebar_check(I(4), [Polytope.box([(0, 2)]), Polytope.box([(2, 4)])])
    assert not veebar_check(I(4), [Polytope.box([(0, 1)]), Polytope.box([(2, 4)])])
    sq = Polytope.cube(2, 4)
    lower = Polytope.from_points([(0, 0), (4, 0), (4, 4)])
    upper = Polytope.from_points([(0, 0), (0, 4), (4, 4)])
    assert veebar_check(sq, [lower, upper])
    assert not veebar_check(sq, [lower])


def test_json_roundtrip():
    S = Polytope.simplex(2, 4)
    assert Polytope.from_json(S.to_json()) == S


boxes = st.lists(st.tuples(st.integers(-3, 3), st.integers(1, 4)), min_size=1, max_size=3).map(
    lambda bs: Polytope.box([(lo, lo + w) for lo, w in bs])
)


@given(boxes)
def test_chart_roundtrip(S):
    T, a, a_inv = S.thick
    for v in S.vertices:
        assert a_inv(a(v)) == v
    assert a.image(S) == T


@given(boxes, st.integers(0, 2))
def test_distributivity(T, k):
    # T = (S1 ^ T) v (S2 ^ T) for the split of a big box at a coordinate hyperplane
    n = T.n
    i = k % n
    lo, hi = -5, 9
    cut = 1
    S1 = Polytope.box([(lo, hi) if j != i else (lo, cut) for j in range(n)])
    S2 = Polytope.box([(lo, hi) if j != i else (cut, hi) for j in range(n)])
    pieces = [P for P in (wedge(S1, T), wedge(S2, T)) if P]
    assert veebar_check(T, pieces)
