from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from padicpaths.characters import Character, default_registry
from padicpaths.funcring import (
    IncompatibleSections,
    PolyFunction,
    evaluate_point,
    galois_twist,
    gauss_norm,
    glue,
    involution,
    invert_unit,
    pullback,
    restrict,
    tensor,
    unit_decompose,
)
from padicpaths.localfield import FieldConfig
from padicpaths.polytope import AffineMap, Polytope, cube_face

CFG = FieldConfig(5, 40)
REG = default_registry(CFG)
I = Polytope.cube(1, 4)
G = Character.gen


def fn(terms, S=I):
    return PolyFunction.from_ambient(S, terms, REG)


def test_ring_examples():
    f = fn({G("p"): 3, G("eps"): 1})
    assert (f + PolyFunction.zero(I, REG)).equals(f)
    assert (fn({G("eps"): 1}) * fn({G("eps", -1): 1})).equals(PolyFunction.constant(I, REG, 1))
    one = Character.identity(1)
    lhs = fn({one: 1, G("p"): 1}) * fn({one: 1, G("p"): -1})
    assert lhs.equals(fn({one: 1, G("p", 2): -1}))


def test_gauss_norm_examples():
    assert gauss_norm(fn({Character.identity(1): 5, G("p"): 1})) == 0
    assert gauss_norm(fn({G("p", -1): 1})) == -4
    assert gauss_norm(PolyFunction.zero(I, REG)) == float("inf")


def test_pullback_examples():
    f = fn({G("p"): 1})
    assert pullback(AffineMap.identity(1), f, I).equals(f)
    assert involution(f).equals(fn({G("p", -1): 625}))
    sq = Polytope.cube(2, 4)
    g = fn({Character([{"p": 1}, {"q": 1}]): 1}, sq)
    # t -> (t, 0)
    assert pullback(cube_face(2, 2, 0, 4), g, I).equals(f)


def test_tensor_examples():
    f = fn({G("p"): 1})
    t = tensor(f, f)
    assert gauss_norm(t) == 0
    assert t.S == Polytope.cube(2, 4)
    one = PolyFunction.constant(I, REG, 1)
    assert tensor(f, one).equals(fn({Character([{"p": 1}, {}]): 1}, Polytope.cube(2, 4)))


def test_galois_twist_examples():
    f = fn({G("eps"): 1})
    assert galois_twist(f, 1).equals(f)
    assert galois_twist(f, 2).equals(fn({G("eps", 2): 1}))


def test_evaluation():
    assert evaluate_point(fn({G("p"): 1}), (2,)).agrees(25)
    assert evaluate_point(fn({Character.identity(1): 5, G("p"): 1}), (0,), "i_p") == 0


def test_unit_decomposition_examples():
    dec = unit_decompose(fn({G("eps"): 2, G("eps") * G("p"): 10}))
    assert dec and dec.a.agrees(2) and dec.x == G("eps")
    assert dec.g.equals(fn({G("p"): 5}))
    assert not unit_decompose(fn({Character.identity(1): 1, G("p"): 1}))
    dec = unit_decompose(PolyFunction.constant(I, REG, 7))
    assert dec.a.agrees(7) and dec.x.is_identity() and dec.g.is_zero()


def test_inverse_examples():
    one = PolyFunction.constant(I, REG, 1)
    inv, _ = invert_unit(one)
    assert inv.equals(one)
    inv, _ = invert_unit(fn({G("p"): 1}))
    assert inv.equals(fn({G("p", -1): 1}))
    f = fn({G("eps"): 2, G("eps") * G("p"): 10})
    inv, cert = invert_unit(f)
    assert gauss_norm(inv * f - one) >= 38
    assert cert.holds(CFG.M)


def test_glue():
    left, right = Polytope.box([(0, 2)]), Polytope.box([(2, 4)])
    f = fn({G("p"): 3, G("ua"): 1})
    g = glue(I, [left, right], [restrict(f, left), restrict(f, right)])
    assert g.equals(f)
    assert glue(I, [I], [f]).equals(f)
    with pytest.raises(IncompatibleSections):
        glue(I, [left, right], [PolyFunction.constant(left, REG, 1), PolyFunction.constant(right, REG, 2)])


def test_json_roundtrip():
    f = fn({G("p"): 3, G("eps", Fraction(1, 4)): 1})
    assert PolyFunction.from_json(f.to_json(), REG).equals(f)


def test_non_thick_normal_form():
    S = Polytope.simplex(1, 4)
    # p(t0) p(t1) = p(4) on the simplex: a constant
    f = fn({Character([{"p": 1}, {"p": 1}]): 1}, S)
    assert f.equals(PolyFunction.constant(S, REG, 625))


# ---------------------------------------------------------------------------
# properties

NAMES = ["eps", "p", "ua", "mu"]
exps = st.integers(-3, 3)
char1 = st.dictionaries(st.sampled_from(NAMES), exps, max_size=2).map(Character.single)
coeffs = st.integers(1, 24).flatmap(lambda c: st.integers(0, 3).map(lambda k: c * 5**k))
functions = st.dictionaries(char1, coeffs, min_size=1, max_size=4).map(lambda d: fn(d))


@given(functions)
def test_power_multiplicative(f):
    assert gauss_norm(f * f) == 2 * gauss_norm(f)


@given(functions, functions)
def test_integral_domain_and_submultiplicativity(f, g):
    h = f * g
    assert not h.is_zero()
    assert gauss_norm(h) >= gauss_norm(f) + gauss_norm(g)


def test_gauss_norm_not_multiplicative():
    # sup norms peak at different vertices: |p(t)| is largest at t = 0, |p^-1(t)| at t = 4
    f, g = fn({G("p"): 1}), fn({G("p", -1): 1})
    assert gauss_norm(f * g) == 0 > gauss_norm(f) + gauss_norm(g)


@given(functions)
def test_involution_properties(f):
    assert involution(involution(f)).equals(f)
    assert gauss_norm(involution(f)) == gauss_norm(f)


@given(functions, functions)
def test_involution_linear(f, g):
    assert involution(f + g).equals(involution(f) + involution(g))


@given(functions, st.sampled_from([2, 6]))
def test_galois_isometric(f, u):
    assert gauss_norm(galois_twist(f, u)) == gauss_norm(f)


@given(functions, functions)
def test_tensor_isometric(f, g):
    assert gauss_norm(tensor(f, g)) == gauss_norm(f) + gauss_norm(g)


@given(functions, st.integers(0, 4))
def test_i_u_below_i_p(f, t):
    v = evaluate_point(f, (t,))
    assert v.is_zero() or v.valuation() >= evaluate_point(f, (t,), "i_p")


@given(functions)
def test_maximum_modulus_on_vertices(f):
    # sampling rational points never beats the vertex minimum
    samples = [evaluate_point(f, (Fraction(k, 4),), "i_p") for k in range(17)]
    assert min(samples) == gauss_norm(f)


@given(
    st.integers(1, 24).filter(lambda c: c % 5),
    char1,
    st.dictionaries(char1, st.integers(1, 24).map(lambda c: 5 * c), max_size=3),
)
def test_inverse_residual(a, x, g):
    one = PolyFunction.constant(I, REG, 1)
    gf = fn(g)
    assume(gf.is_zero() or gauss_norm(gf) > 0)
    f = fn({x: a}) * (one + gf)
    assert unit_decompose(f)
    inv, _ = invert_unit(f)
    assert gauss_norm(inv * f - one) >= CFG.M - 2
