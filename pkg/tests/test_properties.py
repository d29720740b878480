from fractions import Fraction

from hypothesis import assume, given, settings, strategies as st

from k3isogeny.chl import ModuliNine, ScaleTriple, dual_nine, dual_scale_commutation, scale_nine
from k3isogeny.exact import (
    HomogPoly,
    UniPoly,
    gcd_free_basis,
    poly_gcd,
    squarefree_decompose,
    valuation_at,
)
from k3isogeny.isogeny import TwoTorsionCurve, isogenous_curve, j_invariant, torsor_Chat, quartic_jacobian_j
from k3isogeny.parser import parse_poly

small = st.fractions(min_value=-20, max_value=20, max_denominator=6)
nonzero = small.filter(lambda x: x != 0)
coeffs = st.lists(st.integers(-9, 9), min_size=1, max_size=6)
polys = coeffs.map(lambda c: UniPoly(c, "t"))

SETTINGS = settings(max_examples=150, deadline=None)


@SETTINGS
@given(polys, polys)
def test_gcd_divides(f, g):
    assume(not (f.is_zero() and g.is_zero()))
    d = poly_gcd(f, g)
    assert (f % d).is_zero() and (g % d).is_zero()


@SETTINGS
@given(polys)
def test_squarefree_reconstructs(f):
    assume(f.degree() >= 1)
    fm = squarefree_decompose(f)
    assert fm.product("t") == f


@SETTINGS
@given(st.lists(polys, min_size=1, max_size=4))
def test_gcd_free_pairwise_coprime(fs):
    fs = [f for f in fs if f.degree() >= 1]
    assume(fs)
    b = gcd_free_basis(fs)
    for i, p in enumerate(b):
        for q in b[i + 1:]:
            assert poly_gcd(p, q).degree() == 0


@SETTINGS
@given(polys, polys, st.integers(-3, 3))
def test_valuation_additive(f, g, r):
    assume(not f.is_zero() and not g.is_zero())
    p = UniPoly([-r, 1], "t")
    assert valuation_at(f * g, p) == valuation_at(f, p) + valuation_at(g, p)


@SETTINGS
@given(polys, st.integers(0, 3))
def test_valuation_at_infinity(f, extra):
    assume(not f.is_zero())
    h = HomogPoly(f, f.degree() + extra)
    assert h.val_infinity() == extra


@SETTINGS
@given(polys)
def test_parse_round_trip(f):
    assert parse_poly(str(f).replace("**", "^")) == f


@SETTINGS
@given(nonzero, small, nonzero)
def test_double_isogeny_scales(a, b, c):
    E = TwoTorsionCurve(a, b, c)
    assume(E.is_smooth())
    HH = isogenous_curve(isogenous_curve(E))
    assert HH.b == 4 * b and HH.ac == 16 * a * c
    assert j_invariant(HH) == j_invariant(E)


@SETTINGS
@given(nonzero, small, nonzero)
def test_torsor_jacobian(a, b, c):
    E = TwoTorsionCurve(a, b, c)
    assume(E.is_smooth())
    D = torsor_Chat(E)
    assert quartic_jacobian_j(D.q4, 0, D.q2, 0, D.q0) == j_invariant(isogenous_curve(E))


nine = st.lists(small, min_size=9, max_size=9).map(ModuliNine.of)
scales = st.tuples(nonzero, nonzero, nonzero).map(lambda v: ScaleTriple(*v))


@SETTINGS
@given(nine)
def test_dual_involution(m):
    assert dual_nine(dual_nine(m)) == m


@SETTINGS
@given(nine, scales)
def test_dual_scale_commute(m, s):
    assert dual_scale_commutation(m, s)


@SETTINGS
@given(nine, scales, scales)
def test_scale_action(m, s1, s2):
    assert scale_nine(scale_nine(m, s1), s2) == scale_nine(m, s1 * s2)
