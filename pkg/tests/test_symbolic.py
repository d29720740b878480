import random
from fractions import Fraction

import pytest

from k3isogeny.symbolic import (
    CurveSpec,
    NotAMorphism,
    PointMap,
    SymPoly,
    SymRat,
    SymbolicError,
    compose_maps,
    duplication_map,
    equal_on_curve,
    lands_on,
    maps_equal_on_curve,
    pullback_scalar,
    reduce_on_curve,
    schwartz_zippel,
    symbols,
    var,
)

a, b, c, x, y = symbols("a b c x y")
E = CurveSpec("x", "y", x**3 + b * x**2 + a * c * x, "E")


def test_reduce_y_squared():
    r = reduce_on_curve(y**2, E)
    assert r == SymRat(x**3 + b * x**2 + a * c * x)


def test_reduce_y_cubed():
    r = reduce_on_curve(y**3, E)
    assert r == SymRat((x**3 + b * x**2 + a * c * x) * y)


def test_y2_over_x2_single_fraction():
    r = reduce_on_curve(SymRat(y**2, x**2), E)
    assert r == SymRat(x + b) + SymRat(a * c, x)
    assert r.num.degree_in("y") == 0


def test_symrat_cancels_monomials():
    r = SymRat(x**3 * a, x * a**2)
    assert r.num == x**2
    assert r.den == a


def test_equality_by_cross_multiplication():
    assert SymRat(x**2 - 1, x - 1) == SymRat(x + 1)
    assert SymRat(2 * x, 4) == SymRat(x, 2)


def test_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        SymRat(x, SymPoly.const(0))


def test_rename_and_subs():
    p = x**2 * y + 3 * a
    q = p.rename({"x": "y", "y": "x"})
    assert q == y**2 * x + 3 * a
    assert p.subs({"x": a + 1}) == (a + 1) ** 2 * y + 3 * a


def test_eval():
    p = x**2 * y - Fraction(1, 2) * a
    assert p.eval({"x": 2, "y": 3, "a": 4}) == 10


def test_iota_involution():
    ac = a * c
    iota = PointMap(E, SymRat(ac, x), SymRat(-ac * y, x**2), "iota")
    ident = PointMap(E, SymRat(x), SymRat(y), "id")
    assert lands_on(iota, E)
    assert maps_equal_on_curve(compose_maps(iota, iota), ident)
    assert maps_equal_on_curve(compose_maps(ident, iota), iota)


def test_pullback_scalar_identity_and_negation():
    ident = PointMap(E, SymRat(x), SymRat(y))
    assert pullback_scalar(ident, E) == SymRat(1)
    neg = PointMap(E, SymRat(x), SymRat(-y))
    assert pullback_scalar(neg, E) == SymRat(-1)


def test_not_a_morphism():
    bogus = PointMap(E, SymRat(x + 1), SymRat(y))
    assert not lands_on(bogus, E)
    with pytest.raises(NotAMorphism):
        pullback_scalar(bogus, E)


def test_duplication_on_worked_point():
    E4 = CurveSpec("x", "y", x**3 + 4 * x, "E4")
    d = duplication_map(E4)
    pt = {"x": 2, "y": 4}
    assert d.x_image.eval(pt) == 0
    assert d.y_image.eval(pt) == 0


def test_duplication_needs_monic():
    with pytest.raises(SymbolicError):
        duplication_map(CurveSpec("x", "y", 2 * x**3 + x))


def test_curve_rhs_must_not_involve_y():
    with pytest.raises(SymbolicError):
        CurveSpec("x", "y", x**3 + y)


def test_equal_on_curve_uses_relation():
    assert equal_on_curve(y**2, x**3 + b * x**2 + a * c * x, E)
    assert not equal_on_curve(y**2, x**3, E)


def test_schwartz_zippel_detects_false_identity():
    ok, n = schwartz_zippel(lambda p: p["x"] ** 2 == p["x"], lambda r: {"x": Fraction(r.randint(2, 9))})
    assert not ok and n == 1
    ok, n = schwartz_zippel(lambda p: (p["x"] + 1) ** 2 == p["x"] ** 2 + 2 * p["x"] + 1,
                            lambda r: {"x": Fraction(r.randint(-9, 9))}, trials=20)
    assert ok and n == 20
