from collections import Counter
from fractions import Fraction

import pytest

from k3isogeny.exact import INFINITY, UniPoly
from k3isogeny.fibration import (
    ClassificationError,
    FibrationError,
    FibrationModel,
    KodairaType,
    classify_valuations,
    fiber_configuration,
    find_moebius,
    format_multiset,
    invariants_c4c6delta,
    j_map,
    jmap_equal_up_to_moebius,
    parse_multiset,
    section_incidence,
    swap_base_fiber,
)
from k3isogeny.exact import HomogPoly

t = UniPoly.gen("t")
A, B, C = t**4 - 1, t**4, t**4 - 16


@pytest.mark.parametrize("vals,expect", [
    ((0, 0, 1), "I1"), ((0, 0, 4), "I4"), ((1, 1, 2), "II"), ((1, 2, 3), "III"),
    ((2, 2, 4), "IV"), ((2, 3, 6), "I0*"), ((2, 3, 8), "I2*"), ((3, 4, 8), "IV*"),
    ((3, 5, 9), "III*"), ((4, 5, 10), "II*"), ((0, 0, 0), "I0"),
])
def test_kodaira_table(vals, expect):
    assert str(classify_valuations(*vals)[1]) == expect


def test_minimalization_shift():
    inv, kt = classify_valuations(6, 9, 18)
    assert str(kt) == "I0*" and inv.twists_applied == 1
    assert (inv.v_c4, inv.v_c6, inv.v_delta) == (2, 3, 6)


def test_inconsistent_valuations():
    with pytest.raises(ClassificationError):
        classify_valuations(0, 1, 3)
    with pytest.raises(ClassificationError):
        classify_valuations(1, 1, 5)


def test_kodaira_parse_round_trip():
    for s in ["I0", "I7", "I3*", "II", "III", "IV", "IV*", "III*", "II*"]:
        assert str(KodairaType.parse(s)) == s
    assert KodairaType.parse("I2*").euler() == 8


def test_multiset_format():
    ms = parse_multiset("2I0* + 4I2 + 4I1")
    assert ms == Counter({"I0*": 2, "I2": 4, "I1": 4})
    assert format_multiset(ms) == "2I0* + 4I2 + 4I1"
    assert format_multiset(Counter()) == "smooth"


def test_degree_rule():
    with pytest.raises(FibrationError):
        FibrationModel.weierstrass(A, B, C, degrees=(4, 6, 4))
    with pytest.raises(FibrationError):
        FibrationModel.weierstrass(A, B, C, degrees=(4, 4, 6))
    with pytest.raises(FibrationError):
        FibrationModel.weierstrass(0, B, C, degrees=(4, 4, 4))


def test_generic_fibers():
    X = FibrationModel.weierstrass(A, B, C)
    rep = fiber_configuration(X)
    assert rep.summary() == "8I2 + 8I1"
    assert rep.euler_total == 24


def test_quartic_classified_through_jacobian():
    Z = FibrationModel.quartic(A, B, C)
    X = FibrationModel.weierstrass(A, B, C)
    assert fiber_configuration(Z).summary() == fiber_configuration(X.jacobian()).summary()
    assert Z.jacobian().a.affine == UniPoly.const(1, "t")


def test_c4_and_delta():
    X = FibrationModel.weierstrass(A, B, C)
    c4, c6, d = invariants_c4c6delta(X)
    ac = A * C
    assert c4.affine == 16 * (B * B - 3 * ac)
    assert d.affine == 16 * ac * ac * (B * B - 4 * ac)
    # c4^3 - c6^2 = 1728 Delta
    assert c4.affine**3 - c6.affine**2 == 1728 * d.affine


def test_infinity_place():
    X = FibrationModel.weierstrass(t * (t - 1) * (t + 1) * (t - 2), 2 * t * (t - 1) * (t + 1) * (t - 3),
                                   t * (t - 1) * (t + 1) * (t - 2))
    rep = fiber_configuration(X)
    assert INFINITY in [e.place for e in rep.entries]
    assert rep.summary() == "3I0* + I4 + 2I1"


def test_euler_mismatch_detected():
    m = FibrationModel.weierstrass(A, B, C)
    rep = fiber_configuration(m)
    assert sum(e.kodaira.euler() * e.degree for e in rep.entries) == 24


def test_section_incidence():
    X = FibrationModel.weierstrass(A, B, C)
    p = t - 1
    assert section_incidence(X, "TwoTorsion", p).passes
    assert not section_incidence(X, "Zero", p).passes
    Z = FibrationModel.quartic(A, B, C)
    assert section_incidence(Z, "BisectionW0", p).passes
    assert not section_incidence(Z, "BisectionU0", p).passes
    with pytest.raises(FibrationError):
        section_incidence(X, "Nope", p)


def test_swap_involution():
    Z = FibrationModel.quartic(A, B, C)
    S = swap_base_fiber(Z, new_var="t")
    SS = swap_base_fiber(S, new_var="t")
    assert (SS.a.affine, SS.b.affine, SS.c.affine) == (A, B, C)


def test_swap_rejects_weierstrass():
    with pytest.raises(FibrationError):
        swap_base_fiber(FibrationModel.weierstrass(A, B, C))


def test_jmap_moebius_self():
    X = FibrationModel.weierstrass(A, B, C)
    j = j_map(X)
    assert j == j_map(X)
    assert jmap_equal_up_to_moebius(X, X)
    assert find_moebius(X, X, preserve_types=True) is not None


def test_jmap_moebius_translate():
    X = FibrationModel.weierstrass(A, B, C)
    s = t + 3
    Xs = FibrationModel.weierstrass(A.compose(s), B.compose(s), C.compose(s))
    assert jmap_equal_up_to_moebius(X, Xs)
    other = FibrationModel.weierstrass(t**4 - 2, t**4 + t, t**4 - 16)
    assert not jmap_equal_up_to_moebius(X, other)
