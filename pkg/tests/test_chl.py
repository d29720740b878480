from fractions import Fraction

import pytest

from k3isogeny.chl import (
    CHLError,
    ModuliNine,
    NormalizationError,
    ScaleTriple,
    dual_nine,
    dual_scale_commutation,
    duality_report,
    equiv_fibration_check,
    normalize_nine,
    rational_surface_J,
    residual_scale,
    scale_nine,
)
from k3isogeny.exact import UniPoly
from k3isogeny.symbolic import symbols

t = UniPoly.gen("t")
GENERIC = ModuliNine.from_quadratics(t**2 + 1, t**2 + t + 3, 2 * t**2 + t + 1)
SAMPLE = ModuliNine.from_quadratics(t**2 + 1, t**2 + t + 3, t**2 + 2)


def test_from_quadratics_halves_middle():
    assert SAMPLE.values() == (1, 0, 1, 1, Fraction(1, 2), 3, 1, 0, 2)
    a, b, g = SAMPLE.quadratics()
    assert b.affine == t**2 + t + 3


def test_dual_is_transpose():
    m = ModuliNine.of(range(1, 10))
    assert dual_nine(m).values() == (1, 4, 7, 2, 5, 8, 3, 6, 9)
    assert dual_nine(dual_nine(m)) == m


def test_symmetric_fixed_point():
    m = ModuliNine.of([1, 2, 3, 2, 5, 6, 3, 6, 9])
    assert dual_nine(m) == m


def test_dual_symbolic():
    m = ModuliNine.symbolic()
    assert dual_nine(dual_nine(m)) == m


def test_scale_group_law():
    m = ModuliNine.of(range(1, 10))
    s1, s2 = ScaleTriple(2, 3, 5), ScaleTriple(Fraction(1, 2), 7, -1)
    assert scale_nine(scale_nine(m, s1), s2) == scale_nine(m, s1 * s2)
    assert scale_nine(scale_nine(m, s1), s1.inverse()) == m


def test_dual_scale_commutation_symbolic():
    m = ModuliNine.symbolic()
    l, mu, nu = symbols("l mu nu")
    assert dual_scale_commutation(m, ScaleTriple(l, mu, nu))


def test_scale_nonzero():
    with pytest.raises(CHLError):
        ScaleTriple(1, 0, 1)


def test_normalize_example():
    m = ModuliNine.of([4, 2, 3, 1, 5, 7, 2, 3, 1])
    out, s = normalize_nine(m)
    assert out.a2 == 1 and out.g0 == 1 and out.a1 == 1
    assert scale_nine(m, s) == out


def test_residual_fixes_ends():
    m = ModuliNine.of([1, 3, 2, 1, 1, 1, 5, 4, 1])
    out = scale_nine(m, residual_scale(3))
    assert out.a2 == 1 and out.g0 == 1 and out.a1 == 1


def test_normalize_undefined():
    with pytest.raises(NormalizationError, match="normalization undefined"):
        normalize_nine(ModuliNine.of([0, 1, 1, 1, 1, 1, 1, 1, 1]))
    with pytest.raises(NormalizationError, match="not a square"):
        normalize_nine(SAMPLE)


def test_equiv_fibration():
    for m in (GENERIC, SAMPLE, ModuliNine.symbolic()):
        assert equiv_fibration_check(m).holds


def test_equiv_negative_control():
    d = list(dual_nine(GENERIC).values())
    d[4] += 1
    rep = equiv_fibration_check(GENERIC, ModuliNine.of(d))
    assert not rep.holds and rep.residual


def test_rational_surface_J():
    J = rational_surface_J(SAMPLE)
    assert J.report.summary() == "4I2 + 4I1"
    assert J.report.euler_total == 12
    assert J.double_fibers["[1:0]"] == (2, 1)


def test_report_alpha_and_gamma():
    for choice in ("alpha", "gamma"):
        rep = duality_report(GENERIC, choice=choice)
        assert rep.ok(), rep.checks
        assert rep.j_jac_C == rep.j_Ehat


def test_report_sample_not_normalizable():
    rep = duality_report(SAMPLE)
    assert not rep.normalized
    assert any("not a square" in n for n in rep.notes)
    assert rep.ok()


def test_report_bad_choice():
    with pytest.raises(CHLError):
        duality_report(GENERIC, choice="beta")


def test_report_wire_is_stable():
    a = duality_report(GENERIC).to_wire()
    b = duality_report(GENERIC).to_wire()
    assert a == b
    assert a["flags"]["cert"] in ("SquareA", "SquareC", "Unknown", "Witness")
