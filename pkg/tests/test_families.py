from fractions import Fraction

import pytest

from k3isogeny.exact import UniPoly
from k3isogeny.families import (
    EXPECTED,
    FamilyError,
    GenericityError,
    MuTriple,
    RosenhainTriple,
    SixLinesConfig,
    base_change_check,
    bidegree_form,
    build_chl14,
    build_four_i0star,
    build_four_i4,
    build_generic,
    build_kummer17,
    build_six_lines_params,
    conic_tangency,
    dual_mu,
    height_pairing,
    intersection_table_check,
    kummer_degeneracy,
    kummer_duality_check,
    kummer_models,
    no_three_concurrent,
    rosenhain_mu,
    six_lines_collisions,
    special2_classify,
)
from k3isogeny.fibration import format_multiset, fiber_configuration

t = UniPoly.gen("t")


def _ok(fam):
    chk = fam.check()
    assert all(v["match"] for v in chk.values()), chk
    assert all(v["euler_total"] == 24 for v in chk.values())


def test_generic():
    _ok(build_generic(t**4 - 1, t**4, t**4 - 16))


def test_generic_rejects_repeated_root():
    with pytest.raises(GenericityError):
        build_generic((t - 1) ** 2 * (t + 1) ** 2, t**4, t**4 - 16)


def test_four_i4():
    _ok(build_four_i4(t * (t - 1) * (t - 2) * (t - 3), t**4 + 1))


def test_four_i0star():
    _ok(build_four_i0star(t**4 - 1, Fraction(17, 8)))
    with pytest.raises(GenericityError):
        build_four_i0star(t**4 - 1, 1)


def test_kummer17():
    _ok(build_kummer17(t * (t - 1) * (t + 1), t - 2, t - 3))


def test_chl14_generic_and_sample():
    _ok(build_chl14(t**2 + 1, t**2 + t + 3, 2 * t**2 + t + 1))
    with pytest.raises(GenericityError):
        build_chl14(t**2 + 1, t**2 + t + 3, t**2 + 2)
    fam = build_chl14(t**2 + 1, t**2 + t + 3, t**2 + 2, strict=False)
    assert fiber_configuration(fam.X).summary() == "I1* + I0* + 4I2 + 3I1"


def test_six_lines_generic():
    cfg = SixLinesConfig(2, 3, 5, 11)
    assert no_three_concurrent(cfg)
    assert not conic_tangency(cfg)
    assert all(intersection_table_check(cfg).values())
    assert six_lines_collisions(cfg) == []
    _ok(build_six_lines_params(cfg))


def test_six_lines_2357_collision():
    cfg = SixLinesConfig(2, 3, 5, 7)
    assert six_lines_collisions(cfg)
    fam = build_six_lines_params(cfg)
    assert fiber_configuration(fam.X).summary() == "2I0* + 2I4 + I2 + 2I1"


def test_six_lines_special2():
    cfg = SixLinesConfig(2, 2, 5, 7)
    assert special2_classify(cfg)
    fam = build_six_lines_params(cfg)
    assert fiber_configuration(fam.Y).summary() == EXPECTED["SixLinesSpecial2"]["Y"]


def test_six_lines_tangent():
    assert conic_tangency(SixLinesConfig(2, 3, 5, -15))


def test_coincident_lines_rejected():
    with pytest.raises(FamilyError):
        SixLinesConfig(1, 1, 1, 1)


def test_bidegree_reconstruction():
    out = bidegree_form(SixLinesConfig(2, 3, 5, 11))
    assert out["reconstruction"]
    dets = out["determinants"]
    assert dets["M1"] == dets["M2"] == 0
    assert dets["M3"] == 2 - 3 and dets["M4"] == 5 - 11


def test_rosenhain_mu():
    r = RosenhainTriple(2, 3, 6, 12)
    mu = rosenhain_mu(r)
    assert mu.as_tuple() == (Fraction(20, 12), Fraction(15, 12), Fraction(12, 12))
    with pytest.raises(FamilyError):
        RosenhainTriple(2, 3, 6, 11)
    with pytest.raises(FamilyError):
        RosenhainTriple(1, 3, 6, 12)


def test_kummer_degenerate_mu():
    mu = MuTriple(Fraction(5, 3), Fraction(5, 4), 1)
    assert kummer_degeneracy(mu)
    with pytest.raises(GenericityError):
        kummer_models(mu)


def test_kummer_generic_mu():
    mu = MuTriple(Fraction(37, 12), Fraction(17, 8), Fraction(5, 4))
    _ok(kummer_models(mu))
    d = dual_mu(mu)
    _ok(kummer_models(d))
    chk = kummer_duality_check(mu)
    assert chk["Y(mu) ~ Y(dual)"]
    assert chk["X(mu) ~ X_u(dual)"] and chk["I0* over dual moduli"]
    assert chk["Y(mu) ~ Y_u(dual)"]
    # the shift-1 display matches j but not the fiber types
    assert chk["Y(mu) ~ Y_u(dual), shift 1, j only"]
    assert not chk["Y(mu) ~ Y_u(dual), shift 1, with fiber types"]


def test_dual_mu_rejects_unit():
    with pytest.raises(FamilyError):
        dual_mu(MuTriple(1, 2, 3))


def test_base_change():
    fam = build_six_lines_params(SixLinesConfig(2, 3, 5, 11))
    assert base_change_check(fam, "Square", "12I2")["match"]


def test_height_pairing():
    assert height_pairing(2, 0, 0, 0, corrections=[Fraction(1, 2)] * 6, self_pairing=True) == 1
    assert height_pairing(2, 0, 0, 2) == 0
