from fractions import Fraction

import pytest

from k3isogeny.exact import UniPoly
from k3isogeny.isogeny import (
    INF,
    SingularCurve,
    IsogenyError,
    TwoTorsionCurve,
    add_points,
    ehat_to_C,
    C_to_ehat,
    iota_E,
    isogenous_curve,
    isogeny_statements,
    isogeny_statements_sampled,
    j_invariant,
    phi,
    phi_hat,
    psi,
    quartic_invariants,
    quartic_jacobian_j,
    rational_point_cert,
    torsor_C,
    torsor_Chat,
    torsor_iso_check,
    verify_point_examples,
)
from k3isogeny.symbolic import symbols

E104 = TwoTorsionCurve(1, 0, 4)


def test_all_statements_hold():
    st = isogeny_statements()
    assert len(st) >= 20
    assert all(st.values()), [k for k, v in st.items() if not v]


def test_statements_on_numeric_curve():
    assert all(isogeny_statements(TwoTorsionCurve(2, 3, -5)).values())


def test_torsor_iso():
    assert torsor_iso_check()
    assert torsor_iso_check(E104)


def test_sampled_statements():
    for name, (ok, n) in isogeny_statements_sampled(trials=20, seed=3).items():
        assert ok and n == 20, name


def test_point_examples():
    assert all(verify_point_examples().values())


def test_singular_rejected():
    for E in (TwoTorsionCurve(1, 2, 1), TwoTorsionCurve(0, 1, 1)):
        assert not E.is_smooth()
        with pytest.raises(SingularCurve):
            E.require_smooth()
    assert E104.is_smooth()


def test_isogenous_curve_examples():
    H = isogenous_curve(TwoTorsionCurve(1, 0, 1))
    assert (H.b, H.ac) == (0, -4)
    H = isogenous_curve(E104)
    assert (H.b, H.ac) == (0, -16)


def test_double_dual_is_scaling():
    a, b, c = symbols("a b c")
    E = TwoTorsionCurve(a, b, c)
    HH = isogenous_curve(isogenous_curve(E))
    assert HH.b == 4 * b
    assert HH.ac == 16 * a * c
    assert j_invariant(isogenous_curve(isogenous_curve(E104))) == j_invariant(E104)


def test_worked_points():
    P = (Fraction(2), Fraction(4))
    assert phi_hat(E104, P) == (4, 0)
    assert phi(E104, (Fraction(4), Fraction(0))) == (0, 0)
    assert iota_E(E104, P) == (2, -4)
    assert psi(E104, (Fraction(0), Fraction(2))) == (0, 0)
    assert add_points(E104, P, P) == (0, 0)
    assert phi_hat(E104, (Fraction(0), Fraction(0))) is INF
    assert iota_E(E104, INF) == (0, 0)


def test_torsors():
    assert (torsor_C(E104).q4, torsor_C(E104).q2, torsor_C(E104).q0) == (1, 0, 4)
    E = TwoTorsionCurve(4, 0, 1)
    C, D = torsor_C(E), torsor_Chat(E)
    assert (D.q4, D.q0) == (4, 1)
    assert (C.q4, C.q0) == (1, 4)


def test_torsor_map_round_trip():
    E = TwoTorsionCurve(2, 3, 5)
    H = isogenous_curve(E)
    # push a small rational point of E over to Ehat
    for x0 in range(1, 40):
        x0 = Fraction(x0)
        val = x0**3 + E.b * x0**2 + E.ac * x0
        from k3isogeny.exact import rational_sqrt
        y0 = rational_sqrt(val)
        if y0:
            Q = phi_hat(E, (x0, y0))
            assert C_to_ehat(E, ehat_to_C(E, Q)) == Q
            return
    pytest.skip("no small rational point")


def test_j_values():
    assert j_invariant(TwoTorsionCurve(1, 0, 1)) == 1728
    assert quartic_jacobian_j(1, 0, 2, 0, -1) == 128


def test_quartic_invariants_relation():
    # I and J of x^4 - 1 (q2 = 0)
    I, J = quartic_invariants(1, 0, 0, 0, -1)
    assert I == -12 and J == 0


def test_quartic_j_matches_isogenous_curve():
    for (a, b, c) in [(1, 2, -1), (3, -1, 2), (Fraction(1, 2), 5, 7)]:
        E = TwoTorsionCurve(a, b, c)
        D = torsor_Chat(E)
        assert quartic_jacobian_j(D.q4, 0, D.q2, 0, D.q0) == j_invariant(isogenous_curve(E))


def test_cert_square_a():
    t = UniPoly.gen("t")
    cert = rational_point_cert(TwoTorsionCurve(t**2, t**4 + 1, t**6 + 3))
    assert cert.kind == "SquareA" and cert.verified


def test_cert_square_c():
    cert = rational_point_cert(TwoTorsionCurve(2, 3, 9))
    assert cert.kind == "SquareC" and cert.verified


def test_cert_generic_unknown():
    t = UniPoly.gen("t")
    cert = rational_point_cert(TwoTorsionCurve(t**4 - 1, t**4, t**4 - 16))
    assert cert.kind == "Unknown" and not cert.verified
    assert cert.data["square_a"] is False and cert.data["square_c"] is False


def test_cert_four_i0star_conventions():
    t = UniPoly.gen("t")
    a = t**4 - 1
    E = TwoTorsionCurve(a, Fraction(17, 4) * a, a)
    half = Fraction(1, 2)
    # the other convention: e = -b - 2 a f^2 does not reproduce c
    bad = rational_point_cert(E, witness=(-E.b - 2 * a * half**2, half, 0), convention="minus")
    assert not bad.verified and bad.data["b_identity"] and not bad.data["c_identity"]
    good = rational_point_cert(E, witness=(Fraction(15, 4) * a, half, 0), convention="plus")
    assert good.verified and good.point_field == "base(sqrt(-1))"


def test_cert_unknown_convention():
    with pytest.raises(IsogenyError):
        rational_point_cert(E104, witness=(0, 0, 0), convention="other")
