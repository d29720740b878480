"""Cross-checks against sympy as an independent implementation."""

import random
from fractions import Fraction

import sympy as sp

from k3isogeny.exact import (
    UniPoly,
    gcd_free_basis,
    poly_gcd,
    rational_roots,
    squarefree_decompose,
)
from k3isogeny.isogeny import (
    TwoTorsionCurve,
    isogenous_curve,
    j_invariant,
    quartic_invariants,
    quartic_jacobian_j,
)

T = sp.Symbol("t")


def to_sympy(p: UniPoly):
    return sp.Poly([sp.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)] or [0], T, domain="QQ")


def rand_poly(rng, deg):
    roots = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(rng.randint(0, deg))]
    p = UniPoly.from_roots(roots, "t") if roots else UniPoly.const(1, "t")
    extra = UniPoly([rng.randint(-5, 5) for _ in range(rng.randint(1, 3))], "t")
    return p * (extra if not extra.is_zero() else UniPoly.const(1, "t"))


def test_gcd_matches_sympy():
    rng = random.Random(11)
    for _ in range(200):
        f, g = rand_poly(rng, 5), rand_poly(rng, 5)
        mine = poly_gcd(f, g)
        ref = sp.gcd(to_sympy(f), to_sympy(g))
        assert to_sympy(mine).monic() == ref.monic()


def test_squarefree_matches_sympy():
    rng = random.Random(12)
    for _ in range(200):
        f = rand_poly(rng, 6)
        if f.degree() < 1:
            continue
        mine = sorted((m, to_sympy(p).monic().as_expr()) for p, m in squarefree_decompose(f).factors)
        _, ref = sp.sqf_list(to_sympy(f))
        ref = sorted((m, q.monic().as_expr()) for q, m in ref)
        assert [(m, sp.expand(e)) for m, e in mine] == [(m, sp.expand(e)) for m, e in ref]


def test_gcd_free_basis_products():
    rng = random.Random(13)
    for _ in range(100):
        fs = [rand_poly(rng, 4) for _ in range(3)]
        fs = [f for f in fs if f.degree() > 0]
        basis = gcd_free_basis(fs)
        for i, p in enumerate(basis):
            for q in basis[i + 1:]:
                assert sp.gcd(to_sympy(p), to_sympy(q)).degree() == 0
        for f in fs:
            rad = sp.sqf_part(to_sympy(f)).monic()
            prod = sp.Poly(1, T, domain="QQ")
            for p in basis:
                if sp.gcd(to_sympy(p), to_sympy(f)).degree() > 0:
                    prod *= to_sympy(p)
            assert prod.monic() == rad


def test_rational_roots_match_sympy():
    rng = random.Random(14)
    for _ in range(100):
        f = rand_poly(rng, 5)
        if f.degree() < 1:
            continue
        ref = {sp.Rational(r) for r in sp.roots(to_sympy(f), filter="Q")}
        assert {sp.Rational(r.numerator, r.denominator) for r in rational_roots(f)} == ref


def test_discriminant_matches_sympy():
    rng = random.Random(15)
    x = sp.Symbol("x")
    for _ in range(50):
        a, b, c = (Fraction(rng.randint(-9, 9) or 1, rng.randint(1, 4)) for _ in range(3))
        E = TwoTorsionCurve(a, b, c)
        disc = sp.discriminant(x * (x**2 + sp.Rational(b) * x + sp.Rational(a * c)), x)
        assert 16 * disc == sp.Rational(E.discriminant())


def test_j_invariant_matches_sympy_formula():
    rng = random.Random(16)
    for _ in range(50):
        a, b, c = (Fraction(rng.randint(-9, 9) or 1, rng.randint(1, 4)) for _ in range(3))
        E = TwoTorsionCurve(a, b, c)
        if not E.is_smooth():
            continue
        B, AC = sp.Rational(b), sp.Rational(a * c)
        # generic long Weierstrass formulas with a2 = B, a4 = AC
        b2, b4, b6, b8 = 4 * B, 2 * AC, 0, -AC**2
        c4 = b2**2 - 24 * b4
        delta = -b2**2 * b8 - 8 * b4**3 - 27 * b6**2 + 9 * b2 * b4 * b6
        assert sp.Rational(j_invariant(E)) == c4**3 / delta
        H = isogenous_curve(E)
        assert sp.Rational(j_invariant(H)) == sp.Rational(j_invariant(TwoTorsionCurve(1, -2 * b, b * b - 4 * a * c)))


def test_quartic_invariants_match_classical():
    rng = random.Random(17)
    for _ in range(50):
        q = [Fraction(rng.randint(-6, 6)) for _ in range(5)]
        a, b, c, d, e = (sp.Rational(v) for v in q)
        I = 12 * a * e - 3 * b * d + c**2
        J = 72 * a * c * e + 9 * b * c * d - 27 * a * d**2 - 27 * e * b**2 - 2 * c**3
        mine = quartic_invariants(*q)
        assert (sp.Rational(mine[0]), sp.Rational(mine[1])) == (I, J)
        if 4 * I**3 - J**2 != 0:
            assert sp.Rational(quartic_jacobian_j(*q)) == 6912 * I**3 / (4 * I**3 - J**2)
