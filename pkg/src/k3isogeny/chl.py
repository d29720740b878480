"""Nine-parameter moduli of the CHL family: transpose duality, the scaling
action and its normalization, the attached elliptic and genus-one curves, the
rational elliptic surface J and the exchange of base and fiber."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .exact import HomogPoly, UniPoly, rat_str, rational_sqrt, to_rational
from .fibration import (
    FibrationModel,
    base_change_cover,
    fiber_configuration,
    swap_base_fiber,
)
from .isogeny import (
    QuarticCurve,
    TwoTorsionCurve,
    isogenous_curve,
    j_invariant,
    quartic_jacobian_j,
    rational_point_cert,
)
from .symbolic import SymPoly, SymRat, symbols, var

NAMES = ("a2", "a1", "a0", "b2", "b1", "b0", "g2", "g1", "g0")


class CHLError(ValueError):
    pass


class NormalizationError(CHLError):
    pass


def _is_zero(x) -> bool:
    if isinstance(x, (SymPoly, SymRat)):
        return x == SymRat.lift(SymPoly.const(0)) if isinstance(x, SymRat) else x.is_zero()
    return x == 0


@dataclass(frozen=True)
class ModuliNine:
    """Coefficients of ``alpha = a2 t^2 + 2 a1 t + a0`` and likewise beta (b*)
    and gamma (g*).  Entries are rationals or symbolic expressions."""

    a2: Any
    a1: Any
    a0: Any
    b2: Any
    b1: Any
    b0: Any
    g2: Any
    g1: Any
    g0: Any

    def __post_init__(self):
        for n in NAMES:
            v = getattr(self, n)
            if not isinstance(v, (SymPoly, SymRat)):
                object.__setattr__(self, n, to_rational(v))

    @classmethod
    def of(cls, values) -> "ModuliNine":
        values = list(values)
        if len(values) != 9:
            raise CHLError("need nine moduli")
        return cls(*values)

    @classmethod
    def symbolic(cls) -> "ModuliNine":
        return cls(*symbols(" ".join(NAMES)))

    def values(self) -> tuple:
        return tuple(getattr(self, n) for n in NAMES)

    def rows(self) -> tuple[tuple, tuple, tuple]:
        v = self.values()
        return v[0:3], v[3:6], v[6:9]

    def is_numeric(self) -> bool:
        return all(isinstance(v, Fraction) for v in self.values())

    def quadratics(self, var_name: str = "t") -> tuple[HomogPoly, HomogPoly, HomogPoly]:
        if not self.is_numeric():
            raise CHLError("quadratics need numeric moduli")
        return tuple(HomogPoly(UniPoly([r[2], 2 * r[1], r[0]], var_name), 2) for r in self.rows())

    @classmethod
    def from_quadratics(cls, alpha: UniPoly, beta: UniPoly, gamma: UniPoly) -> "ModuliNine":
        vals = []
        for q in (alpha, beta, gamma):
            if q.degree() > 2:
                raise CHLError("quadratics must have degree at most two")
            vals += [q[2], q[1] / 2, q[0]]
        return cls(*vals)

    def swap_alpha_gamma(self) -> "ModuliNine":
        v = self.values()
        return ModuliNine(*v[6:9], *v[3:6], *v[0:3])

    def __eq__(self, other) -> bool:
        if not isinstance(other, ModuliNine):
            return NotImplemented
        return all(_eq(x, y) for x, y in zip(self.values(), other.values()))

    __hash__ = None

    def to_wire(self) -> dict:
        return {n: (rat_str(v) if isinstance(v, Fraction) else str(v)) for n, v in zip(NAMES, self.values())}


def _eq(x, y) -> bool:
    if isinstance(x, (SymPoly, SymRat)) or isinstance(y, (SymPoly, SymRat)):
        return SymRat.lift(x) == SymRat.lift(y)
    return x == y


@dataclass(frozen=True)
class ScaleTriple:
    lam: Any
    mu: Any
    nu: Any

    def __post_init__(self):
        for n in ("lam", "mu", "nu"):
            v = getattr(self, n)
            if not isinstance(v, (SymPoly, SymRat)):
                v = to_rational(v)
                object.__setattr__(self, n, v)
            if _is_zero(v):
                raise CHLError(f"scale component {n} must be nonzero")

    def __mul__(self, other: "ScaleTriple") -> "ScaleTriple":
        return ScaleTriple(self.lam * other.lam, self.mu * other.mu, self.nu * other.nu)

    def inverse(self) -> "ScaleTriple":
        return ScaleTriple(1 / self.lam, 1 / self.mu, 1 / self.nu)

    def to_wire(self) -> dict:
        return {n: (rat_str(getattr(self, n)) if isinstance(getattr(self, n), Fraction) else str(getattr(self, n)))
                for n in ("lam", "mu", "nu")}


def dual_nine(m: ModuliNine) -> ModuliNine:
    """Transpose of the coefficient array."""
    r = m.rows()
    return ModuliNine(*(r[i][j] for j in range(3) for i in range(3)))


def scale_weights(s: ScaleTriple) -> tuple:
    l, mu, nu = s.lam, s.mu, s.nu
    if isinstance(l, (SymPoly, SymRat)) or isinstance(mu, (SymPoly, SymRat)) or isinstance(nu, (SymPoly, SymRat)):
        l, mu, nu = SymRat.lift(l), SymRat.lift(mu), SymRat.lift(nu)
    return (
        l * mu * nu, l * mu, l * mu / nu,
        l * nu, l, l / nu,
        l * nu / mu, l / mu, l / (mu * nu),
    )


def scale_nine(m: ModuliNine, s: ScaleTriple) -> ModuliNine:
    return ModuliNine(*(w * v for w, v in zip(scale_weights(s), m.values())))


def residual_scale(nu) -> ScaleTriple:
    """The one-parameter subgroup fixing a2 = g0 = 1."""
    nu = to_rational(nu)
    return ScaleTriple(1, 1 / nu, nu)


def normalize_nine(m: ModuliNine, fix_a1: bool = True) -> tuple[ModuliNine, ScaleTriple]:
    """Scale to a2 = g0 = 1 and, when a1 != 0, use the residual symmetry to
    set a1 = 1.  Needs a2 * g0 to be a square in Q."""
    if not m.is_numeric():
        raise CHLError("normalization needs numeric moduli")
    if m.a2 == 0 or m.g0 == 0:
        raise NormalizationError("normalization undefined: a2 = 0 or g0 = 0 (t0 t1 divides alpha or gamma)")
    if m.a2 == 1 and m.g0 == 1 and (not fix_a1 or m.a1 in (0, 1)):
        return m, ScaleTriple(1, 1, 1)
    root = rational_sqrt(1 / (m.a2 * m.g0))
    if root is None:
        raise NormalizationError(
            f"normalization undefined over Q: a2*g0 = {rat_str(m.a2 * m.g0)} is not a square"
        )
    lam = root
    s = ScaleTriple(lam, 1 / (lam * m.a2), 1)
    out = scale_nine(m, s)
    if fix_a1 and out.a1 not in (0, 1):
        r = residual_scale(out.a1)
        out = scale_nine(out, r)
        s = s * r
    return out, s


def dual_scale_commutation(m: ModuliNine, s: ScaleTriple) -> bool:
    """dual(scale(m, (l, mu, nu))) == scale(dual(m), (l, nu, mu))."""
    swapped = ScaleTriple(s.lam, s.nu, s.mu)
    return dual_nine(scale_nine(m, s)) == scale_nine(dual_nine(m), swapped)


# curves


@dataclass
class CHLCurves:
    C_alpha: QuarticCurve
    C_gamma: QuarticCurve
    E_alpha: TwoTorsionCurve
    E_gamma: TwoTorsionCurve
    Ehat_alpha: TwoTorsionCurve
    Ehat_gamma: TwoTorsionCurve


def _e_of(q2, q1, q0) -> TwoTorsionCurve:
    return TwoTorsionCurve(q2, 2 * q1, q0)


def displayed_ehat(q2, q1, q0) -> TwoTorsionCurve:
    """``Y^2 = X(X^2 - 4 q1 X + 4(q1^2 - q2 q0))``."""
    return TwoTorsionCurve(1, -4 * q1, 4 * (q1 * q1 - q2 * q0))


def chl_curves(m: ModuliNine) -> CHLCurves:
    (a2, a1, a0), _, (g2, g1, g0) = m.rows()
    Ea, Eg = _e_of(a2, a1, a0), _e_of(g2, g1, g0)
    for name, E in (("E_alpha", Ea), ("E_gamma", Eg)):
        if not E.is_smooth():
            raise CHLError(f"{name} is singular")
    return CHLCurves(
        QuarticCurve(a2, 2 * a1, a0), QuarticCurve(g2, 2 * g1, g0),
        Ea, Eg, isogenous_curve(Ea), isogenous_curve(Eg),
    )


# rational elliptic surface J


@dataclass
class RationalSurfaceJ:
    model: FibrationModel
    report: Any
    double_fibers: dict

    def to_wire(self) -> dict:
        return {
            "model": self.model.to_wire(),
            "fibers": self.report.to_wire(),
            "double_fibers": {
                k: {"b": rat_str(v[0]), "ac": rat_str(v[1])} for k, v in self.double_fibers.items()
            },
        }


def rational_surface_J(m: ModuliNine) -> RationalSurfaceJ:
    """``y^2 = x(x^2 + 2 beta x + alpha gamma)`` with quadratic coefficients;
    the fibers over t = infinity ([1:0]) and t = 0 ([0:1]) are returned as
    (b, ac) pairs."""
    alpha, beta, gamma = m.quadratics()
    model = FibrationModel(
        "WeierstrassTwoTorsion", alpha, 2 * beta, gamma, n=1, label="J"
    )
    rep = fiber_configuration(model)
    dbl = {
        "[1:0]": (2 * m.b2, m.a2 * m.g2),
        "[0:1]": (2 * m.b0, m.a0 * m.g0),
    }
    return RationalSurfaceJ(model, rep, dbl)


# models over the base


def chl_models(m: ModuliNine, strict: bool = True):
    from .families import build_chl14

    alpha, beta, gamma = m.quadratics()
    return build_chl14(alpha, beta, gamma, strict=strict)


def tilde_models(m: ModuliNine) -> dict[str, FibrationModel]:
    """X~, Y~ and Z~ over [s0:s1], pulled back along s -> s^2."""
    alpha, beta, gamma = (HomogPoly(q.affine.compose(UniPoly([0, 0, 1], "s")).with_var("s"), 4)
                          for q in (HomogPoly(h.affine.with_var("s"), 2) for h in m.quadratics()))
    X = FibrationModel.weierstrass(alpha, 2 * beta, gamma, label="X~")
    Z = FibrationModel.quartic(alpha, 2 * beta, gamma, label="Z~")
    one = HomogPoly(UniPoly.const(1, "s"), 0)
    Y = FibrationModel.weierstrass(one, -4 * beta, 4 * (beta * beta - alpha * gamma), label="Y~")
    return {"X": X, "Y": Y, "Z": Z}


def _ztilde_poly(m: ModuliNine) -> SymPoly:
    """``alpha(s^2) U^4 + 2 beta(s^2) U^2 W^2 + gamma(s^2) W^4`` in s0, s1, U, W."""
    s0, s1, U, W = var("s0"), var("s1"), var("U"), var("W")

    def lift(x):
        return x if isinstance(x, SymPoly) else SymPoly.const(x)

    def quad(r):
        return lift(r[0]) * s0**4 + 2 * lift(r[1]) * s0**2 * s1**2 + lift(r[2]) * s1**4

    ra, rb, rg = m.rows()
    return quad(ra) * U**4 + 2 * quad(rb) * U**2 * W**2 + quad(rg) * W**4


def _xtilde_swapped_poly(m: ModuliNine) -> SymPoly:
    """``x(alpha(s^2) x^2 + 2 beta(s^2) x + gamma(s^2))`` at x -> t, s -> U
    (affine s1 = 1), as a polynomial in t and U."""
    t, U = var("t"), var("U")

    def lift(x):
        return x if isinstance(x, SymPoly) else SymPoly.const(x)

    def quad(r):
        return lift(r[0]) * U**4 + 2 * lift(r[1]) * U**2 + lift(r[2])

    ra, rb, rg = m.rows()
    return t * (quad(ra) * t * t + 2 * quad(rb) * t + quad(rg))


def _z_poly(m: ModuliNine) -> SymPoly:
    """``t alpha(t) U^4 + 2 t beta(t) U^2 + t gamma(t)`` (affine t1 = W = 1)."""
    t, U = var("t"), var("U")

    def lift(x):
        return x if isinstance(x, SymPoly) else SymPoly.const(x)

    def quad(r):
        return lift(r[0]) * t * t + 2 * lift(r[1]) * t + lift(r[2])

    ra, rb, rg = m.rows()
    return t * quad(ra) * U**4 + 2 * t * quad(rb) * U**2 + t * quad(rg)


@dataclass
class EquivReport:
    holds: bool
    ztilde_swap: bool
    xtilde_to_z: bool
    residual: str = ""
    numeric_swap: bool | None = None

    def to_wire(self) -> dict:
        return {
            "holds": self.holds,
            "ztilde_swap_matches_dual": self.ztilde_swap,
            "xtilde_second_fibration_matches_dual_z": self.xtilde_to_z,
            "numeric_swap_base_fiber": self.numeric_swap,
            "residual": self.residual,
        }


def equiv_fibration_check(m: ModuliNine, dual: ModuliNine | None = None) -> EquivReport:
    """Exchange of base and fiber: Z~(m) with (s0, s1) and (U, W) swapped is
    Z~(dual m), and X~(m) read as a fibration over x is Z(dual m).

    ``dual`` defaults to ``dual_nine(m)``; passing a perturbed tuple gives a
    negative control.
    """
    d = dual if dual is not None else dual_nine(m)
    zt = _ztilde_poly(m).rename({"s0": "U", "s1": "W", "U": "s0", "W": "s1"})
    diff1 = zt - _ztilde_poly(d)
    ok1 = diff1.is_zero()
    diff2 = _xtilde_swapped_poly(m) - _z_poly(d)
    ok2 = diff2.is_zero()
    numeric = None
    if m.is_numeric() and d.is_numeric():
        try:
            sw = swap_base_fiber(tilde_models(m)["Z"], new_var="s")
            target = tilde_models(d)["Z"]
            numeric = (sw.a == target.a and sw.b == target.b and sw.c == target.c
                       and sw.kind == target.kind)
        except ValueError:
            numeric = False
    residual = ""
    if not ok1:
        residual = f"Z~ swap residual: {diff1}"
    elif not ok2:
        residual = f"X~ residual: {diff2}"
    holds = ok1 and ok2 and numeric is not False
    return EquivReport(holds, ok1, ok2, residual, numeric)


# duality report


def displayed_j_formula(a0) -> Fraction:
    """``(1/27)(2 a0 - 4)^3 / (a0^2 (a0 - 1))``."""
    a0 = to_rational(a0)
    return Fraction(1, 27) * (2 * a0 - 4) ** 3 / (a0 * a0 * (a0 - 1))


@dataclass
class CHLReport:
    choice: str
    moduli: ModuliNine
    normalized: bool
    scale: ScaleTriple | None
    E: TwoTorsionCurve
    C: QuarticCurve
    Ehat: TwoTorsionCurve
    J: RationalSurfaceJ
    j_E: Fraction
    j_Ehat: Fraction
    j_jac_C: Fraction
    checks: dict
    j_formula: dict
    cert: Any
    notes: list = field(default_factory=list)

    def ok(self) -> bool:
        return all(self.checks.values())

    def to_wire(self) -> dict:
        def curve(E):
            return {"a": rat_str(E.a), "b": rat_str(E.b), "c": rat_str(E.c)}

        return {
            "choice": self.choice,
            "moduli": self.moduli.to_wire(),
            "normalized": self.normalized,
            "scale": self.scale.to_wire() if self.scale else None,
            "E": curve(self.E),
            "marked_subgroup": ["sigma = O", "tau = (0,0)"],
            "C": {"q4": rat_str(self.C.q4), "q2": rat_str(self.C.q2), "q0": rat_str(self.C.q0)},
            "Ehat": curve(self.Ehat),
            "J": self.J.to_wire(),
            "j": {"E": rat_str(self.j_E), "Ehat": rat_str(self.j_Ehat),
                  "Jac(C)": rat_str(self.j_jac_C)},
            "checks": self.checks,
            "flags": {
                "j_formula_match": self.j_formula.get("match"),
                "cert": self.cert.kind,
            },
            "j_formula": {k: (rat_str(v) if isinstance(v, Fraction) else v)
                          for k, v in self.j_formula.items()},
            "notes": self.notes,
        }


def duality_report(m: ModuliNine, choice: str = "alpha", normalize: bool = True) -> CHLReport:
    """Curve E_choice with its marked subgroup, the torsor C_choice, the
    isogenous curve, and the surface J over the dual moduli in which E_choice
    appears as the fiber over [1:0] (alpha) or [0:1] (gamma)."""
    if choice not in ("alpha", "gamma"):
        raise CHLError(f"choice must be alpha or gamma, not {choice!r}")
    notes = []
    scale = None
    normalized = False
    if normalize:
        try:
            m, scale = normalize_nine(m)
            normalized = True
        except NormalizationError as exc:
            notes.append(f"{exc}; report uses the given representative")
    work = m if choice == "alpha" else m.swap_alpha_gamma()
    q2, q1, q0 = work.rows()[0]
    E = _e_of(q2, q1, q0)
    if not E.is_smooth():
        raise CHLError(f"E_{choice} is singular")
    C = QuarticCurve(q2, 2 * q1, q0)
    Ehat = isogenous_curve(E)
    J = rational_surface_J(dual_nine(m))
    fiber = J.double_fibers["[1:0]" if choice == "alpha" else "[0:1]"]
    j_E, j_Ehat = j_invariant(E), j_invariant(Ehat)
    j_C = quartic_jacobian_j(q2, 0, 2 * q1, 0, q0)
    disp = displayed_ehat(q2, q1, q0)
    checks = {
        "Ehat = isogenous_curve(E)": (Ehat.b, Ehat.ac) == (disp.b, disp.ac),
        "j(Jac(C)) = j(Ehat)": j_C == j_Ehat,
        "double fiber of J = E": fiber == (E.b, E.ac),
    }
    jf: dict = {"standard": j_E}
    if normalized and q2 == 1 and q1 == 1 and q0 not in (0, 1):
        jf["displayed_formula"] = displayed_j_formula(q0)
        jf["match"] = jf["displayed_formula"] == j_E
    else:
        jf["displayed_formula"] = None
        jf["match"] = None
        jf["note"] = "displayed formula applies with a2 = a1 = 1"
    cert = rational_point_cert(E)
    return CHLReport(choice, m, normalized, scale, E, C, Ehat, J, j_E, j_Ehat, j_C,
                     checks, jf, cert, notes)


__all__ = [
    "ModuliNine", "ScaleTriple", "dual_nine", "scale_nine", "normalize_nine",
    "chl_curves", "rational_surface_J", "equiv_fibration_check", "duality_report",
    "CHLReport", "dual_scale_commutation", "residual_scale", "tilde_models",
    "NormalizationError", "CHLError", "displayed_j_formula",
]
