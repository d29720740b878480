"""Constructors for the specialized families of fibrations, the six-lines
geometry, Rosenhain/Kummer moduli and a height-pairing helper."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .exact import (
    INFINITY,
    HomogPoly,
    UniPoly,
    poly_gcd,
    rat_str,
    to_rational,
)
from .fibration import (
    FibrationModel,
    base_change_cover,
    fiber_configuration,
    find_moebius,
    format_multiset,
    moebius_image,
    parse_multiset,
    place_str,
)
from .symbolic import SymPoly, var


class FamilyError(ValueError):
    pass


class GenericityError(FamilyError):
    def __init__(self, condition: str):
        super().__init__(f"genericity condition failed: {condition}")
        self.condition = condition


# form predicates


def _form(p, degree: int, var_name: str = "t") -> HomogPoly:
    if isinstance(p, HomogPoly):
        if p.degree != degree:
            raise FamilyError(f"expected a form of degree {degree}, got {p.degree}")
        return p
    if not isinstance(p, UniPoly):
        p = UniPoly.const(to_rational(p), var_name)
    return HomogPoly(p, degree)


def squarefree_form(h: HomogPoly) -> bool:
    f = h.affine
    if f.is_zero():
        return False
    if f.degree() > 0 and poly_gcd(f, f.derivative()).degree() > 0:
        return False
    return h.val_infinity() <= 1


def coprime_forms(g: HomogPoly, h: HomogPoly) -> bool:
    if g.is_zero() or h.is_zero():
        return False
    if poly_gcd(g.affine, h.affine).degree() > 0:
        return False
    return not (g.val_infinity() > 0 and h.val_infinity() > 0)


def nonconstant_form(h: HomogPoly) -> bool:
    return h.degree > 0 and not h.is_zero()


# built families

EXPECTED = {
    "Generic": {"X": "8I2 + 8I1", "Y": "8I2 + 8I1", "Z": "8I2 + 8I1"},
    "FourI4": {"X": "4I4 + 8I1", "Y": "12I2", "Z": "12I2"},
    "FourI0star": {"X": "4I0*", "Y": "4I0*", "Z": "4I0*"},
    "Kummer17": {"X": "3I0* + I4 + 2I1", "Y": "3I0* + 3I2", "Z": "3I0* + 3I2"},
    "SixLines16": {"X": "2I0* + 2I4 + 4I1", "Y": "2I0* + 6I2", "Z": "2I0* + 6I2",
                   "Zprime": "2I0* + 6I2"},
    "SixLinesSpecial2": {"X": "3I0* + I4 + 2I1", "Y": "3I0* + 3I2", "Z": "3I0* + 3I2",
                         "Zprime": "3I0* + 3I2"},
    "CHL14": {"X": "2I0* + 4I2 + 4I1", "Y": "2I0* + 4I2 + 4I1", "Z": "2I0* + 4I2 + 4I1"},
}


@dataclass
class SpecKind:
    tag: str
    params: dict

    def to_wire(self) -> dict:
        out = {}
        for k, v in self.params.items():
            if isinstance(v, HomogPoly):
                out[k] = v.to_wire()
            elif isinstance(v, UniPoly):
                out[k] = v.to_wire()
            elif isinstance(v, (int, Fraction)):
                out[k] = rat_str(Fraction(v))
            else:
                out[k] = v
        return {"family": self.tag, "params": out}


@dataclass
class BuiltFamily:
    tag: str
    X: FibrationModel
    Y: FibrationModel
    Z: FibrationModel
    Zprime: FibrationModel | None = None
    expected: dict = field(default_factory=dict)
    genericity: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def models(self) -> dict[str, FibrationModel]:
        out = {"X": self.X, "Y": self.Y, "Z": self.Z}
        if self.Zprime is not None:
            out["Zprime"] = self.Zprime
        return out

    def reports(self) -> dict:
        return {k: fiber_configuration(m) for k, m in self.models().items()}

    def check(self) -> dict[str, dict]:
        out = {}
        for name, rep in self.reports().items():
            exp = self.expected.get(name)
            obs = rep.multiset()
            out[name] = {
                "observed": format_multiset(obs),
                "expected": exp,
                "euler_total": rep.euler_total,
                "match": exp is None or parse_multiset(exp) == obs,
            }
        return out

    def ok(self) -> bool:
        return all(v["match"] for v in self.check().values())


def _generic_models(tag, a, b, c, label_prefix="") -> tuple:
    X = FibrationModel.weierstrass(a, b, c, label=f"X[{tag}]")
    Z = FibrationModel.quartic(a, b, c, label=f"Z[{tag}]")
    return X, Z


def _isog_split(tag: str, a: HomogPoly, b: HomogPoly, c: HomogPoly) -> FibrationModel:
    one = HomogPoly(UniPoly.const(1, b.var), 0)
    return FibrationModel.weierstrass(one, -2 * b, b * b - 4 * (a * c), label=f"Y[{tag}]")


def _require(checks: dict, strict: bool):
    if strict:
        for k, ok in checks.items():
            if not ok:
                raise GenericityError(k)


def build_generic(a, b, c, k: int = 2, strict: bool = True) -> BuiltFamily:
    v = next((p.var for p in (a, b, c) if isinstance(p, (UniPoly, HomogPoly))), "t")
    a, b, c = _form(a, 2 * k, v), _form(b, 4, v), _form(c, 8 - 2 * k, v)
    disc = b * b - 4 * (a * c)
    checks = {
        "a non-constant": nonconstant_form(a),
        "ac(b^2-4ac) has no repeated roots": squarefree_form(a * c * disc),
    }
    _require(checks, strict)
    X, Z = _generic_models("Generic", a, b, c)
    Y = _isog_split("Generic", a, b, c)
    return BuiltFamily("Generic", X, Y, Z, expected=dict(EXPECTED["Generic"]), genericity=checks)


def build_four_i4(a, b, strict: bool = True) -> BuiltFamily:
    v = next((p.var for p in (a, b) if isinstance(p, (UniPoly, HomogPoly))), "t")
    a, b = _form(a, 4, v), _form(b, 4, v)
    checks = {
        "a squarefree": squarefree_form(a),
        "a, b coprime": coprime_forms(a, b),
        "b^2-4a^2 squarefree": squarefree_form(b * b - 4 * (a * a)),
        "a, b^2-4a^2 coprime": coprime_forms(a, b * b - 4 * (a * a)),
    }
    _require(checks, strict)
    X, Z = _generic_models("FourI4", a, b, a)
    Y = _isog_split("FourI4", a, b, a)
    return BuiltFamily("FourI4", X, Y, Z, expected=dict(EXPECTED["FourI4"]), genericity=checks)


def build_four_i0star(a, beta, strict: bool = True) -> BuiltFamily:
    v = a.var if isinstance(a, (UniPoly, HomogPoly)) else "t"
    a = _form(a, 4, v)
    beta = to_rational(beta)
    checks = {"a squarefree of degree 4": squarefree_form(a) and a.val_infinity() == 0,
              "beta != +-1": beta not in (1, -1)}
    _require(checks, strict)
    b = (2 * beta) * a
    X, Z = _generic_models("FourI0star", a, b, a)
    Y = _isog_split("FourI0star", a, b, a)
    fam = BuiltFamily("FourI0star", X, Y, Z, expected=dict(EXPECTED["FourI0star"]),
                      genericity=checks)
    fam.data["beta"] = beta
    return fam


def _rho_family(tag: str, rho: HomogPoly, alpha: HomogPoly, beta: HomogPoly,
                with_zprime: bool) -> BuiltFamily:
    a = alpha * rho
    b = 2 * (beta * rho)
    X = FibrationModel.weierstrass(a, b, a, label=f"X[{tag}]")
    Z = FibrationModel.quartic(a, b, a, label=f"Z[{tag}]")
    Y = FibrationModel.weierstrass(2 * ((beta - alpha) * rho), -4 * (beta * rho),
                                   2 * ((beta + alpha) * rho), label=f"Y[{tag}]")
    Zp = None
    if with_zprime:
        Zp = FibrationModel.quartic(rho, b, alpha * alpha * rho, label=f"Z'[{tag}]")
    return BuiltFamily(tag, X, Y, Z, Zp)


def _rho_checks(rho, alpha, beta) -> dict:
    return {
        "rho squarefree": squarefree_form(rho),
        "alpha squarefree": squarefree_form(alpha),
        "alpha, beta coprime": coprime_forms(alpha, beta),
        "alpha, rho coprime": coprime_forms(alpha, rho),
        "beta, rho coprime": coprime_forms(beta, rho),
        "beta^2-alpha^2 squarefree": squarefree_form(beta * beta - alpha * alpha),
        "beta^2-alpha^2, alpha*rho coprime": coprime_forms(beta * beta - alpha * alpha, alpha * rho),
    }


def build_kummer17(rho, alpha, beta, strict: bool = True) -> BuiltFamily:
    v = next((p.var for p in (rho, alpha, beta) if isinstance(p, (UniPoly, HomogPoly))), "t")
    rho, alpha, beta = _form(rho, 3, v), _form(alpha, 1, v), _form(beta, 1, v)
    checks = _rho_checks(rho, alpha, beta)
    _require(checks, strict)
    fam = _rho_family("Kummer17", rho, alpha, beta, with_zprime=False)
    fam.expected = dict(EXPECTED["Kummer17"])
    fam.genericity = checks
    fam.data.update(rho=rho, alpha=alpha, beta=beta)
    return fam


def build_six_lines16(alpha, beta, rho, strict: bool = True) -> BuiltFamily:
    v = next((p.var for p in (rho, alpha, beta) if isinstance(p, (UniPoly, HomogPoly))), "t")
    rho, alpha, beta = _form(rho, 2, v), _form(alpha, 2, v), _form(beta, 2, v)
    checks = _rho_checks(rho, alpha, beta)
    _require(checks, strict)
    fam = _rho_family("SixLines16", rho, alpha, beta, with_zprime=True)
    fam.expected = dict(EXPECTED["SixLines16"])
    fam.genericity = checks
    fam.data.update(rho=rho, alpha=alpha, beta=beta)
    return fam


def build_chl14(alpha, beta, gamma, strict: bool = True) -> BuiltFamily:
    v = next((p.var for p in (alpha, beta, gamma) if isinstance(p, (UniPoly, HomogPoly))), "t")
    alpha, beta, gamma = _form(alpha, 2, v), _form(beta, 2, v), _form(gamma, 2, v)
    rho = HomogPoly(UniPoly.gen(v), 2)
    disc = beta * beta - alpha * gamma
    checks = {
        "alpha squarefree": squarefree_form(alpha),
        "gamma squarefree": squarefree_form(gamma),
        "beta^2-alpha*gamma squarefree": squarefree_form(disc),
        "alpha, gamma coprime": coprime_forms(alpha, gamma),
        "alpha*gamma, beta^2-alpha*gamma coprime": coprime_forms(alpha * gamma, disc),
        "alpha*gamma*(beta^2-alpha*gamma), t0*t1 coprime": coprime_forms(alpha * gamma * disc, rho),
    }
    _require(checks, strict)
    a, b, c = rho * alpha, 2 * (rho * beta), rho * gamma
    X = FibrationModel.weierstrass(a, b, c, label="X[CHL14]")
    Z = FibrationModel.quartic(a, b, c, label="Z[CHL14]")
    Y = _isog_split("CHL14", a, b, c)
    fam = BuiltFamily("CHL14", X, Y, Z, expected=dict(EXPECTED["CHL14"]), genericity=checks)
    fam.data.update(alpha=alpha, beta=beta, gamma=gamma, rho=rho)
    return fam


def build_spec(kind: SpecKind, strict: bool = True) -> BuiltFamily:
    p = kind.params
    if kind.tag == "Generic":
        return build_generic(p["a"], p["b"], p["c"], k=int(p.get("k", 2)), strict=strict)
    if kind.tag == "FourI4":
        return build_four_i4(p["a"], p["b"], strict=strict)
    if kind.tag == "FourI0star":
        return build_four_i0star(p["a"], p["beta"], strict=strict)
    if kind.tag == "Kummer17":
        return build_kummer17(p["rho"], p["alpha"], p["beta"], strict=strict)
    if kind.tag == "SixLines16":
        return build_six_lines16(p["alpha"], p["beta"], p["rho"], strict=strict)
    if kind.tag == "SixLinesParams":
        return build_six_lines_params(SixLinesConfig(p["a"], p["b"], p["c"], p["d"]))
    if kind.tag == "CHL14":
        return build_chl14(p["alpha"], p["beta"], p["gamma"], strict=strict)
    raise FamilyError(f"unknown family {kind.tag!r}")


# six lines


@dataclass(frozen=True)
class SixLinesConfig:
    a: Any
    b: Any
    c: Any
    d: Any

    def __post_init__(self):
        for k in "abcd":
            v = getattr(self, k)
            if not isinstance(v, SymPoly):
                object.__setattr__(self, k, to_rational(v))
        if all(not isinstance(getattr(self, k), SymPoly) for k in "abcd"):
            ls = [tuple(Fraction(x) for x in l) for l in self.lines()]
            for i, j in itertools.combinations(range(6), 2):
                if _cross(ls[i], ls[j]) == (0, 0, 0):
                    raise FamilyError(f"lines {i + 1} and {j + 1} coincide")

    def lines(self) -> list[tuple]:
        a, b, c, d = self.a, self.b, self.c, self.d
        return [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (a, b, 1), (c, d, 1)]


def _cross(u, v) -> tuple:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def _det3(u, v, w):
    cr = _cross(v, w)
    return u[0] * cr[0] + u[1] * cr[1] + u[2] * cr[2]


def six_lines_coeffs(cfg: SixLinesConfig, var_name: str = "t") -> dict[str, HomogPoly]:
    """rho, 2(beta-alpha), 2(beta+alpha), alpha, beta as forms of degree two."""
    a, b, c, d = cfg.a, cfg.b, cfg.c, cfg.d
    lin = lambda p, q: HomogPoly(UniPoly([q, p], var_name), 1)
    minus = lin(a, b) * lin(c - 1, d - 1)
    plus = lin(c, d) * lin(a - 1, b - 1)
    beta = Fraction(1, 4) * (minus + plus)
    alpha = Fraction(1, 4) * (plus - minus)
    rho = HomogPoly(UniPoly.gen(var_name), 2)
    return {"rho": rho, "two_beta_minus": minus, "two_beta_plus": plus, "alpha": alpha,
            "beta": beta}


INTERSECTION_TABLE = {
    (1, 2): lambda a, b, c, d: (0, 0, 1),
    (1, 3): lambda a, b, c, d: (0, 1, 0),
    (1, 4): lambda a, b, c, d: (0, 1, -1),
    (1, 5): lambda a, b, c, d: (0, 1, -b),
    (1, 6): lambda a, b, c, d: (0, 1, -d),
    (2, 3): lambda a, b, c, d: (1, 0, 0),
    (2, 4): lambda a, b, c, d: (1, 0, -1),
    (2, 5): lambda a, b, c, d: (1, 0, -a),
    (2, 6): lambda a, b, c, d: (1, 0, -c),
    (3, 4): lambda a, b, c, d: (1, -1, 0),
    (3, 5): lambda a, b, c, d: (b, -a, 0),
    (3, 6): lambda a, b, c, d: (d, -c, 0),
    (4, 5): lambda a, b, c, d: (b - 1, 1 - a, a - b),
    (4, 6): lambda a, b, c, d: (d - 1, 1 - c, c - d),
    (5, 6): lambda a, b, c, d: (b - d, c - a, a * d - b * c),
}


def line_intersections(cfg: SixLinesConfig) -> dict[tuple[int, int], tuple]:
    ls = cfg.lines()
    return {(i + 1, j + 1): _cross(ls[i], ls[j]) for i, j in itertools.combinations(range(6), 2)}


def _is_zero(x) -> bool:
    return x.is_zero() if isinstance(x, SymPoly) else x == 0


def projectively_equal(p, q) -> bool:
    return all(_is_zero(x) for x in _cross(p, q))


def intersection_table_check(cfg: SixLinesConfig) -> dict[tuple[int, int], bool]:
    pts = line_intersections(cfg)
    return {
        k: projectively_equal(pts[k], f(cfg.a, cfg.b, cfg.c, cfg.d))
        for k, f in INTERSECTION_TABLE.items()
    }


def no_three_concurrent(cfg: SixLinesConfig) -> bool:
    ls = cfg.lines()
    return all(_det3(*(ls[i] for i in tri)) != 0 for tri in itertools.combinations(range(6), 3))


def tangency_polynomial(cfg: SixLinesConfig):
    a, b, c, d = cfg.a, cfg.b, cfg.c, cfg.d
    return a * b * c - a * b * d - a * c * d + b * c * d + a * d - b * c


def conic_tangency(cfg: SixLinesConfig) -> bool:
    return tangency_polynomial(cfg) == 0


def _conic_matrix(alpha: Fraction):
    w = (alpha, 1 - alpha, Fraction(1))
    A = [[w[i] * w[j] for j in range(3)] for i in range(3)]
    s = 2 * alpha * (1 - alpha)
    A[0][1] -= s
    A[1][0] -= s
    return A


def _adjugate(A):
    cof = [[None] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            r = [k for k in range(3) if k != i]
            c = [k for k in range(3) if k != j]
            m = A[r[0]][c[0]] * A[r[1]][c[1]] - A[r[0]][c[1]] * A[r[1]][c[0]]
            cof[i][j] = m if (i + j) % 2 == 0 else -m
    return [[cof[j][i] for j in range(3)] for i in range(3)]


def line_tangent_to_conic(line, alpha) -> bool:
    """Tangency of a line to ``(alpha z1 + (1-alpha) z2 + z3)^2 - 4 alpha(1-alpha) z1 z2``
    through the dual conic."""
    adj = _adjugate(_conic_matrix(Fraction(alpha)))
    L = [Fraction(x) for x in line]
    return sum(L[i] * adj[i][j] * L[j] for i in range(3) for j in range(3)) == 0


def tangency_alpha_check(cfg: SixLinesConfig) -> dict:
    """Re-derive the tangency predicate through the conic parameter
    alpha = a(1-b)/(a-b)."""
    ls = cfg.lines()
    if cfg.a == cfg.b:
        return {"defined": False, "reason": "a = b"}
    alpha = cfg.a * (1 - cfg.b) / (cfg.a - cfg.b)
    if alpha in (0, 1):
        return {"defined": False, "reason": "conic degenerate (alpha in {0, 1})"}
    base = all(line_tangent_to_conic(l, alpha) for l in ls[:4])
    l5 = line_tangent_to_conic(ls[4], alpha)
    l6 = line_tangent_to_conic(ls[5], alpha)
    return {
        "defined": True,
        "alpha": alpha,
        "base_lines_tangent": base,
        "l5_tangent": l5,
        "l6_tangent": l6,
        "agrees_with_polynomial": l6 == conic_tangency(cfg),
    }


SPECIAL2 = ("a=b", "c=d", "ad-bc=0", "ad-bc=a-b-c+d")


def special2_classify(cfg: SixLinesConfig) -> set[str]:
    a, b, c, d = cfg.a, cfg.b, cfg.c, cfg.d
    tests = {
        "a=b": a == b,
        "c=d": c == d,
        "ad-bc=0": a * d - b * c == 0,
        "ad-bc=a-b-c+d": a * d - b * c == a - b - c + d,
    }
    return {k for k, v in tests.items() if v}


def six_lines_points(cfg: SixLinesConfig) -> dict[str, tuple]:
    """Points of the base line [t0:t1] over which the Y model is singular,
    as projective pairs: t0, t1 and the roots of the six linear factors of
    rho (beta^2 - alpha^2) alpha."""
    a, b, c, d = cfg.a, cfg.b, cfg.c, cfg.d
    forms = {
        "t0": (1, 0), "t1": (0, 1), "t0+t1": (1, 1),
        "a t0+b t1": (a, b), "c t0+d t1": (c, d),
        "(a-1)t0+(b-1)t1": (a - 1, b - 1), "(c-1)t0+(d-1)t1": (c - 1, d - 1),
        "(a-c)t0+(b-d)t1": (a - c, b - d),
    }
    return {k: (Fraction(q), -Fraction(p)) for k, (p, q) in forms.items()}


def six_lines_collisions(cfg: SixLinesConfig) -> list[tuple[str, str]]:
    """Pairs of linear factors with a common root (or a vanishing factor)."""
    pts = six_lines_points(cfg)
    out = []
    for (n1, p1), (n2, p2) in itertools.combinations(pts.items(), 2):
        if p1 == (0, 0) or p2 == (0, 0) or p1[0] * p2[1] - p1[1] * p2[0] == 0:
            out.append((n1, n2))
    return out


def build_six_lines_params(cfg: SixLinesConfig) -> BuiltFamily:
    co = six_lines_coeffs(cfg)
    alpha, beta, rho = co["alpha"], co["beta"], co["rho"]
    fam = _rho_family("SixLinesParams", rho, alpha, beta, with_zprime=True)
    sp = special2_classify(cfg)
    fam.genericity = dict(_rho_checks(rho, alpha, beta))
    fam.genericity["no three concurrent"] = no_three_concurrent(cfg)
    col = six_lines_collisions(cfg)
    fam.genericity["linear factors distinct"] = not col
    if sp:
        fam.expected = dict(EXPECTED["SixLinesSpecial2"])
        fam.notes.append("special2 branch: " + ", ".join(sorted(sp)))
    elif not col:
        fam.expected = dict(EXPECTED["SixLines16"])
    else:
        fam.expected = {}
        fam.notes.append("non-generic: coinciding factors " +
                         "; ".join(f"{x} ~ {y}" for x, y in col))
    fam.data.update(rho=rho, alpha=alpha, beta=beta, special2=sorted(sp),
                    tangency=conic_tangency(cfg), config=cfg, collisions=col)
    if conic_tangency(cfg):
        fam.notes.append("six lines tangent to a conic")
    return fam


def bidegree_form(cfg: SixLinesConfig) -> dict:
    """Matrices M_k with the form ``p xi eta + q eta + r xi + s`` for
    M = [[p, q], [r, s]], and the reconstruction identity
    ``X(X - 2(beta-alpha) xi)(X - 2(beta+alpha) xi) = L^2 xi eta F3 F4`` at
    ``X = L eta``, ``L = xi (a xi + b)(c xi + d)``."""
    a, b, c, d = cfg.a, cfg.b, cfg.c, cfg.d
    mats = {
        "M1": ((0, 1), (0, 0)),
        "M2": ((0, 0), (1, 0)),
        "M3": ((a, b), (1 - a, 1 - b)),
        "M4": ((c, d), (1 - c, 1 - d)),
    }
    dets = {k: m[0][0] * m[1][1] - m[0][1] * m[1][0] for k, m in mats.items()}
    xi, eta = var("xi"), var("eta")

    def lift(x):
        return x if isinstance(x, SymPoly) else SymPoly.const(x)

    A, B, C, D = (lift(x) for x in (a, b, c, d))
    L = xi * (A * xi + B) * (C * xi + D)
    minus = (A * xi + B) * ((C - 1) * xi + (D - 1))
    plus = (C * xi + D) * ((A - 1) * xi + (B - 1))
    X = L * eta
    lhs = X * (X - minus * xi) * (X - plus * xi)
    prod = SymPoly.const(1)
    for m in mats.values():
        (p, q), (r, s) = m
        prod = prod * (lift(p) * xi * eta + lift(q) * eta + lift(r) * xi + lift(s))
    rhs = L * L * prod
    return {"matrices": mats, "determinants": dets, "reconstruction": (lhs - rhs).is_zero()}


# Rosenhain and Kummer moduli


@dataclass(frozen=True)
class RosenhainTriple:
    l1: Fraction
    l2: Fraction
    l3: Fraction
    L: Fraction

    def __post_init__(self):
        ls = [to_rational(x) for x in (self.l1, self.l2, self.l3)]
        L = to_rational(self.L)
        for name, v in zip(("l1", "l2", "l3"), ls):
            object.__setattr__(self, name, v)
        object.__setattr__(self, "L", L)
        if len(set(ls)) < 3 or any(x in (0, 1) for x in ls):
            raise FamilyError("lambdas must be pairwise distinct and avoid 0, 1")
        if L * L != 4 * ls[0] * ls[1] * ls[2]:
            raise FamilyError("L^2 != 4 l1 l2 l3")


@dataclass(frozen=True)
class MuTriple:
    m1: Fraction
    m2: Fraction
    m3: Fraction

    def __post_init__(self):
        ms = [to_rational(x) for x in (self.m1, self.m2, self.m3)]
        for name, v in zip(("m1", "m2", "m3"), ms):
            object.__setattr__(self, name, v)
        if len(set(ms)) < 3:
            raise FamilyError("mu entries must be pairwise distinct")

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.m1, self.m2, self.m3)


def rosenhain_mu(r: RosenhainTriple) -> MuTriple:
    l1, l2, l3, L = r.l1, r.l2, r.l3, r.L
    return MuTriple((l1 + l2 * l3) / L, (l2 + l1 * l3) / L, (l3 + l1 * l2) / L)


def dual_mu(m: MuTriple) -> MuTriple:
    m1, m2, m3 = m.as_tuple()
    if m2 == m3:
        raise FamilyError("mu2 = mu3")
    if m1 in (1, -1):
        raise FamilyError(f"mu1 = {rat_str(m1)} (must avoid +-1)")
    d1 = (2 * m1 - m2 - m3) / (m2 - m3)
    q = 2 * (m1 - m2) * (m1 - m3) / (m2 - m3)
    return MuTriple(d1, d1 - q / (m1 + 1), d1 - q / (m1 - 1))


def kummer_forms(m: MuTriple, var_name: str = "u") -> dict[str, HomogPoly]:
    m1, m2, m3 = m.as_tuple()
    u = UniPoly.gen(var_name)
    rho = HomogPoly(u * u - 1, 3)
    alpha = HomogPoly((m2 - m3) * (u - m1), 1)
    beta = HomogPoly((2 * m1 - m2 - m3) * u + (2 * m2 * m3 - m1 * m2 - m1 * m3), 1)
    return {"rho": rho, "alpha": alpha, "beta": beta}


def kummer_degeneracy(m: MuTriple) -> list[str]:
    out = []
    for i, x in enumerate(m.as_tuple(), 1):
        if x in (1, -1):
            out.append(f"mu{i} = {rat_str(x)} is a root of rho")
    return out


def kummer_models(m: MuTriple, strict: bool = True) -> BuiltFamily:
    """X, Y, Z over [u0:u1]; Y has I2 fibers at the mu_i and I0* at +-1 and
    infinity, which needs every mu_i to avoid +-1."""
    f = kummer_forms(m)
    bad = kummer_degeneracy(m)
    if bad and strict:
        raise GenericityError("; ".join(bad))
    fam = _rho_family("Kummer17", f["rho"], f["alpha"], f["beta"], with_zprime=False)
    fam.expected = dict(EXPECTED["Kummer17"])
    fam.genericity = _rho_checks(f["rho"], f["alpha"], f["beta"])
    if bad:
        fam.expected = {}
        fam.notes.extend(bad)
    fam.data.update(mu=m, **f)
    return fam


def kummer_x_affine(m: MuTriple) -> FibrationModel:
    """``y^2 = x(x^2 + 2u x + 1) prod(u - mu_i)`` in Weierstrass form."""
    u = UniPoly.gen("u")
    K = UniPoly.from_roots(m.as_tuple(), "u")
    return FibrationModel.weierstrass(HomogPoly(K, 4), HomogPoly(2 * u * K, 4),
                                      HomogPoly(K, 4), label="X_u")


def kummer_y_affine(m: MuTriple, shift=2) -> FibrationModel:
    """``Y^2 = X(X - 2u - s)(X - 2u + s) prod(u - mu_i)`` in Weierstrass form.

    s = 2 gives the isogenous partner of ``kummer_x_affine``; s = 1 is the
    variant whose I2 fibers sit over u = +-1/2 instead of u = +-1.
    """
    u = UniPoly.gen("u")
    K = UniPoly.from_roots(m.as_tuple(), "u")
    s = to_rational(shift)
    return FibrationModel.weierstrass(HomogPoly((2 * u + s) * K, 4), HomogPoly(-4 * u * K, 4),
                                      HomogPoly((2 * u - s) * K, 4), label="Y_u")


def _pt_str(p) -> str:
    return "inf" if p is None else rat_str(p)


def kummer_duality_check(m: MuTriple) -> dict:
    """j-map comparisons: Y(mu) vs Y(dual mu), X(mu) vs the affine form built
    on the dual moduli, and Y(mu) vs its affine form on the dual moduli."""
    d = dual_mu(m)
    Ym = kummer_models(m, strict=False)
    Yd = kummer_models(d, strict=False)
    out = {"mu": [rat_str(x) for x in m.as_tuple()], "dual": [rat_str(x) for x in d.as_tuple()]}
    M = find_moebius(Ym.Y, Yd.Y)
    out["Y(mu) ~ Y(dual)"] = M is not None
    out["Y(mu) ~ Y(dual) with fiber types"] = find_moebius(Ym.Y, Yd.Y, preserve_types=True) is not None
    Mx = find_moebius(kummer_x_affine(d), Ym.X, preserve_types=True)
    out["X(mu) ~ X_u(dual)"] = Mx is not None
    if Mx is not None:
        # I0* loci of X(mu) should land on the dual moduli
        src = [None if p == INFINITY else -p[0] for p in fiber_configuration(Ym.X).locus("I0*")]
        imgs = sorted((moebius_image(Mx, p) for p in src), key=lambda x: (x is None, x))
        out["I0* images"] = [_pt_str(p) for p in imgs]
        out["I0* over dual moduli"] = sorted(x for x in imgs if x is not None) == sorted(d.as_tuple()) and None not in imgs
    My = find_moebius(kummer_y_affine(d), Ym.Y, preserve_types=True)
    out["Y(mu) ~ Y_u(dual)"] = My is not None
    shifted = kummer_y_affine(d, shift=1)
    out["Y(mu) ~ Y_u(dual), shift 1, j only"] = find_moebius(shifted, Ym.Y) is not None
    out["Y(mu) ~ Y_u(dual), shift 1, with fiber types"] = (
        find_moebius(shifted, Ym.Y, preserve_types=True) is not None
    )
    return out


def base_change_check(fam: BuiltFamily, cover: str, expected: str) -> dict:
    m = base_change_cover(fam.Y, cover)
    obs = fiber_configuration(m).multiset()
    return {"observed": format_multiset(obs), "expected": expected,
            "match": obs == parse_multiset(expected), "model": m}


# heights


def height_pairing(chi_hol: int, s1_dot_zero: int, s2_dot_zero: int, s1_dot_s2: int,
                   corrections=(), self_pairing: bool = False) -> Fraction:
    corr = sum((to_rational(c) for c in corrections), Fraction(0))
    if self_pairing:
        return 2 * chi_hol + 2 * s1_dot_zero - corr
    return chi_hol + s1_dot_zero + s2_dot_zero - s1_dot_s2 - corr


__all__ = [
    "SpecKind", "BuiltFamily", "build_spec", "SixLinesConfig", "six_lines_coeffs",
    "line_intersections", "no_three_concurrent", "conic_tangency", "special2_classify",
    "bidegree_form", "RosenhainTriple", "MuTriple", "rosenhain_mu", "dual_mu",
    "kummer_models", "height_pairing", "tangency_alpha_check", "intersection_table_check",
    "kummer_duality_check", "GenericityError", "FamilyError", "build_generic",
    "build_four_i4", "build_four_i0star", "build_kummer17", "build_six_lines16",
    "build_chl14", "build_six_lines_params", "kummer_x_affine", "kummer_y_affine",
    "base_change_check", "six_lines_collisions", "EXPECTED",
]
