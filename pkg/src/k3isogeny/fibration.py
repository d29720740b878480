"""Elliptic and genus-one fibrations over the projective line with base
coordinate ``[t0:t1]``, stored through affine polynomials in ``t = t0/t1``.

A model is either ``y^2 = x(x^2 + b x + a c)`` (Weierstrass with the
two-torsion section tau = (0, 0)) or the quartic ``V^2 = q4 U^4 + q2 U^2 W^2 +
q0 W^4``.  A quartic model is classified through its Jacobian, which is the
isogenous Weierstrass model ``Y^2 = X(X^2 - 2 q2 X + q2^2 - 4 q4 q0)``.

The surface index n fixes the degree bookkeeping: b has degree 2n and a c has
degree 4n, so n = 2 is a K3 surface (Euler number 24) and n = 1 a rational
elliptic surface (Euler number 12).
"""

from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .exact import (
    INFINITY,
    ExactError,
    HomogPoly,
    RatFunc,
    UniPoly,
    gcd_free_basis,
    poly_gcd,
    rat_str,
    split_rational_roots,
    valuation_at,
)
from .symbolic import CurveSpec, PointMap, SymPoly, SymRat, lands_on, var

WEIERSTRASS = "WeierstrassTwoTorsion"
QUARTIC = "QuarticGenusOne"


class FibrationError(ValueError):
    pass


class ClassificationError(FibrationError):
    pass


@dataclass(frozen=True)
class FibrationModel:
    kind: str
    a: HomogPoly
    b: HomogPoly
    c: HomogPoly
    n: int = 2
    label: str = ""

    def __post_init__(self):
        if self.kind not in (WEIERSTRASS, QUARTIC):
            raise FibrationError(f"unknown model kind {self.kind}")
        vs = {self.a.var, self.b.var, self.c.var}
        if len(vs) != 1:
            raise FibrationError(f"coefficients use different variables {sorted(vs)}")
        if self.b.degree != 2 * self.n:
            raise FibrationError(f"b must have declared degree {2 * self.n}")
        if self.a.degree + self.c.degree != 4 * self.n:
            raise FibrationError(f"deg a + deg c must equal {4 * self.n}")
        if self.a.is_zero() or self.c.is_zero():
            raise FibrationError("a and c must be nonzero")

    @property
    def var(self) -> str:
        return self.b.var

    @property
    def k(self) -> int | None:
        return self.a.degree // 2 if self.a.degree % 2 == 0 else None

    @classmethod
    def weierstrass(cls, a, b, c, degrees=None, n: int = 2, label: str = "") -> "FibrationModel":
        return cls(WEIERSTRASS, *_forms(a, b, c, degrees, n), n=n, label=label)

    @classmethod
    def quartic(cls, q4, q2, q0, degrees=None, n: int = 2, label: str = "") -> "FibrationModel":
        return cls(QUARTIC, *_forms(q4, q2, q0, degrees, n), n=n, label=label)

    def ac(self) -> HomogPoly:
        return self.a * self.c

    def disc_factor(self) -> HomogPoly:
        return self.b * self.b - 4 * (self.a * self.c)

    def jacobian(self) -> "FibrationModel":
        """The Weierstrass model carrying the fiber types."""
        if self.kind == WEIERSTRASS:
            return self
        return isogenous_model(self, label=f"Jac({self.label})")

    def to_wire(self) -> dict:
        names = ("a", "b", "c") if self.kind == WEIERSTRASS else ("q4", "q2", "q0")
        return {
            "kind": self.kind,
            "label": self.label,
            "n": self.n,
            names[0]: self.a.to_wire(),
            names[1]: self.b.to_wire(),
            names[2]: self.c.to_wire(),
        }


def _forms(a, b, c, degrees, n) -> tuple[HomogPoly, HomogPoly, HomogPoly]:
    vals = []
    var_name = next((p.var for p in (a, b, c) if isinstance(p, (UniPoly, HomogPoly))), "t")
    for p in (a, b, c):
        if isinstance(p, HomogPoly):
            vals.append(p)
        elif isinstance(p, UniPoly):
            vals.append(p)
        else:
            vals.append(UniPoly.const(p, var_name))
    if degrees is None:
        db = 2 * n
        da = vals[0].degree if isinstance(vals[0], HomogPoly) else None
        if da is None:
            da = max(vals[0].degree(), 0)
            da += da % 2
        degrees = (da, db, 4 * n - da)
    out = []
    for p, d in zip(vals, degrees):
        out.append(p if isinstance(p, HomogPoly) else HomogPoly(p, d))
    return out[0], out[1], out[2]


def isogenous_model(m: FibrationModel, label: str = "") -> FibrationModel:
    """``Y^2 = X(X^2 - 2b X + b^2 - 4ac)`` split as a = 1."""
    one = HomogPoly(UniPoly.const(1, m.var), 0)
    return FibrationModel(WEIERSTRASS, one, -2 * m.b, m.disc_factor(), n=m.n, label=label)


def invariants_c4c6delta(m: FibrationModel) -> tuple[HomogPoly, HomogPoly, HomogPoly]:
    w = m.jacobian()
    b, ac = w.b, w.a * w.c
    c4 = 16 * (b * b - 3 * ac)
    c6 = -32 * b * (2 * (b * b) - 9 * ac)
    d = 16 * (ac * ac) * (b * b - 4 * ac)
    if d.is_zero():
        raise FibrationError("discriminant vanishes identically")
    return c4, c6, d


# Kodaira types


@dataclass(frozen=True, order=True)
class KodairaType:
    tag: str
    n: int = 0

    def __str__(self) -> str:
        if self.tag == "I":
            return f"I{self.n}"
        if self.tag == "Istar":
            return f"I{self.n}*"
        return {"IVstar": "IV*", "IIIstar": "III*", "IIstar": "II*"}.get(self.tag, self.tag)

    def euler(self) -> int:
        if self.tag == "I":
            return self.n
        if self.tag == "Istar":
            return self.n + 6
        return {"II": 2, "III": 3, "IV": 4, "IVstar": 8, "IIIstar": 9, "IIstar": 10}[self.tag]

    def j_pole(self) -> int:
        return self.n if self.tag in ("I", "Istar") else 0

    @classmethod
    def parse(cls, s: str) -> "KodairaType":
        s = s.strip()
        named = {"II": "II", "III": "III", "IV": "IV", "IV*": "IVstar", "III*": "IIIstar",
                 "II*": "IIstar"}
        if s in named:
            return cls(named[s])
        if s.startswith("I"):
            body = s[1:]
            if body.endswith("*"):
                return cls("Istar", int(body[:-1]))
            return cls("I", int(body))
        raise ValueError(f"not a Kodaira symbol: {s}")


@dataclass(frozen=True)
class LocalInvariants:
    v_c4: int
    v_c6: int
    v_delta: int
    twists_applied: int = 0


def classify_valuations(v4: int, v6: int, vd: int) -> tuple[LocalInvariants, KodairaType]:
    """Minimalize and read the Kodaira type off the valuation table."""
    tw = 0
    while v4 >= 4 and v6 >= 6 and vd >= 12:
        v4, v6, vd = v4 - 4, v6 - 6, vd - 12
        tw += 1
    inv = LocalInvariants(v4, v6, vd, tw)
    if vd == 0:
        return inv, KodairaType("I", 0)
    if v4 == 0:
        if v6 != 0:
            raise ClassificationError(f"inconsistent valuations {(v4, v6, vd)}")
        return inv, KodairaType("I", vd)
    if vd == 2 and v6 == 1:
        return inv, KodairaType("II")
    if vd == 3 and v4 == 1 and v6 >= 2:
        return inv, KodairaType("III")
    if vd == 4 and v4 >= 2 and v6 == 2:
        return inv, KodairaType("IV")
    if vd == 6 and v4 >= 2 and v6 >= 3:
        return inv, KodairaType("Istar", 0)
    if vd > 6 and v4 == 2 and v6 == 3:
        return inv, KodairaType("Istar", vd - 6)
    if vd == 8 and v4 >= 3 and v6 == 4:
        return inv, KodairaType("IVstar")
    if vd == 9 and v4 == 3 and v6 >= 5:
        return inv, KodairaType("IIIstar")
    if vd == 10 and v4 >= 4 and v6 == 5:
        return inv, KodairaType("IIstar")
    raise ClassificationError(f"valuation triple {(v4, v6, vd)} outside the Kodaira table")


# places


def place_str(p) -> str:
    return "inf" if p == INFINITY else str(p)


def place_degree(p) -> int:
    return 1 if p == INFINITY else p.degree()


def _val(h: HomogPoly, p) -> int:
    if p == INFINITY:
        return h.val_infinity()
    return valuation_at(h.affine, p)


def place_basis(m: FibrationModel) -> list[UniPoly]:
    """Refined gcd-free basis of {a, c, b^2-4ac, c4, c6, Delta}."""
    w = m.jacobian()
    c4, c6, d = invariants_c4c6delta(m)
    fam = [w.a, w.c, w.disc_factor(), c4, c6, d]
    if m.kind == QUARTIC:
        fam += [m.a, m.c, m.b]
    polys = [h.affine for h in fam if not h.is_zero() and h.affine.degree() > 0]
    return split_rational_roots(gcd_free_basis(polys))


def places(m: FibrationModel) -> list:
    """Places carrying singular fibers: finite ones ordered by degree and
    coefficients, then infinity."""
    _, _, d = invariants_c4c6delta(m)
    out: list = [p for p in place_basis(m) if valuation_at(d.affine, p) > 0]
    c4, c6, _ = invariants_c4c6delta(m)
    v = (_val_or_big(c4, INFINITY), _val_or_big(c6, INFINITY), d.val_infinity())
    if classify_valuations(*v)[0].v_delta > 0:
        out.append(INFINITY)
    return out


_BIG = 10**6


def _val_or_big(h: HomogPoly, p) -> int:
    if h.is_zero():
        return _BIG
    return _val(h, p)


def local_kodaira(m: FibrationModel, p) -> tuple[LocalInvariants, KodairaType]:
    c4, c6, d = invariants_c4c6delta(m)
    return classify_valuations(_val_or_big(c4, p), _val_or_big(c6, p), _val(d, p))


@dataclass
class FiberEntry:
    place: Any
    degree: int
    invariants: LocalInvariants
    kodaira: KodairaType
    extra: dict = field(default_factory=dict)

    def to_wire(self) -> dict:
        return {
            "place": place_str(self.place),
            "degree": self.degree,
            "v_c4": self.invariants.v_c4 if self.invariants.v_c4 < _BIG // 2 else "inf",
            "v_c6": self.invariants.v_c6 if self.invariants.v_c6 < _BIG // 2 else "inf",
            "v_delta": self.invariants.v_delta,
            "twists": self.invariants.twists_applied,
            "type": str(self.kodaira),
        }


@dataclass
class FiberReport:
    model: FibrationModel
    entries: list[FiberEntry]
    euler_total: int

    def multiset(self) -> Counter:
        """Fiber types counted over geometric points."""
        out: Counter = Counter()
        for e in self.entries:
            if e.kodaira != KodairaType("I", 0):
                out[str(e.kodaira)] += e.degree
        return out

    def summary(self) -> str:
        return format_multiset(self.multiset())

    def locus(self, type_str: str) -> list:
        return [e.place for e in self.entries if str(e.kodaira) == type_str]

    def to_wire(self) -> dict:
        return {
            "model": self.model.to_wire(),
            "places": [e.to_wire() for e in self.entries],
            "fibers": {k: v for k, v in sorted(self.multiset().items())},
            "summary": self.summary(),
            "euler_total": self.euler_total,
        }


def _type_sort_key(s: str):
    t = KodairaType.parse(s)
    return (-t.euler(), s)


def format_multiset(ms: Counter) -> str:
    parts = [f"{ms[k] if ms[k] > 1 else ''}{k}" for k in sorted(ms, key=_type_sort_key) if ms[k]]
    return " + ".join(parts) if parts else "smooth"


def parse_multiset(s: str) -> Counter:
    out: Counter = Counter()
    for part in s.replace(" ", "").split("+"):
        if not part:
            continue
        i = 0
        while i < len(part) and part[i].isdigit():
            i += 1
        cnt = int(part[:i]) if i else 1
        out[str(KodairaType.parse(part[i:]))] += cnt
    return out


def fiber_configuration(m: FibrationModel, check_euler: bool = True) -> FiberReport:
    w = m.jacobian()
    entries = []
    for p in places(m):
        inv, kt = local_kodaira(m, p)
        extra = {
            "v_a": _val_or_big(w.a, p),
            "v_b": _val_or_big(w.b, p),
            "v_c": _val_or_big(w.c, p),
            "v_disc": _val_or_big(w.disc_factor(), p),
        }
        entries.append(FiberEntry(p, place_degree(p), inv, kt, extra))
    total = sum(e.kodaira.euler() * e.degree for e in entries)
    if check_euler and m.n in (1, 2) and total != 12 * m.n:
        raise ClassificationError(
            f"Euler total {total} differs from {12 * m.n} for {m.label or 'model'}"
        )
    return FiberReport(m, entries, total)


# sections and singular points


def _mod(f: UniPoly, p: UniPoly) -> UniPoly:
    return f % p


def _homog_mod(h: HomogPoly, p) -> UniPoly:
    return _mod(h.affine, p)


@dataclass
class Incidence:
    place: Any
    fiber: str
    singular_point: str
    section: str
    passes: bool

    def to_wire(self) -> dict:
        return {
            "place": place_str(self.place),
            "fiber": self.fiber,
            "singular_point": self.singular_point,
            "section": self.section,
            "passes_through_singular_point": self.passes,
        }


def singular_point(m: FibrationModel, p) -> str:
    """Singular point of the fiber over a finite place."""
    if p == INFINITY:
        raise FibrationError("singular point at infinity is not tracked")
    if m.kind == QUARTIC:
        if _homog_mod(m.a, p).is_zero():
            return "[1:0:0]"
        if _homog_mod(m.c, p).is_zero():
            return "[0:0:1]"
        if _homog_mod(m.disc_factor(), p).is_zero():
            return "[U:0:1] with U^2 = -q2/(2 q4)"
        raise FibrationError("fiber is smooth at this place")
    if _homog_mod(m.ac(), p).is_zero():
        return "(0,0)"
    if _homog_mod(m.disc_factor(), p).is_zero():
        return "(-b/2,0)"
    raise FibrationError("fiber is smooth at this place")


def section_incidence(m: FibrationModel, section, p) -> Incidence:
    """Whether a section (or bisection, for quartic models) passes through the
    singular point of the fiber over the finite place p.

    ``section`` is "Zero", "TwoTorsion", ("Explicit", x, y) with x, y UniPoly
    or RatFunc, or for quartic models "BisectionW0" (kappa) / "BisectionU0"
    (upsilon).
    """
    sp = singular_point(m, p)
    _, kt = local_kodaira(m, p)
    if m.kind == QUARTIC:
        if section == "BisectionW0":
            return Incidence(p, str(kt), sp, "kappa: W=0", sp == "[1:0:0]")
        if section == "BisectionU0":
            return Incidence(p, str(kt), sp, "upsilon: U=0", sp == "[0:0:1]")
        raise FibrationError(f"unknown section {section!r} for a quartic model")
    if section == "Zero":
        return Incidence(p, str(kt), sp, "sigma", False)
    if section == "TwoTorsion":
        return Incidence(p, str(kt), sp, "tau", sp == "(0,0)")
    if isinstance(section, tuple) and section and section[0] == "Explicit":
        x, y = RatFunc(section[1]) if isinstance(section[1], UniPoly) else section[1], section[2]
        y = RatFunc(y) if isinstance(y, UniPoly) else y
        b, ac = RatFunc(m.b.affine), RatFunc(m.ac().affine)
        if not (y * y - x * (x * x + b * x + ac)).is_zero():
            raise FibrationError("section is not on the model")
        if poly_gcd(x.den, p).degree() > 0 or poly_gcd(y.den, p).degree() > 0:
            return Incidence(p, str(kt), sp, "explicit", False)
        if sp == "(0,0)":
            xs = RatFunc(UniPoly.const(0, m.var))
        else:
            xs = RatFunc(m.b.affine * Fraction(-1, 2))
        dx = x - xs
        passes = (dx.num % p).is_zero() and (y.num % p).is_zero()
        return Incidence(p, str(kt), sp, "explicit", passes)
    raise FibrationError(f"unknown section {section!r}")


# branch loci of the double covers


@dataclass
class BranchEntry:
    place: Any
    degree: int
    fiber: str
    components: list[str]
    tau_through_singular_point: bool | None
    parities: tuple[int, int]

    def to_wire(self) -> dict:
        return {
            "place": place_str(self.place),
            "degree": self.degree,
            "fiber": self.fiber,
            "branch_components": self.components,
            "tau_through_singular_point": self.tau_through_singular_point,
            "v_q4": self.parities[0],
            "v_q0": self.parities[1],
        }


@dataclass
class BranchReport:
    cover: str
    entries: list[BranchEntry]
    unsupported: list[str]

    def total(self) -> int:
        return sum(len(e.components) * e.degree for e in self.entries)

    def is_even_eight(self) -> bool:
        return not self.unsupported and self.total() == 8

    def labels(self) -> Counter:
        out: Counter = Counter()
        for e in self.entries:
            for c in e.components:
                out[(e.fiber, c)] += e.degree
        return out

    def to_wire(self) -> dict:
        return {
            "cover": self.cover,
            "entries": [e.to_wire() for e in self.entries],
            "total_components": self.total(),
            "even_eight": self.is_even_eight(),
            "unsupported": self.unsupported,
        }


COMPONENT_NAMES = {
    "I2": ("neutral", "non-neutral"),
}


def _multiplicative_labels(size: int, tau_index: int, parity: int) -> list[str]:
    labels = []
    for r in range(size):
        if r % 2 != parity:
            continue
        if size == 2:
            labels.append("neutral" if r == 0 else "non-neutral")
        elif r == 0:
            labels.append(f"Theta_0 (meeting sigma)")
        elif r == tau_index:
            labels.append(f"Theta_{r} (meeting tau)")
        else:
            labels.append(f"Theta_{r} (not meeting sigma or tau)")
    return labels


def branch_report(X: FibrationModel, q4: HomogPoly, q0: HomogPoly, cover: str) -> BranchReport:
    """Branch components of the double cover from the quartic torsor
    ``V^2 = q4 U^4 + b U^2 W^2 + q0 W^4`` onto X, ``(U, V) -> (q4 U^2, q4 U V)``.

    Over a place the preimage of sigma is the bisection W = 0, ramified there
    exactly when v(q4) is odd; likewise tau and the bisection U = 0 with v(q0).
    The branch locus in a fiber of type I_2k through whose singular point tau
    passes is the set of alternate components containing sigma's component iff
    v(q4) is odd.  In an I0* fiber it is either the two non-central components
    meeting sigma and tau, or the other two.
    """
    if X.kind != WEIERSTRASS:
        raise FibrationError("branch reports are computed on the Weierstrass model")
    if not (q4 * q0 == X.ac()):
        raise FibrationError("q4 * q0 must equal a * c")
    entries, unsupported = [], []
    rep = fiber_configuration(X)
    for e in rep.entries:
        kt = e.kodaira
        p = e.place
        i, j = _val(q4, p), _val(q0, p)
        k = e.extra["v_a"] + e.extra["v_c"]
        tau_sing = None
        if p != INFINITY and (kt.tag == "I" and kt.n >= 1 or kt == KodairaType("Istar", 0)):
            tau_sing = section_incidence(X, "TwoTorsion", p).passes
        elif p == INFINITY:
            tau_sing = k > 0
        if kt.tag == "I" and kt.n >= 2:
            if k == 0:
                comps = []
                if i % 2 or j % 2:
                    unsupported.append(f"{place_str(p)}: odd valuation with tau off the node")
            else:
                if kt.n != 2 * k:
                    unsupported.append(f"{place_str(p)}: I{kt.n} with v(ac) = {k}")
                    continue
                comps = _multiplicative_labels(kt.n, k, (i + 1) % 2)
        elif kt == KodairaType("Istar", 0):
            if i % 2 and j % 2:
                comps = ["non-central meeting sigma", "non-central meeting tau"]
            elif i % 2 == 0 and j % 2 == 0:
                comps = ["non-central not meeting sigma or tau"] * 2
            else:
                unsupported.append(f"{place_str(p)}: I0* with mixed parities {(i, j)}")
                continue
        elif kt.tag == "I" and kt.n <= 1:
            continue
        else:
            unsupported.append(f"{place_str(p)}: fiber {kt} not handled")
            continue
        entries.append(BranchEntry(p, e.degree, str(kt), comps, tau_sing, (i, j)))
    return BranchReport(cover, entries, unsupported)


def cover_lands_check(X: FibrationModel, q4: HomogPoly, q0: HomogPoly) -> bool:
    """Exact check that ``(U, V) -> (q4 U^2, q4 U V)`` maps the quartic torsor
    onto the Weierstrass model X."""
    t = X.var
    Q4 = SymPoly.from_unipoly(q4.affine, t)
    Q0 = SymPoly.from_unipoly(q0.affine, t)
    B = SymPoly.from_unipoly(X.b.affine, t)
    AC = SymPoly.from_unipoly(X.ac().affine, t)
    U, V, x = var("U"), var("V"), var("x")
    src = CurveSpec("U", "V", Q4 * U**4 + B * U**2 + Q0, "torsor")
    tgt = CurveSpec("x", "y", x**3 + B * x**2 + AC * x, "X")
    m = PointMap(src, SymRat(Q4 * U**2), SymRat(Q4 * U * V), "cover")
    return lands_on(m, tgt)


def branch_even_eight_report(cover: str, family) -> BranchReport:
    """Dispatch on a built family (anything with X, Z and optionally Zprime)."""
    X = family.X
    if cover == "Phi":
        one = HomogPoly(UniPoly.const(1, X.var), 0)
        return branch_report(X, one, X.ac(), "Phi")
    if cover == "Psi":
        Z = family.Z
        return branch_report(X, Z.a, Z.c, "Psi")
    if cover == "PsiPrime":
        Zp = getattr(family, "Zprime", None)
        if Zp is None:
            raise FibrationError("family has no Z' model")
        return branch_report(X, Zp.a, Zp.c, "PsiPrime")
    raise FibrationError(f"unknown cover {cover!r}")


# base and fiber swap


def _bigrade(m: FibrationModel) -> dict[tuple[int, int], Fraction]:
    """Coefficients of ``t^i U^j`` in ``q4 U^4 + q2 U^2 + q0`` (affine W = t1 = 1)."""
    out = {}
    for j, h in ((4, m.a), (2, m.b), (0, m.c)):
        for i, c in enumerate(h.affine.coeffs):
            if c:
                out[(i, j)] = c
    return out


def swap_base_fiber(m: FibrationModel, new_var: str = "U") -> FibrationModel:
    """Exchange the base coordinate [t0:t1] with the fiber coordinate [U:W].

    Returns a quartic model when only even powers of t occur, and the
    Weierstrass conversion ``y^2 = x(x^2 + r2 x + r3 r1)`` when the swapped
    quartic is ``t0 t1 (r3 t0^2 + r2 t0 t1 + r1 t1^2)``.
    """
    if m.kind != QUARTIC:
        raise FibrationError("swap needs a quartic genus-one model")
    if not (m.a.degree == m.b.degree == m.c.degree == 4):
        raise FibrationError("swap needs all quartic coefficients of declared degree 4 (k = 2)")
    co = _bigrade(m)
    r = []
    for i in range(5):
        r.append(UniPoly([co.get((i, j), 0) for j in range(5)], new_var))
    label = f"swap({m.label})"
    if r[1].is_zero() and r[3].is_zero():
        return FibrationModel.quartic(
            HomogPoly(r[4], 4), HomogPoly(r[2], 4), HomogPoly(r[0], 4), label=label
        )
    if r[0].is_zero() and r[4].is_zero():
        return FibrationModel.weierstrass(
            HomogPoly(r[3], 4), HomogPoly(r[2], 4), HomogPoly(r[1], 4), label=label
        )
    raise FibrationError("swapped model is neither even nor of the form t0 t1 * quadratic")


# j-maps


def j_map(m: FibrationModel) -> RatFunc:
    c4, _, d = invariants_c4c6delta(m)
    return RatFunc(c4.affine**3, d.affine)


def _rational_marks(m: FibrationModel) -> list[tuple[Any, int]]:
    """Degree-one places with a pole of j, labelled by the pole order."""
    out = []
    for e in fiber_configuration(m, check_euler=False).entries:
        pole = e.kodaira.j_pole()
        if pole and e.degree == 1:
            pt = None if e.place == INFINITY else -e.place[0]
            out.append((pt, pole))
    return out


def _vec(pt) -> tuple[Fraction, Fraction]:
    return (Fraction(1), Fraction(0)) if pt is None else (Fraction(pt), Fraction(1))


def _frame(p1, p2, p3):
    """Matrix sending (1:0), (0:1), (1:1) to p1, p3, p2."""
    v1, v2, v3 = _vec(p1), _vec(p2), _vec(p3)
    det = v1[0] * v3[1] - v3[0] * v1[1]
    if det == 0:
        return None
    c1 = (v2[0] * v3[1] - v3[0] * v2[1]) / det
    c3 = (v1[0] * v2[1] - v2[0] * v1[1]) / det
    if c1 == 0 or c3 == 0:
        return None
    return ((c1 * v1[0], c3 * v3[0]), (c1 * v1[1], c3 * v3[1]))


def _inv2(M):
    (p, q), (r, s) = M
    d = p * s - q * r
    return ((s / d, -q / d), (-r / d, p / d))


def _mul2(A, B):
    return (
        (A[0][0] * B[0][0] + A[0][1] * B[1][0], A[0][0] * B[0][1] + A[0][1] * B[1][1]),
        (A[1][0] * B[0][0] + A[1][1] * B[1][0], A[1][0] * B[0][1] + A[1][1] * B[1][1]),
    )


def _rational_types(m: FibrationModel) -> dict:
    out = {}
    for e in fiber_configuration(m, check_euler=False).entries:
        if e.degree == 1:
            out[None if e.place == INFINITY else -e.place[0]] = str(e.kodaira)
    return out


def _types_preserved(M, m1: FibrationModel, m2: FibrationModel) -> bool:
    t1, t2 = _rational_types(m1), _rational_types(m2)
    if len(t1) != len(t2):
        return False
    return all(t1.get(moebius_image(M, p), "I0") == kt for p, kt in t2.items())


def find_moebius(m1: FibrationModel, m2: FibrationModel, preserve_types: bool = False):
    """A matrix ((p, q), (r, s)) with ``j1((p t + q)/(r t + s)) = j2(t)``, or None.

    With ``preserve_types`` the map must also carry every rational singular
    fiber of m2 to a fiber of the same Kodaira type on m1, which detects
    quadratic twists that the j-map cannot see.
    """
    j1, j2 = j_map(m1), j_map(m2)
    j1 = RatFunc(j1.num.with_var("t"), j1.den.with_var("t"))
    j2 = RatFunc(j2.num.with_var("t"), j2.den.with_var("t"))
    if j1.num.is_const() and j1.den.is_const():
        return ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))) if j1 == j2 else None
    k1, k2 = _rational_marks(m1), _rational_marks(m2)
    if len(k2) < 3 or len(k1) < 3:
        return None
    src = k2[:3]
    F2 = _frame(*(p for p, _ in src))
    if F2 is None:
        return None
    F2i = _inv2(F2)
    for tgt in itertools.permutations(k1, 3):
        if any(a[1] != b[1] for a, b in zip(src, tgt)):
            continue
        F1 = _frame(*(p for p, _ in tgt))
        if F1 is None:
            continue
        M = _mul2(F1, F2i)
        (p, q), (r, s) = M
        try:
            if j1.compose_moebius(p, q, r, s) == j2:
                if not preserve_types or _types_preserved(M, m1, m2):
                    return M
        except (ExactError, ZeroDivisionError):
            continue
    return None


def jmap_equal_up_to_moebius(m1: FibrationModel, m2: FibrationModel) -> bool:
    return find_moebius(m1, m2) is not None


def moebius_image(M, pt):
    """Image of a point (None = infinity) under the matrix M."""
    (p, q), (r, s) = M
    x, y = _vec(pt)
    u, w = p * x + q * y, r * x + s * y
    return None if w == 0 else u / w


# base change


def pullback_form(h: HomogPoly, P: UniPoly, Q: UniPoly, m: int) -> HomogPoly:
    """``h(P, Q)`` for a cover ``[t0:t1] -> [P:Q]`` by forms of degree m."""
    acc = UniPoly([], P.var)
    for i, c in enumerate(h.affine.coeffs):
        if c:
            acc = acc + P**i * Q ** (h.degree - i) * c
    return HomogPoly(acc, h.degree * m)


COVERS = {
    "Square": (UniPoly([0, 0, 1]), UniPoly([1]), 2),
    "SumOfSquares": (UniPoly([1, 0, 1]), UniPoly([0, 2]), 2),
}


def cover_forms(cover) -> tuple[UniPoly, UniPoly, int]:
    if isinstance(cover, str):
        if cover not in COVERS:
            raise FibrationError(f"unknown cover {cover!r}")
        return COVERS[cover]
    P, Q, d = cover
    return P, Q, d


def pullback(m: FibrationModel, cover, var_name: str | None = None) -> FibrationModel:
    P, Q, d = cover_forms(cover)
    v = var_name or m.var
    P, Q = P.with_var(v), Q.with_var(v)
    a, b, c = (pullback_form(h, P, Q, d) for h in (m.a, m.b, m.c))
    return FibrationModel(m.kind, a, b, c, n=m.n * d, label=f"{m.label}*")


def _divide_form(h: HomogPoly, p, e: int) -> HomogPoly:
    if e == 0:
        return h
    if p == INFINITY:
        return HomogPoly(h.affine, h.degree - e)
    return HomogPoly(h.affine.exact_div(p**e), h.degree - e * p.degree())


def minimal_twist(m: FibrationModel) -> FibrationModel:
    """Remove the largest h with h^2 | b and h^4 | ac (rescaling x by h^2)."""
    if m.kind != WEIERSTRASS:
        raise FibrationError("twist removal works on Weierstrass models")
    polys = [h.affine for h in (m.a, m.b, m.c) if not h.is_zero() and h.affine.degree() > 0]
    pls = (gcd_free_basis(polys) if polys else []) + [INFINITY]
    a, b, c = m.a, m.b, m.c
    for p in pls:
        vb = _val_or_big(b, p)
        va, vc = _val(a, p), _val(c, p)
        e = min(vb // 2, (va + vc) // 4)
        if e <= 0:
            continue
        ta = min(va, 2 * e)
        tc = 4 * e - ta
        a, c = _divide_form(a, p, ta), _divide_form(c, p, tc)
        b = _divide_form(b, p, 2 * e) if not b.is_zero() else HomogPoly(b.affine, b.degree - 2 * e * place_degree(p))
    if b.degree % 2:
        raise FibrationError("twist removal produced odd b degree")
    return FibrationModel(WEIERSTRASS, a, b, c, n=b.degree // 2, label=f"{m.label}~")


def base_change_cover(m: FibrationModel, cover, minimize: bool = True) -> FibrationModel:
    """Pull back along a degree-two cover of the base; by default the square
    twist factor is removed so the result is the minimal model."""
    w = m.jacobian() if m.kind == QUARTIC else m
    pb = pullback(w, cover)
    if not minimize:
        return pb
    out = minimal_twist(pb)
    if out.n not in (1, 2):
        raise FibrationError(f"pulled-back model has surface index {out.n}")
    return out


def cover_branch_values(cover) -> list:
    """Branch values on the target line of the named degree-two covers."""
    if cover == "Square":
        return [UniPoly([0, 1]), INFINITY]
    if cover == "SumOfSquares":
        return [UniPoly([-1, 1]), UniPoly([1, 1])]
    raise FibrationError(f"unknown cover {cover!r}")


def base_change_branch_report(m: FibrationModel, cover) -> dict:
    """Fibers of m over the branch values of the cover; the induced degree-two
    map branches along the non-central components of I0* fibers there."""
    rep = fiber_configuration(m)
    by_place = {}
    for e in rep.entries:
        key = "inf" if e.place == INFINITY else tuple(e.place.with_var("t").coeffs)
        by_place[key] = e
    items = []
    total = 0
    for bv in cover_branch_values(cover):
        key = "inf" if bv == INFINITY else tuple(bv.with_var("t").coeffs)
        e = by_place.get(key)
        kt = str(e.kodaira) if e else "I0"
        comps = 4 if kt == "I0*" else 0
        total += comps
        items.append({"place": place_str(bv), "fiber": kt, "branch_components": comps,
                      "description": "non-central components" if comps else "none"})
    return {"cover": cover if isinstance(cover, str) else "custom", "fibers": items,
            "total_components": total, "even_eight": total == 8}


def report_json(rep) -> str:
    return json.dumps(rep.to_wire(), sort_keys=True, indent=2)


def homog(f: UniPoly, degree: int) -> HomogPoly:
    return HomogPoly(f, degree)


def const_form(c, var_name: str = "t") -> HomogPoly:
    return HomogPoly(UniPoly.const(c, var_name), 0)


def rat(x) -> str:
    return rat_str(Fraction(x))


__all__ = [
    "FibrationModel", "KodairaType", "LocalInvariants", "FiberReport", "FiberEntry",
    "invariants_c4c6delta", "places", "local_kodaira", "fiber_configuration",
    "section_incidence", "branch_report", "branch_even_eight_report", "swap_base_fiber",
    "jmap_equal_up_to_moebius", "find_moebius", "base_change_cover", "pullback",
    "minimal_twist", "classify_valuations", "format_multiset", "parse_multiset",
    "isogenous_model", "cover_lands_check", "base_change_branch_report", "j_map",
]
