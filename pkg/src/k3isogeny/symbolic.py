"""Sparse multivariate polynomials over Q and rational functions on
curves ``y^2 = rhs(x, params)``.

Identities of maps between curves are decided exactly: every expression is
reduced with ``y^2 -> rhs`` and denominators are made y-free by multiplying
with the y-conjugate, after which an expression vanishes on the curve exactly
when both of its y-coefficients vanish as polynomials.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from . import kernels
from .exact import UniPoly, to_rational


class SymbolicError(ValueError):
    pass


class NotAMorphism(SymbolicError):
    pass


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


class SymPoly:
    """Polynomial over Q in an explicit, sorted tuple of variables."""

    __slots__ = ("gens", "terms")

    def __init__(self, gens: Iterable[str] = (), terms: Mapping | None = None):
        self.gens: tuple[str, ...] = tuple(gens)
        if list(self.gens) != sorted(set(self.gens)):
            raise SymbolicError("generators must be sorted and distinct")
        self.terms: dict[tuple[int, ...], Fraction] = {}
        if terms:
            for e, c in terms.items():
                c = to_rational(c)
                if c:
                    if len(e) != len(self.gens):
                        raise SymbolicError("exponent length mismatch")
                    self.terms[tuple(e)] = c

    @classmethod
    def _raw(cls, gens, terms) -> "SymPoly":
        p = cls.__new__(cls)
        p.gens = gens
        p.terms = terms
        return p

    @classmethod
    def var(cls, name: str) -> "SymPoly":
        return cls._raw((name,), {(1,): Fraction(1)})

    @classmethod
    def const(cls, c) -> "SymPoly":
        c = to_rational(c)
        return cls._raw((), {(): c} if c else {})

    @classmethod
    def from_unipoly(cls, f: UniPoly, var: str | None = None) -> "SymPoly":
        v = var or f.var
        return cls._raw((v,), {(i,): c for i, c in enumerate(f.coeffs) if c})

    def to_unipoly(self, var: str) -> UniPoly:
        p = self.embed(tuple(sorted(set(self.gens) | {var})))
        if len(p.gens) != 1:
            raise SymbolicError(f"not univariate in {var}: {p.gens}")
        cs = [Fraction(0)] * (max((e[0] for e in p.terms), default=-1) + 1)
        for e, c in p.terms.items():
            cs[e[0]] = c
        return UniPoly(cs, var)

    # structure
    def embed(self, gens: tuple[str, ...]) -> "SymPoly":
        if gens == self.gens:
            return self
        idx = {g: i for i, g in enumerate(gens)}
        pos = []
        for g in self.gens:
            if g not in idx:
                raise SymbolicError(f"variable {g} missing from target generators")
            pos.append(idx[g])
        n = len(gens)
        out = {}
        for e, c in self.terms.items():
            ne = [0] * n
            for k, p in enumerate(pos):
                ne[p] = e[k]
            out[tuple(ne)] = c
        return SymPoly._raw(gens, out)

    def trim(self) -> "SymPoly":
        """Drop generators that do not occur."""
        used = [i for i in range(len(self.gens)) if any(e[i] for e in self.terms)]
        if len(used) == len(self.gens):
            return self
        gens = tuple(self.gens[i] for i in used)
        return SymPoly._raw(gens, {tuple(e[i] for i in used): c for e, c in self.terms.items()})

    def variables(self) -> set[str]:
        return set(self.trim().gens)

    @staticmethod
    def _align(p: "SymPoly", q: "SymPoly") -> tuple["SymPoly", "SymPoly"]:
        if p.gens == q.gens:
            return p, q
        gens = tuple(sorted(set(p.gens) | set(q.gens)))
        return p.embed(gens), q.embed(gens)

    @staticmethod
    def lift(x) -> "SymPoly":
        if isinstance(x, SymPoly):
            return x
        if isinstance(x, UniPoly):
            return SymPoly.from_unipoly(x)
        return SymPoly.const(x)

    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return all(not any(e) for e in self.terms)

    def const_value(self) -> Fraction:
        if not self.is_const():
            raise SymbolicError("polynomial is not constant")
        return next(iter(self.terms.values()), Fraction(0))

    # arithmetic
    def __add__(self, other) -> "SymPoly":
        p, q = SymPoly._align(self, SymPoly.lift(other))
        out = dict(p.terms)
        for e, c in q.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return SymPoly._raw(p.gens, out)

    __radd__ = __add__

    def __neg__(self) -> "SymPoly":
        return SymPoly._raw(self.gens, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "SymPoly":
        return self + (-SymPoly.lift(other))

    def __rsub__(self, other) -> "SymPoly":
        return SymPoly.lift(other) - self

    def scale(self, c) -> "SymPoly":
        c = to_rational(c)
        if not c:
            return SymPoly._raw(self.gens, {})
        return SymPoly._raw(self.gens, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other) -> "SymPoly":
        if not isinstance(other, (SymPoly, UniPoly)):
            return self.scale(other)
        p, q = SymPoly._align(self, SymPoly.lift(other))
        if not p.terms or not q.terms:
            return SymPoly._raw(p.gens, {})
        da = 1
        for c in p.terms.values():
            da = _lcm(da, c.denominator)
        db = 1
        for c in q.terms.values():
            db = _lcm(db, c.denominator)
        ia = {e: int(c * da) for e, c in p.terms.items()}
        ib = {e: int(c * db) for e, c in q.terms.items()}
        den = da * db
        prod = kernels.sparse_mul(ia, ib)
        return SymPoly._raw(p.gens, {e: Fraction(v, den) for e, v in prod.items()})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "SymPoly":
        if n < 0:
            raise SymbolicError("negative power of a polynomial")
        out = SymPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, (SymPoly, int, Fraction, UniPoly)):
            return NotImplemented
        return (self - SymPoly.lift(other)).is_zero()

    def __hash__(self) -> int:
        t = self.trim()
        return hash((t.gens, frozenset(t.terms.items())))

    # calculus and substitution
    def degree_in(self, v: str) -> int:
        if v not in self.gens:
            return 0 if self.terms else -1
        i = self.gens.index(v)
        return max((e[i] for e in self.terms), default=-1)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def coeffs_in(self, v: str) -> dict[int, "SymPoly"]:
        """Split as ``sum_k coeff_k * v^k`` with coefficients free of v."""
        if v not in self.gens:
            return {0: self} if self.terms else {}
        i = self.gens.index(v)
        out: dict[int, dict] = {}
        for e, c in self.terms.items():
            k = e[i]
            ne = e[:i] + (0,) + e[i + 1:]
            out.setdefault(k, {})[ne] = c
        return {k: SymPoly._raw(self.gens, t) for k, t in out.items()}

    def diff(self, v: str) -> "SymPoly":
        if v not in self.gens:
            return SymPoly._raw(self.gens, {})
        i = self.gens.index(v)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                out[ne] = c * e[i]
        return SymPoly._raw(self.gens, out)

    def eval(self, point: Mapping[str, object]):
        """Evaluate; every generator with a nonzero exponent must be bound."""
        acc = Fraction(0)
        vals = [point.get(g) for g in self.gens]
        for e, c in self.terms.items():
            term = c
            for k, ek in enumerate(e):
                if ek:
                    if vals[k] is None:
                        raise SymbolicError(f"unbound variable {self.gens[k]}")
                    term = term * vals[k] ** ek
            acc = acc + term
        return acc

    def subs(self, mapping: Mapping[str, "SymPoly"]) -> "SymPoly":
        """Substitute polynomials for variables."""
        out = SymPoly.const(0)
        cache: dict[tuple[str, int], SymPoly] = {}

        def pw(v: str, k: int) -> SymPoly:
            key = (v, k)
            if key not in cache:
                cache[key] = SymPoly.lift(mapping[v]) ** k
            return cache[key]

        for e, c in self.terms.items():
            mono = {}
            term = SymPoly.const(c)
            for g, k in zip(self.gens, e):
                if not k:
                    continue
                if g in mapping:
                    term = term * pw(g, k)
                else:
                    mono[g] = k
            if mono:
                gens = tuple(sorted(mono))
                term = term * SymPoly._raw(gens, {tuple(mono[g] for g in gens): Fraction(1)})
            out = out + term
        return out

    def rename(self, mapping: Mapping[str, str]) -> "SymPoly":
        """Rename variables (a permutation of names is allowed)."""
        new = [mapping.get(g, g) for g in self.gens]
        if len(set(new)) != len(new):
            raise SymbolicError("renaming identifies two variables")
        order = sorted(range(len(new)), key=lambda i: new[i])
        gens = tuple(new[i] for i in order)
        return SymPoly._raw(gens, {tuple(e[i] for i in order): c for e, c in self.terms.items()})

    def monomial_content(self) -> tuple[int, ...]:
        if not self.terms:
            return tuple(0 for _ in self.gens)
        es = list(self.terms)
        return tuple(min(e[i] for e in es) for i in range(len(self.gens)))

    def shift_down(self, m: tuple[int, ...]) -> "SymPoly":
        return SymPoly._raw(
            self.gens, {tuple(a - b for a, b in zip(e, m)): c for e, c in self.terms.items()}
        )

    def leading(self) -> tuple[tuple[int, ...], Fraction]:
        e = max(self.terms)
        return e, self.terms[e]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                g if k == 1 else f"{g}^{k}" for g, k in zip(self.gens, e) if k
            )
            a = abs(c)
            cs = str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
            body = mono if (mono and a == 1) else (f"{cs}*{mono}" if mono else cs)
            parts.append(("-" if c < 0 else "+", body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    __repr__ = __str__


def var(name: str) -> SymPoly:
    return SymPoly.var(name)


def symbols(names: str) -> tuple[SymPoly, ...]:
    return tuple(SymPoly.var(n) for n in names.split())


class SymRat:
    """Quotient of two SymPolys; compared by cross-multiplication."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = SymPoly.lift(num)
        den = SymPoly.const(1) if den is None else SymPoly.lift(den)
        if den.is_zero():
            raise ZeroDivisionError("SymRat with zero denominator")
        num, den = SymPoly._align(num, den)
        if num.is_zero():
            self.num, self.den = SymPoly.const(0), SymPoly.const(1)
            return
        m = tuple(min(a, b) for a, b in zip(num.monomial_content(), den.monomial_content()))
        if any(m):
            num, den = num.shift_down(m), den.shift_down(m)
        _, lc = den.leading()
        if lc != 1:
            inv = 1 / lc
            num, den = num.scale(inv), den.scale(inv)
        self.num, self.den = num.trim(), den.trim()

    @staticmethod
    def lift(x) -> "SymRat":
        if isinstance(x, SymRat):
            return x
        return SymRat(SymPoly.lift(x))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other) -> "SymRat":
        o = SymRat.lift(other)
        if self.den == o.den:
            return SymRat(self.num + o.num, self.den)
        return SymRat(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "SymRat":
        return SymRat(-self.num, self.den)

    def __sub__(self, other) -> "SymRat":
        return self + (-SymRat.lift(other))

    def __rsub__(self, other) -> "SymRat":
        return SymRat.lift(other) - self

    def __mul__(self, other) -> "SymRat":
        o = SymRat.lift(other)
        return SymRat(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "SymRat":
        o = SymRat.lift(other)
        if o.is_zero():
            raise ZeroDivisionError("division by a zero SymRat")
        return SymRat(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other) -> "SymRat":
        return SymRat.lift(other) / self

    def __pow__(self, n: int) -> "SymRat":
        if n < 0:
            return SymRat(self.den, self.num) ** (-n)
        return SymRat(self.num**n, self.den**n)

    def __eq__(self, other) -> bool:
        try:
            o = SymRat.lift(other)
        except Exception:
            return NotImplemented
        return (self.num * o.den - o.num * self.den).is_zero()

    def __hash__(self):
        raise TypeError("SymRat is not hashable")

    def is_const(self) -> bool:
        return self.num.is_const() and self.den.is_const()

    def const_value(self) -> Fraction:
        return self.num.const_value() / self.den.const_value()

    def variables(self) -> set[str]:
        return self.num.variables() | self.den.variables()

    def diff(self, v: str) -> "SymRat":
        return SymRat(self.num.diff(v) * self.den - self.num * self.den.diff(v), self.den**2)

    def eval(self, point: Mapping[str, object]):
        d = self.den.eval(point)
        if d == 0:
            raise ZeroDivisionError("evaluation at a pole")
        return self.num.eval(point) / d

    def subs(self, mapping: Mapping[str, "SymRat"]) -> "SymRat":
        """Substitute rational functions for variables."""
        mp = {k: SymRat.lift(v) for k, v in mapping.items()}
        degs = {
            v: max(self.num.degree_in(v), self.den.degree_in(v), 0)
            for v in mp
        }
        n = _subs_homog(self.num, mp, degs)
        d = _subs_homog(self.den, mp, degs)
        return SymRat(n, d)

    def __str__(self) -> str:
        if self.den == SymPoly.const(1):
            return str(self.num)
        return f"({self.num})/({self.den})"

    __repr__ = __str__


def _subs_homog(p: SymPoly, mp: Mapping[str, SymRat], degs: Mapping[str, int]) -> SymPoly:
    """Numerator of p after substitution, using the common denominator
    ``prod(den_v ** degs[v])``."""
    cache: dict[tuple[str, int, int], SymPoly] = {}

    def part(v: str, k: int) -> SymPoly:
        key = (v, k, degs[v])
        if key not in cache:
            r = mp[v]
            cache[key] = r.num**k * r.den ** (degs[v] - k)
        return cache[key]

    out = SymPoly.const(0)
    for e, c in p.terms.items():
        term = SymPoly.const(c)
        mono = {}
        seen = set()
        for g, k in zip(p.gens, e):
            if g in mp:
                term = term * part(g, k)
                seen.add(g)
            elif k:
                mono[g] = k
        for v in mp:
            if v not in seen:
                term = term * part(v, 0)
        if mono:
            gens = tuple(sorted(mono))
            term = term * SymPoly._raw(gens, {tuple(mono[g] for g in gens): Fraction(1)})
        out = out + term
    return out


@dataclass(frozen=True)
class CurveSpec:
    """The affine curve ``y^2 = rhs`` where rhs does not involve y."""

    x: str
    y: str
    rhs: SymPoly
    name: str = ""

    def __post_init__(self):
        if self.y in self.rhs.variables():
            raise SymbolicError("curve right-hand side must not involve y")

    def relation(self) -> SymPoly:
        return var(self.y) ** 2 - self.rhs


def split_y(p: SymPoly, curve: CurveSpec) -> tuple[SymPoly, SymPoly]:
    """Write p as ``p0 + y * p1`` modulo ``y^2 = rhs``."""
    parts = p.coeffs_in(curve.y)
    if not parts:
        return SymPoly.const(0), SymPoly.const(0)
    top = max(parts)
    pw = [SymPoly.const(1)]
    for _ in range(top // 2):
        pw.append(pw[-1] * curve.rhs)
    p0 = SymPoly.const(0)
    p1 = SymPoly.const(0)
    for k, c in parts.items():
        c = c.trim()
        if k % 2 == 0:
            p0 = p0 + c * pw[k // 2]
        else:
            p1 = p1 + c * pw[k // 2]
    return p0, p1


def vanishes_on_curve(p: SymPoly, curve: CurveSpec) -> bool:
    p0, p1 = split_y(p, curve)
    return p0.is_zero() and p1.is_zero()


def reduce_on_curve(expr, curve: CurveSpec) -> SymRat:
    """Canonical representative with y-free denominator and y-degree <= 1."""
    expr = SymRat.lift(expr)
    n0, n1 = split_y(expr.num, curve)
    d0, d1 = split_y(expr.den, curve)
    y = var(curve.y)
    if d1.is_zero():
        if d0.is_zero():
            raise ZeroDivisionError("denominator vanishes identically on the curve")
        return SymRat(n0 + y * n1, d0)
    den = d0 * d0 - curve.rhs * d1 * d1
    if den.is_zero():
        raise ZeroDivisionError("denominator vanishes identically on the curve")
    a = n0 * d0 - curve.rhs * n1 * d1
    b = n1 * d0 - n0 * d1
    return SymRat(a + y * b, den)


def equal_on_curve(f, g, curve: CurveSpec) -> bool:
    f, g = SymRat.lift(f), SymRat.lift(g)
    for d in (f.den, g.den):
        d0, d1 = split_y(d, curve)
        if d0.is_zero() and d1.is_zero():
            raise ZeroDivisionError("denominator vanishes identically on the curve")
    return vanishes_on_curve(f.num * g.den - g.num * f.den, curve)


@dataclass
class PointMap:
    """Rational map ``(x, y) -> (x_image, y_image)`` out of ``source``."""

    source: CurveSpec
    x_image: SymRat
    y_image: SymRat
    name: str = ""

    def reduced(self) -> "PointMap":
        return PointMap(
            self.source,
            reduce_on_curve(self.x_image, self.source),
            reduce_on_curve(self.y_image, self.source),
            self.name,
        )


def maps_equal_on_curve(m1: PointMap, m2: PointMap, curve: CurveSpec | None = None) -> bool:
    c = curve or m1.source
    return equal_on_curve(m1.x_image, m2.x_image, c) and equal_on_curve(
        m1.y_image, m2.y_image, c
    )


def compose_maps(outer: PointMap, inner: PointMap, inner_curve: CurveSpec | None = None) -> PointMap:
    """``outer o inner``; outer's source variables are replaced by inner's images."""
    src = inner_curve or inner.source
    mp = {outer.source.x: inner.x_image, outer.source.y: inner.y_image}
    x = reduce_on_curve(outer.x_image.subs(mp), src)
    y = reduce_on_curve(outer.y_image.subs(mp), src)
    return PointMap(src, x, y, f"{outer.name}∘{inner.name}")


def lands_on(m: PointMap, target: CurveSpec) -> bool:
    """Whether the image of ``m`` satisfies the target equation."""
    rel = SymRat(target.relation())
    pulled = rel.subs({target.x: m.x_image, target.y: m.y_image})
    return vanishes_on_curve(pulled.num, m.source)


def pullback_scalar(m: PointMap, target: CurveSpec) -> SymRat:
    """lambda with ``m^*(dX/Y) = lambda * dx/y``; must be free of x and y."""
    if not lands_on(m, target):
        raise NotAMorphism(f"{m.name or 'map'} does not land on {target.name or 'target'}")
    src = m.source
    y = SymRat(var(src.y))
    dydx = SymRat(src.rhs.diff(src.x)) / (2 * y)
    dX = m.x_image.diff(src.x) + m.x_image.diff(src.y) * dydx
    lam = reduce_on_curve(dX * y / m.y_image, src)
    a, b = split_y(lam.num, src)
    if not b.is_zero():
        raise NotAMorphism("pulled-back differential is not a constant multiple")
    d = lam.den
    if not (a * d.diff(src.x) - a.diff(src.x) * d).is_zero():
        raise NotAMorphism("pulled-back differential is not a constant multiple")
    # the quotient is free of x: read it off at an x where d does not vanish
    for x0 in range(0, 64):
        dx0 = d.subs({src.x: SymPoly.const(x0)})
        if not dx0.is_zero():
            return SymRat(a.subs({src.x: SymPoly.const(x0)}), dx0)
    raise NotAMorphism("could not evaluate the pullback scalar")


def duplication_map(curve: CurveSpec) -> PointMap:
    """[2] on ``y^2 = x^3 + a2 x^2 + a4 x + a6`` by the tangent construction."""
    f = curve.rhs.coeffs_in(curve.x)
    if max(f) != 3 or not (f[3] == 1):
        raise SymbolicError("duplication needs a monic cubic in x")
    a2 = SymRat(f.get(2, SymPoly.const(0)))
    x = SymRat(var(curve.x))
    y = SymRat(var(curve.y))
    lam = SymRat(curve.rhs.diff(curve.x)) / (2 * y)
    x2 = lam * lam - a2 - 2 * x
    y2 = lam * (x - x2) - y
    return PointMap(curve, reduce_on_curve(x2, curve), reduce_on_curve(y2, curve), "[2]")


def random_point_on(
    curve: CurveSpec, solve_for: str, rng: random.Random, bound: int = 50
) -> dict[str, Fraction] | None:
    """A random rational point, obtained by solving for a parameter that the
    equation involves linearly.  Returns None on a degenerate draw."""
    rel = curve.relation()
    names = sorted((rel.variables() | {curve.x, curve.y}) - {solve_for})
    pt = {}
    for n in names:
        p = rng.randint(-bound, bound)
        q = rng.randint(1, 9)
        pt[n] = Fraction(p, q)
    parts = rel.coeffs_in(solve_for)
    if set(parts) - {0, 1}:
        raise SymbolicError(f"equation is not linear in {solve_for}")
    c1 = parts.get(1, SymPoly.const(0)).eval(pt)
    c0 = parts.get(0, SymPoly.const(0)).eval(pt)
    if c1 == 0:
        return None
    pt[solve_for] = -c0 / c1
    return pt


def schwartz_zippel(
    check: Callable[[dict[str, Fraction]], bool],
    sampler: Callable[[random.Random], dict | None],
    trials: int = 20,
    seed: int = 0,
) -> tuple[bool, int]:
    """Run ``check`` at ``trials`` random specializations.

    Draws where the sampler or the check hits a pole are redrawn.  Returns
    ``(all_passed, trials_run)``.
    """
    rng = random.Random(seed)
    done = 0
    attempts = 0
    while done < trials:
        attempts += 1
        if attempts > 50 * trials:
            raise SymbolicError("too many degenerate specializations")
        pt = sampler(rng)
        if pt is None:
            continue
        try:
            ok = check(pt)
        except ZeroDivisionError:
            continue
        if not ok:
            return False, done + 1
        done += 1
    return True, done
