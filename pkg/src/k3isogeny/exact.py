"""Exact rational arithmetic: dense univariate polynomials over Q and friends.

Coefficients are ``fractions.Fraction``.  Polynomials are stored in ascending
order with trailing zeros stripped, so the zero polynomial has no
coefficients and degree -1.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from sympy import factorint

from . import kernels

Rational = Fraction

_RAT_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


class ExactError(ValueError):
    """Raised for malformed input or an operation that is undefined."""


def to_rational(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings; floats are rejected."""
    if isinstance(x, bool):
        raise ExactError("booleans are not rationals")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        m = _RAT_RE.match(x)
        if not m:
            raise ExactError(f"not an exact rational: {x!r}")
        den = int(m.group(2)) if m.group(2) else 1
        if den == 0:
            raise ExactError(f"zero denominator in {x!r}")
        return Fraction(int(m.group(1)), den)
    raise ExactError(f"cannot coerce {type(x).__name__} to an exact rational")


def rat_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def rational_sqrt(x: Fraction) -> Fraction | None:
    """Square root in Q, or None when x is not a rational square."""
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _common_den(cs: Sequence[Fraction]) -> int:
    d = 1
    for c in cs:
        d = d * c.denominator // math.gcd(d, c.denominator)
    return d


class UniPoly:
    """Dense univariate polynomial over Q in a named variable."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "t"):
        cs = [to_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self.var = var

    @classmethod
    def _raw(cls, cs: list, var: str) -> "UniPoly":
        while cs and cs[-1] == 0:
            cs.pop()
        p = cls.__new__(cls)
        p.coeffs = tuple(cs)
        p.var = var
        return p

    @classmethod
    def const(cls, c, var: str = "t") -> "UniPoly":
        return cls([c], var)

    @classmethod
    def gen(cls, var: str = "t") -> "UniPoly":
        return cls([0, 1], var)

    @classmethod
    def from_roots(cls, roots: Iterable, var: str = "t") -> "UniPoly":
        p = cls.const(1, var)
        for r in roots:
            p = p * cls([-to_rational(r), 1], var)
        return p

    # basic data
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_const(self) -> bool:
        return len(self.coeffs) <= 1

    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly.const(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        return UniPoly.const(other, self.var)

    # ring operations
    def __add__(self, other) -> "UniPoly":
        o = self._coerce(other)
        a, b = self.coeffs, o.coeffs
        n = max(len(a), len(b))
        return UniPoly._raw(
            [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)],
            self.var,
        )

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly._raw([-c for c in self.coeffs], self.var)

    def __sub__(self, other) -> "UniPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "UniPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            c = to_rational(other)
            return UniPoly._raw([c * x for x in self.coeffs], self.var)
        if not self.coeffs or not other.coeffs:
            return UniPoly._raw([], self.var)
        da, db = _common_den(self.coeffs), _common_den(other.coeffs)
        ia = [int(c * da) for c in self.coeffs]
        ib = [int(c * db) for c in other.coeffs]
        den = da * db
        return UniPoly._raw([Fraction(v, den) for v in kernels.conv(ia, ib)], self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UniPoly":
        if n < 0:
            raise ExactError("negative power of a polynomial")
        out = UniPoly.const(1, self.var)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __divmod__(self, other) -> tuple["UniPoly", "UniPoly"]:
        o = self._coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db = o.degree()
        if len(r) - 1 < db:
            return UniPoly._raw([], self.var), self
        inv = 1 / o.lc()
        q = [Fraction(0)] * (len(r) - db)
        bc = o.coeffs
        for k in range(len(r) - 1 - db, -1, -1):
            c = r[k + db] * inv
            q[k] = c
            if c:
                for j in range(db + 1):
                    r[k + j] -= c * bc[j]
        return UniPoly._raw(q, self.var), UniPoly._raw(r[:db], self.var)

    def __floordiv__(self, other) -> "UniPoly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "UniPoly":
        return divmod(self, other)[1]

    def exact_div(self, other) -> "UniPoly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ExactError("division is not exact")
        return q

    def divides(self, other: "UniPoly") -> bool:
        return (other % self).is_zero()

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self * (1 / self.lc())

    def derivative(self) -> "UniPoly":
        return UniPoly._raw([i * c for i, c in enumerate(self.coeffs)][1:], self.var)

    def __call__(self, x):
        """Horner evaluation at any ring element supporting + and *."""
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, inner: "UniPoly") -> "UniPoly":
        acc = UniPoly._raw([], inner.var)
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def with_var(self, var: str) -> "UniPoly":
        return UniPoly._raw(list(self.coeffs), var)

    def reversed(self, deg: int) -> "UniPoly":
        """``t^deg * f(1/t)``; requires deg >= degree."""
        if deg < self.degree():
            raise ExactError("reversal degree below polynomial degree")
        cs = list(self.coeffs) + [Fraction(0)] * (deg + 1 - len(self.coeffs))
        return UniPoly._raw(cs[::-1], self.var)

    def primitive_int(self) -> list[int]:
        """Integer coefficients with content 1 and positive leading term."""
        if self.is_zero():
            return []
        d = _common_den(self.coeffs)
        ints = [int(c * d) for c in self.coeffs]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        ints = [v // g for v in ints]
        if ints[-1] < 0:
            ints = [-v for v in ints]
        return ints

    # wire format and text
    def to_wire(self, homdeg: int | None = None) -> dict:
        out = {"var": self.var, "coeffs": [rat_str(c) for c in self.coeffs]}
        if homdeg is not None:
            out["homdeg"] = homdeg
        return out

    @classmethod
    def from_wire(cls, obj: dict) -> "UniPoly":
        if not isinstance(obj, dict) or "coeffs" not in obj:
            raise ExactError("polynomial wire object needs 'coeffs'")
        cs = obj["coeffs"]
        if not isinstance(cs, list):
            raise ExactError("'coeffs' must be a list")
        for c in cs:
            if isinstance(c, float):
                raise ExactError("float coefficient in wire format")
        return cls([to_rational(c) for c in cs], obj.get("var", "t"))

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = -c if c < 0 else c
            if i == 0:
                body = rat_str(a)
            else:
                mon = self.var if i == 1 else f"{self.var}^{i}"
                body = mon if a == 1 else f"{rat_str(a)}*{mon}"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self) -> str:
        return f"UniPoly({str(self)!r}, var={self.var!r})"


def poly_gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    """Monic gcd (zero when both inputs vanish)."""
    a, b = f, g
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


@dataclass(frozen=True)
class FactorMultiset:
    """``unit * prod(factor ** mult)`` with monic, pairwise distinct factors."""

    unit: Fraction
    factors: tuple[tuple[UniPoly, int], ...]

    def product(self, var: str = "t") -> UniPoly:
        out = UniPoly.const(self.unit, var)
        for f, m in self.factors:
            out = out * f**m
        return out

    def degree(self) -> int:
        return sum(f.degree() * m for f, m in self.factors)


def squarefree_decompose(f: UniPoly) -> FactorMultiset:
    """Yun's algorithm; factors are monic, squarefree and pairwise coprime."""
    if f.is_zero():
        raise ExactError("squarefree decomposition of the zero polynomial")
    unit = f.lc()
    if f.degree() <= 0:
        return FactorMultiset(unit, ())
    fm = f.monic()
    d = fm.derivative()
    a = poly_gcd(fm, d)
    b = fm.exact_div(a)
    c = d.exact_div(a)
    out = []
    i = 1
    while True:
        c = c - b.derivative()
        if c.is_zero():
            if b.degree() > 0:
                out.append((b.monic(), i))
            break
        g = poly_gcd(b, c)
        if g.degree() > 0:
            out.append((g, i))
        b = b.exact_div(g)
        c = c.exact_div(g)
        i += 1
        if b.degree() == 0:
            break
    return FactorMultiset(unit, tuple(out))


def squarefree_part(f: UniPoly) -> UniPoly:
    out = UniPoly.const(1, f.var)
    for g, _ in squarefree_decompose(f).factors:
        out = out * g
    return out


def gcd_free_basis(polys: Iterable[UniPoly]) -> list[UniPoly]:
    """Pairwise coprime monic squarefree basis for a family of nonzero polynomials.

    Every input equals a constant times a product of powers of basis elements.
    The output is sorted by (degree, coefficients) so it is deterministic.
    """
    work: list[UniPoly] = []
    for p in polys:
        if p.is_zero():
            raise ExactError("gcd-free basis of a family containing zero")
        for g, _ in squarefree_decompose(p).factors:
            work.append(g)
    basis: list[UniPoly] = []
    while work:
        p = work.pop()
        if p.degree() <= 0:
            continue
        for i, q in enumerate(basis):
            g = poly_gcd(p, q)
            if g.degree() > 0:
                basis.pop(i)
                work.extend([g, p.exact_div(g).monic(), q.exact_div(g).monic()])
                break
        else:
            basis.append(p.monic())
    uniq = {b.coeffs: b for b in basis}
    return sorted(uniq.values(), key=lambda b: (b.degree(), b.coeffs))


INFINITY = "inf"


def valuation_at(f: UniPoly, place, declared_degree: int | None = None) -> int:
    """Order of vanishing of f at a finite place (a monic squarefree polynomial)
    or at infinity (requires the declared homogeneous degree)."""
    if f.is_zero():
        raise ExactError("valuation of the zero polynomial")
    if place == INFINITY:
        if declared_degree is None:
            raise ExactError("valuation at infinity needs a declared degree")
        if declared_degree < f.degree():
            raise ExactError("declared degree below actual degree")
        return declared_degree - f.degree()
    if place.degree() <= 0:
        raise ExactError("a finite place must be nonconstant")
    v = 0
    while True:
        q, r = divmod(f, place)
        if not r.is_zero():
            return v
        f = q
        v += 1


def poly_is_square(f: UniPoly) -> UniPoly | None:
    """Return g with g^2 == f over Q, or None."""
    if f.is_zero():
        return f
    fm = squarefree_decompose(f)
    s = rational_sqrt(fm.unit)
    if s is None:
        return None
    out = UniPoly.const(s, f.var)
    for g, m in fm.factors:
        if m % 2:
            return None
        out = out * g ** (m // 2)
    return out


def _divisors(n: int) -> list[int]:
    n = abs(n)
    divs = [1]
    for p, e in factorint(n).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return divs


def rational_roots(f: UniPoly) -> list[Fraction]:
    """Distinct rational roots of a nonzero polynomial, sorted."""
    if f.is_zero():
        raise ExactError("rational roots of the zero polynomial")
    roots = set()
    g = f
    while g.degree() >= 1 and g[0] == 0:
        roots.add(Fraction(0))
        g = UniPoly._raw(list(g.coeffs[1:]), g.var)
    if g.degree() >= 1:
        g = squarefree_part(g)
        ints = g.primitive_int()
        for q in _divisors(ints[-1]):
            for p in _divisors(ints[0]):
                for r in (Fraction(p, q), Fraction(-p, q)):
                    if r not in roots and g(r) == 0:
                        roots.add(r)
    return sorted(roots)


def split_rational_roots(basis: Sequence[UniPoly]) -> list[UniPoly]:
    """Refine a gcd-free basis so that rational roots become linear places."""
    out = []
    for b in basis:
        rest = b
        for r in rational_roots(b):
            lin = UniPoly([-r, 1], b.var)
            out.append(lin)
            rest = rest.exact_div(lin)
        if rest.degree() > 0:
            out.append(rest.monic())
    return sorted(out, key=lambda b: (b.degree(), b.coeffs))


class HomogPoly:
    """Binary form of a declared degree, stored through its affine part f(t, 1).

    The declared degree may exceed the affine degree; the difference is the
    order of vanishing at infinity ``[1:0]``.
    """

    __slots__ = ("affine", "degree")

    def __init__(self, affine: UniPoly, degree: int):
        if not affine.is_zero() and affine.degree() > degree:
            raise ExactError(
                f"affine degree {affine.degree()} exceeds declared degree {degree}"
            )
        self.affine = affine
        self.degree = degree

    @property
    def var(self) -> str:
        return self.affine.var

    def is_zero(self) -> bool:
        return self.affine.is_zero()

    def val_infinity(self) -> int:
        return valuation_at(self.affine, INFINITY, self.degree)

    def __mul__(self, other) -> "HomogPoly":
        if isinstance(other, HomogPoly):
            return HomogPoly(self.affine * other.affine, self.degree + other.degree)
        return HomogPoly(self.affine * other, self.degree)

    __rmul__ = __mul__

    def __add__(self, other: "HomogPoly") -> "HomogPoly":
        if other.degree != self.degree:
            raise ExactError("adding forms of different degrees")
        return HomogPoly(self.affine + other.affine, self.degree)

    def __sub__(self, other: "HomogPoly") -> "HomogPoly":
        return self + (-1) * other

    def __neg__(self) -> "HomogPoly":
        return HomogPoly(-self.affine, self.degree)

    def __pow__(self, n: int) -> "HomogPoly":
        return HomogPoly(self.affine**n, self.degree * n)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HomogPoly):
            return NotImplemented
        return self.degree == other.degree and self.affine == other.affine

    def __hash__(self) -> int:
        return hash((self.affine, self.degree))

    def eval(self, t0, t1):
        """Value at the point ``[t0:t1]`` of the projective line."""
        acc = Fraction(0)
        for i, c in enumerate(self.affine.coeffs):
            acc += c * t0**i * t1 ** (self.degree - i)
        return acc

    def to_wire(self) -> dict:
        return self.affine.to_wire(self.degree)

    @classmethod
    def from_wire(cls, obj: dict, degree: int | None = None) -> "HomogPoly":
        p = UniPoly.from_wire(obj)
        d = obj.get("homdeg", degree)
        if d is None:
            d = max(p.degree(), 0)
        return cls(p, int(d))

    def __repr__(self) -> str:
        return f"HomogPoly({str(self.affine)!r}, degree={self.degree})"


class RatFunc:
    """Quotient of univariate polynomials, reduced with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: UniPoly, den: UniPoly | None = None):
        if den is None:
            den = UniPoly.const(1, num.var)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = num, UniPoly.const(1, num.var)
            return
        g = poly_gcd(num, den)
        if g.degree() > 0:
            num, den = num.exact_div(g), den.exact_div(g)
        lc = den.lc()
        self.num, self.den = num * (1 / lc), den * (1 / lc)

    @property
    def var(self) -> str:
        return self.num.var

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, UniPoly):
            return RatFunc(other)
        return RatFunc(UniPoly.const(other, self.var))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other) -> "RatFunc":
        o = self._coerce(other)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __sub__(self, other) -> "RatFunc":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RatFunc":
        return self._coerce(other) - self

    def __mul__(self, other) -> "RatFunc":
        o = self._coerce(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFunc":
        o = self._coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other) -> "RatFunc":
        return self._coerce(other) / self

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            return RatFunc(self.den, self.num) ** (-n)
        return RatFunc(self.num**n, self.den**n)

    def __eq__(self, other) -> bool:
        try:
            o = self._coerce(other)
        except ExactError:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError("pole of rational function")
        return self.num(x) / d

    def compose_moebius(self, p, q, r, s) -> "RatFunc":
        """``self((p t + q) / (r t + s))`` for an invertible Moebius map."""
        if p * s - q * r == 0:
            raise ExactError("singular Moebius transformation")
        var = self.var
        lin_n = UniPoly([q, p], var)
        lin_d = UniPoly([s, r], var)
        n = max(self.num.degree(), self.den.degree(), 0)

        def homog(f: UniPoly) -> UniPoly:
            acc = UniPoly([], var)
            for i, c in enumerate(f.coeffs):
                acc = acc + lin_n**i * lin_d ** (n - i) * c
            return acc

        return RatFunc(homog(self.num), homog(self.den))

    def __repr__(self) -> str:
        return f"RatFunc(({self.num}) / ({self.den}))"
