"""Exact numbers of the form a + b*sqrt(d) with rational a, b.

Homogeneity degrees of Jacobi fields on quadratic cones, the weights beta of
the associated beta-harmonic equations and the spectral gaps all live in real
quadratic fields Q(sqrt(d)).  Arithmetic is closed inside one field; ordering
comparisons work across different fields and are always exact.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational
from typing import Union

Exact = Union[Fraction, "Surd"]


def squarefree_split(n: int) -> tuple[int, int]:
    """Return (s, d) with n = s**2 * d and d squarefree (n > 0)."""
    if n <= 0:
        raise ValueError("squarefree_split needs a positive integer")
    s, d = 1, 1
    m = n
    f = 2
    while f * f <= m:
        e = 0
        while m % f == 0:
            m //= f
            e += 1
        s *= f ** (e // 2)
        if e % 2:
            d *= f
        f += 1 if f == 2 else 2
    return s, d * m


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {x!r} to an exact rational")


def make(a, b=0, d: int = 1) -> Exact:
    """Build a + b*sqrt(d); collapses to a Fraction whenever possible."""
    a, b = _frac(a), _frac(b)
    if b == 0 or d == 0:
        return a
    if d < 0:
        raise ValueError("negative radicand")
    s, d = squarefree_split(d)
    b *= s
    if d == 1:
        return a + b
    return Surd(a, b, d)


def sqrt_exact(x) -> Exact:
    """Exact square root of a nonnegative rational."""
    x = _frac(x)
    if x < 0:
        raise ValueError("square root of a negative number")
    if x == 0:
        return Fraction(0)
    # sqrt(p/q) = sqrt(p*q)/q
    return make(0, Fraction(1, x.denominator), x.numerator * x.denominator)


def _sign_single(a: Fraction, b: Fraction, d: int) -> int:
    """Sign of a + b*sqrt(d)."""
    sa = (a > 0) - (a < 0)
    sb = (b > 0) - (b < 0)
    if sa == sb or sb == 0:
        return sa
    if sa == 0:
        return sb
    lhs = a * a
    rhs = b * b * d
    if lhs > rhs:
        return sa
    if lhs < rhs:
        return sb
    return 0


def sign(x) -> int:
    """Exact sign of a rational, Surd or int; floats fall back to float sign."""
    if isinstance(x, Surd):
        return _sign_single(x.a, x.b, x.d)
    if isinstance(x, float):
        return (x > 0) - (x < 0)
    x = _frac(x)
    return (x > 0) - (x < 0)


def _parts(x) -> tuple[Fraction, Fraction, int]:
    if isinstance(x, Surd):
        return x.a, x.b, x.d
    return _frac(x), Fraction(0), 1


def compare(x, y) -> int:
    """Exact three-way comparison of two exact quadratic numbers.

    The radicands may differ: with w = (x.a - y.a) + x.b*sqrt(dx) and
    z = -y.b*sqrt(dy) the sign of w + z is read off from sign(w), sign(z)
    and, when they disagree, from the single-radicand sign of w**2 - z**2.
    """
    if isinstance(x, float) or isinstance(y, float):
        fx, fy = float(x), float(y)
        return (fx > fy) - (fx < fy)
    xa, xb, xd = _parts(x)
    ya, yb, yd = _parts(y)
    if yb == 0:
        return _sign_single(xa - ya, xb, xd)
    if xb == 0:
        return _sign_single(xa - ya, -yb, yd)
    if xd == yd:
        return _sign_single(xa - ya, xb - yb, xd)
    return _cross_sign(xa - ya, xb, xd, -yb, yd)


def _cross_sign(a: Fraction, b: Fraction, d: int, c: Fraction, e: int) -> int:
    """Sign of a + b*sqrt(d) + c*sqrt(e)."""
    sw = _sign_single(a, b, d)
    sz = (c > 0) - (c < 0)
    if sz == 0 or sw == sz:
        return sw
    if sw == 0:
        return sz
    # |w| vs |z|: w**2 = a**2 + b**2 d + 2ab sqrt(d), z**2 = c**2 e
    diff = _sign_single(a * a + b * b * d - c * c * e, 2 * a * b, d)
    if diff > 0:
        return sw
    if diff < 0:
        return sz
    return 0


class Surd:
    """a + b*sqrt(d) with b != 0 and d > 1 squarefree.  Use :func:`make`."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a: Fraction, b: Fraction, d: int):
        self.a = a
        self.b = b
        self.d = d

    # ---- field operations (same radicand only) ----
    def _coerce(self, other):
        if isinstance(other, Surd):
            if other.d != self.d:
                raise ValueError(
                    f"cannot combine sqrt({self.d}) and sqrt({other.d}) exactly"
                )
            return other.a, other.b
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0)
        return None

    def __add__(self, other):
        if isinstance(other, float):
            return float(self) + other
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return make(self.a + c[0], self.b + c[1], self.d)

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, float):
            return float(self) - other
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return make(self.a - c[0], self.b - c[1], self.d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, float):
            return float(self) * other
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        a, b = c
        return make(self.a * a + self.b * b * self.d, self.a * b + self.b * a, self.d)

    __rmul__ = __mul__

    def inverse(self):
        norm = self.a * self.a - self.b * self.b * self.d
        return make(self.a / norm, -self.b / norm, self.d)

    def __truediv__(self, other):
        if isinstance(other, float):
            return float(self) / other
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return make(self.a / other, self.b / other, self.d)
        if isinstance(other, Surd):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, float):
            return other / float(self)
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return float(self) ** n
        if n < 0:
            return self.inverse() ** (-n)
        out: Exact = Fraction(1)
        base: Exact = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # ---- ordering ----
    def __eq__(self, other):
        if isinstance(other, (Surd, int, Fraction)):
            return compare(self, other) == 0
        if isinstance(other, float):
            return float(self) == other
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __lt__(self, other):
        return compare(self, other) < 0

    def __le__(self, other):
        return compare(self, other) <= 0

    def __gt__(self, other):
        return compare(self, other) > 0

    def __ge__(self, other):
        return compare(self, other) >= 0

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __abs__(self):
        return -self if sign(self) < 0 else self

    def __repr__(self):
        return f"Surd({format_exact(self)})"

    def __str__(self):
        return format_exact(self)


def format_exact(x) -> str:
    """Render as 'num/den' or 'a+b*sqrt(d)' (round-trips through parse_exact)."""
    if isinstance(x, Surd):
        a = _fmt_frac(x.a)
        b = _fmt_frac(x.b)
        rad = f"{b}*sqrt({x.d})"
        if x.a == 0:
            return rad
        return f"{a}+{rad}" if x.b > 0 else f"{a}{rad}"
    if isinstance(x, float):
        return format(x, ".17g")
    return _fmt_frac(_frac(x))


def _fmt_frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


_SURD_RE = re.compile(
    r"^(?:(?P<a>[-+]?\d+(?:/\d+)?)(?=[-+]))?(?P<b>[-+]?\d+(?:/\d+)?)\*sqrt\((?P<d>\d+)\)$"
)


def parse_exact(text) -> Exact:
    """Parse 'num/den', an integer, or 'a+b*sqrt(d)'."""
    if isinstance(text, (int, Fraction, Surd)):
        return text if isinstance(text, Surd) else Fraction(text)
    if not isinstance(text, str):
        raise TypeError(f"expected an exact number string, got {text!r}")
    s = "".join(text.replace("−", "-").split())
    if "sqrt" not in s:
        return Fraction(s)
    m = _SURD_RE.match(s)
    if not m:
        raise ValueError(f"malformed exact number {text!r}")
    a = Fraction(m.group("a")) if m.group("a") else Fraction(0)
    b = Fraction(m.group("b"))
    return make(a, b, int(m.group("d")))


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, Surd))
