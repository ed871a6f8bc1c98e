"""Polynomials in y and homogeneous polynomials in (r, y) with even r-powers.

Coefficients may be Fractions, exact surds (conespec.surd) or floats; all
operations only use field arithmetic, so exact inputs give exact outputs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterator

from .surd import compare, format_exact, parse_exact

Multi = tuple[int, ...]


def monomials(k: int, q: int) -> Iterator[Multi]:
    """Exponent vectors of degree q in k variables, lexicographically descending."""
    if k == 0:
        if q == 0:
            yield ()
        return
    if k == 1:
        yield (q,)
        return
    for e in range(q, -1, -1):
        for rest in monomials(k - 1, q - e):
            yield (e,) + rest


def _is_zero(c) -> bool:
    return c == 0


def _clean(coeffs: dict) -> dict:
    return {m: c for m, c in coeffs.items() if not _is_zero(c)}


@dataclass(frozen=True)
class YPoly:
    """Polynomial in y_1..y_k stored as {exponent vector: coefficient}."""

    k: int
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        for m in self.coeffs:
            if len(m) != self.k or any(e < 0 for e in m):
                raise ValueError(f"bad exponent {m} for k={self.k}")
        object.__setattr__(self, "coeffs", _clean(dict(self.coeffs)))

    @classmethod
    def monomial(cls, alpha: Multi, c=Fraction(1)) -> "YPoly":
        return cls(len(alpha), {tuple(alpha): c})

    @classmethod
    def constant(cls, k: int, c=Fraction(1)) -> "YPoly":
        return cls(k, {(0,) * k: c})

    def is_zero(self) -> bool:
        return not self.coeffs

    def degrees(self) -> set[int]:
        return {sum(m) for m in self.coeffs}

    @property
    def total_degree(self) -> int:
        return max(self.degrees(), default=0)

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def __add__(self, other: "YPoly") -> "YPoly":
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out[m] + c if m in out else c
        return YPoly(self.k, out)

    def __neg__(self) -> "YPoly":
        return YPoly(self.k, {m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other: "YPoly") -> "YPoly":
        return self + (-other)

    def scale(self, c) -> "YPoly":
        return YPoly(self.k, {m: v * c for m, v in self.coeffs.items()})

    def __mul__(self, other: "YPoly") -> "YPoly":
        out: dict = {}
        for m1, c1 in self.coeffs.items():
            for m2, c2 in other.coeffs.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out[m] + c1 * c2 if m in out else c1 * c2
        return YPoly(self.k, out)

    def __eq__(self, other):
        if not isinstance(other, YPoly):
            return NotImplemented
        return self.k == other.k and (self - other).is_zero()

    def __hash__(self):
        return hash((self.k, frozenset(self.coeffs)))

    def diff(self, i: int, times: int = 1) -> "YPoly":
        out: dict = {}
        for m, c in self.coeffs.items():
            if m[i] < times:
                continue
            f = 1
            for t in range(times):
                f *= m[i] - t
            mm = list(m)
            mm[i] -= times
            mm = tuple(mm)
            out[mm] = out[mm] + f * c if mm in out else f * c
        return YPoly(self.k, out)

    def diff_multi(self, alpha: Multi) -> "YPoly":
        p = self
        for i, a in enumerate(alpha):
            if a:
                p = p.diff(i, a)
        return p

    def laplacian(self) -> "YPoly":
        out = YPoly(self.k, {})
        for i in range(self.k):
            out = out + self.diff(i, 2)
        return out

    def evaluate(self, y):
        total = 0
        for m, c in self.coeffs.items():
            term = c
            for yi, e in zip(y, m):
                if e:
                    term = term * yi**e
            total = total + term
        return total

    def translate(self, y0) -> "YPoly":
        """The polynomial y -> p(y0 + y)."""
        if len(y0) != self.k:
            raise ValueError("translation vector has the wrong length")
        out: dict = {}
        for m, c in self.coeffs.items():
            ranges = [range(e + 1) for e in m]
            for b in itertools.product(*ranges):
                term = c
                for e, bi, yi in zip(m, b, y0):
                    if bi < e:
                        term = term * comb(e, bi) * yi ** (e - bi)
                if _is_zero(term):
                    continue
                b = tuple(b)
                out[b] = out[b] + term if b in out else term
        return YPoly(self.k, out)

    def homogeneous_part(self, d: int) -> "YPoly":
        return YPoly(self.k, {m: c for m, c in self.coeffs.items() if sum(m) == d})

    def sorted_terms(self) -> list[tuple[Multi, object]]:
        return sorted(self.coeffs.items(), key=lambda t: (sum(t[0]), [-e for e in t[0]]))

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "coeffs": [{"alpha": list(m), "c": format_exact(c)} for m, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "YPoly":
        return cls(int(data["k"]), {tuple(t["alpha"]): _parse_coeff(t["c"]) for t in data["coeffs"]})

    def __repr__(self):
        return f"YPoly({_render(self.sorted_terms(), lambda m: _ystr(m))})"


def _parse_coeff(c):
    if isinstance(c, float):
        return c
    return parse_exact(c)


def _ystr(m: Multi) -> str:
    parts = []
    for i, e in enumerate(m):
        if e == 1:
            parts.append(f"y{i + 1}")
        elif e > 1:
            parts.append(f"y{i + 1}^{e}")
    return "*".join(parts)


def _render(terms, mono) -> str:
    if not terms:
        return "0"
    out = []
    for m, c in terms:
        name = mono(m)
        cs = format_exact(c)
        out.append(cs if not name else (name if cs == "1" else f"({cs})*{name}"))
    return " + ".join(out)


@dataclass(frozen=True)
class HomPolyRY:
    """Homogeneous polynomial sum c * r^{2j} y^alpha of degree 2j + |alpha|."""

    k: int
    degree: int
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.k < 0 or self.degree < 0:
            raise ValueError("k and degree must be nonnegative")
        for (j, alpha) in self.coeffs:
            if len(alpha) != self.k or j < 0 or 2 * j + sum(alpha) != self.degree:
                raise ValueError(
                    f"monomial r^{2 * j} y^{alpha} does not have degree {self.degree}"
                )
        object.__setattr__(self, "coeffs", _clean(dict(self.coeffs)))

    @classmethod
    def zero(cls, k: int, degree: int) -> "HomPolyRY":
        return cls(k, degree, {})

    @classmethod
    def from_blocks(cls, k: int, degree: int, blocks: dict[int, YPoly]) -> "HomPolyRY":
        coeffs = {}
        for j, poly in blocks.items():
            for m, c in poly.coeffs.items():
                coeffs[(j, m)] = c
        return cls(k, degree, coeffs)

    def blocks(self) -> dict[int, YPoly]:
        """The y-polynomial multiplying r^{2j}, for every j that occurs."""
        out: dict[int, dict] = {}
        for (j, m), c in self.coeffs.items():
            out.setdefault(j, {})[m] = c
        return {j: YPoly(self.k, cs) for j, cs in sorted(out.items())}

    def trace(self) -> YPoly:
        """Restriction to r = 0."""
        return YPoly(self.k, {m: c for (j, m), c in self.coeffs.items() if j == 0})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "HomPolyRY") -> "HomPolyRY":
        if (self.k, self.degree) != (other.k, other.degree):
            if self.is_zero():
                return other
            if other.is_zero():
                return self
            raise ValueError("cannot add polynomials of different degree")
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out[m] + c if m in out else c
        return HomPolyRY(self.k, self.degree, out)

    def scale(self, c) -> "HomPolyRY":
        return HomPolyRY(self.k, self.degree, {m: v * c for m, v in self.coeffs.items()})

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, HomPolyRY):
            return NotImplemented
        if self.k != other.k:
            return False
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and (self - other).is_zero()

    def __hash__(self):
        return hash((self.k, self.degree, frozenset(self.coeffs)))

    def evaluate(self, r, y):
        total = 0
        for (j, m), c in self.coeffs.items():
            term = c * r ** (2 * j)
            for yi, e in zip(y, m):
                if e:
                    term = term * yi**e
            total = total + term
        return total

    def translate_components(self, y0) -> dict[int, "HomPolyRY"]:
        """Homogeneous components of (r, y) -> p(r, y0 + y), keyed by degree."""
        comps: dict[int, dict] = {}
        for j, block in self.blocks().items():
            for m, c in block.translate(y0).coeffs.items():
                d = 2 * j + sum(m)
                comps.setdefault(d, {})[(j, m)] = c
        return {d: HomPolyRY(self.k, d, cs) for d, cs in sorted(comps.items())}

    def sorted_terms(self):
        return sorted(self.coeffs.items(), key=lambda t: (t[0][0], [-e for e in t[0][1]]))

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "degree": self.degree,
            "coeffs": [
                {"j": j, "alpha": list(m), "c": format_exact(c)}
                for (j, m), c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "HomPolyRY":
        try:
            k = int(data["k"])
            degree = int(data["degree"])
            coeffs = {}
            for t in data["coeffs"]:
                key = (int(t["j"]), tuple(int(a) for a in t["alpha"]))
                coeffs[key] = _parse_coeff(t["c"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed polynomial: missing or bad field {exc}") from None
        return cls(k, degree, coeffs)

    def __repr__(self):
        def mono(key):
            j, m = key
            rs = "" if j == 0 else ("r^2" if j == 1 else f"r^{2 * j}")
            ys = _ystr(m)
            return "*".join(s for s in (rs, ys) if s)

        return f"HomPolyRY({_render(self.sorted_terms(), mono)})"


def apply_beta_operator(p: HomPolyRY, beta) -> HomPolyRY:
    """(d_r^2 + (1+beta)/r d_r + Delta_y) p.

    On monomials r^{2j} the radial part acts as 2j (2j + beta) r^{2j-2}.
    """
    out: dict = {}

    def add(key, v):
        out[key] = out[key] + v if key in out else v

    for (j, m), c in p.coeffs.items():
        if j >= 1:
            add((j - 1, m), c * (2 * j) * (2 * j + beta))
        for i, e in enumerate(m):
            if e >= 2:
                mm = list(m)
                mm[i] -= 2
                add((j, tuple(mm)), c * e * (e - 1))
    return HomPolyRY(p.k, max(p.degree - 2, 0), out if p.degree >= 2 else {})


def _require_positive(beta):
    if compare(beta, 0) <= 0:
        raise ValueError(f"beta must be positive, got {format_exact(beta)}")


def extend_from_trace(h0: YPoly, beta) -> HomPolyRY:
    """The unique beta-harmonic even-in-r polynomial with p(0, .) = h0."""
    _require_positive(beta)
    if not h0.is_homogeneous():
        raise ValueError("trace must be a homogeneous polynomial")
    q = h0.total_degree
    blocks = {0: h0}
    j = 0
    current = h0
    while not current.is_zero() and 2 * j + 2 <= q:
        denom = (2 * j + 2) * (2 * j + 2 + beta)
        if denom == 0:
            raise ValueError(f"recursion hits a zero denominator at j={j}")
        current = current.laplacian().scale(Fraction(-1) / denom)
        j += 1
        if not current.is_zero():
            blocks[j] = current
    return HomPolyRY.from_blocks(h0.k, q, blocks)


def beta_harmonic_basis(beta, k: int, q: int) -> list[HomPolyRY]:
    """Trace-monic basis of the degree-q beta-harmonic space, one element per trace monomial."""
    _require_positive(beta)
    if k == 0:
        return [HomPolyRY(0, 0, {(0, ()): Fraction(1)})] if q == 0 else []
    return [extend_from_trace(YPoly.monomial(m), beta) for m in monomials(k, q)]


def is_beta_harmonic(p: HomPolyRY, beta) -> bool:
    return apply_beta_operator(p, beta).is_zero()
