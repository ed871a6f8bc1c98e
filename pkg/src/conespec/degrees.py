"""Homogeneity degrees of Jacobi fields, cylinder spectra, gaps and alpha.

A link eigenvalue mu yields the degrees solving g**2 + (n0-2) g = mu.  The
root above the threshold -(n0-2)/2 is the finite-energy one; every degree is
kept exactly as an element of Q(sqrt(D)) together with the rational mu it
came from, so membership questions like "is 1 a degree?" never touch floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .cones import bottom_eigenvalue, is_strictly_stable, link_spectrum
from .surd import Exact, compare, format_exact, sqrt_exact


@dataclass(frozen=True)
class Degree:
    """A root of g**2 + (n0-2) g = mu; ``root`` is +1 (finite energy) or -1."""

    mu: Fraction
    n0: int
    root: int = 1

    @cached_property
    def discriminant(self) -> Fraction:
        return Fraction((self.n0 - 2) ** 2, 4) + self.mu

    @cached_property
    def gamma(self) -> Exact:
        return Fraction(2 - self.n0, 2) + self.root * sqrt_exact(self.discriminant)

    @cached_property
    def beta(self) -> Exact:
        """Weight 2g + n0 - 2 of the associated beta-harmonic equation."""
        return 2 * self.root * sqrt_exact(self.discriminant)

    @property
    def value(self) -> float:
        return float(self.gamma)

    def __lt__(self, other: "Degree") -> bool:
        return compare(self.gamma, other.gamma) < 0

    def __str__(self):
        return format_exact(self.gamma)


def degree_of(mu, n0: int) -> Degree:
    return Degree(Fraction(mu), n0, 1)


def mu_of(gamma, n0: int):
    """Eigenvalue belonging to an exact degree: g**2 + (n0-2) g."""
    return gamma * gamma + (n0 - 2) * gamma


@dataclass(frozen=True)
class DegreeSpectrum:
    cone: object
    degrees: tuple[tuple[Degree, int], ...]
    gamma_max: object

    @property
    def n0(self) -> int:
        return self.cone.n0

    @property
    def threshold(self) -> Fraction:
        return Fraction(2 - self.cone.n0, 2)

    def values(self) -> list[Exact]:
        return [d.gamma for d, _ in self.degrees]

    def multiplicity(self, mu) -> int:
        mu = Fraction(mu)
        for d, m in self.degrees:
            if d.mu == mu:
                return m
        return 0

    def find(self, gamma) -> Degree | None:
        for d, _ in self.degrees:
            if compare(d.gamma, gamma) == 0:
                return d
        return None

    def __contains__(self, gamma) -> bool:
        return self.find(gamma) is not None

    @property
    def gamma1(self) -> Degree:
        return self.degrees[0][0]


def _mu_bound(gamma_max, n0: int) -> Fraction:
    """A rational upper bound for the eigenvalues whose degree is <= gamma_max."""
    if isinstance(gamma_max, (int, Fraction)):
        return Fraction(mu_of(Fraction(gamma_max), n0))
    g = float(gamma_max)
    return Fraction(math.ceil(g * g + (n0 - 2) * g) + 1)


def _le(x, y) -> bool:
    return compare(x, y) <= 0


def gamma_star(cone, gamma_max) -> DegreeSpectrum:
    """Finite-energy degrees of a strictly stable cone up to gamma_max."""
    if not is_strictly_stable(cone):
        raise ValueError("degree extraction requires strict stability")
    n0 = cone.n0
    threshold = Fraction(2 - n0, 2)
    out = []
    if compare(gamma_max, threshold) > 0:
        for ev in link_spectrum(cone, _mu_bound(gamma_max, n0)):
            d = Degree(ev.mu, n0, 1)
            if _le(d.gamma, gamma_max):
                out.append((d, ev.multiplicity))
    return DegreeSpectrum(cone, tuple(out), gamma_max)


def gamma_full(cone, lo, hi) -> list[tuple[Degree, int]]:
    """Both roots for every eigenvalue, restricted to [lo, hi].

    The conjugate roots decrease without bound as mu grows, so the lower end
    of the window controls how much of the spectrum is needed.
    """
    n0 = cone.n0
    # both ends map to the same eigenvalue bound lo**2 + (n0-2) lo
    bound = max(_mu_bound(hi, n0), _mu_bound(lo, n0))
    out = []
    for ev in link_spectrum(cone, bound):
        for root in (-1, 1):
            if root == -1 and ev.mu == -Fraction((n0 - 2) ** 2, 4):
                continue
            if Fraction((n0 - 2) ** 2, 4) + ev.mu < 0:
                continue
            d = Degree(ev.mu, n0, root)
            if _le(lo, d.gamma) and _le(d.gamma, hi):
                out.append((d, ev.multiplicity))
    out.sort(key=lambda t: t[0].value)
    return out


@dataclass(frozen=True)
class CylinderDegree:
    """A degree g + q of the cylinder, with every (base degree, q) producing it."""

    value: Exact
    sources: tuple[tuple[Degree, int], ...]

    def __float__(self):
        return float(self.value)


@dataclass(frozen=True)
class CylinderSpectrum:
    base: DegreeSpectrum
    k: int
    lo: object
    hi: object
    degrees: tuple[CylinderDegree, ...]

    def values(self) -> list[Exact]:
        return [c.value for c in self.degrees]

    def __contains__(self, x) -> bool:
        return any(compare(c.value, x) == 0 for c in self.degrees)


def cylinder_spectrum(base: DegreeSpectrum, k: int, window) -> CylinderSpectrum:
    """Degrees of the cylinder over ``base`` with a k-dimensional spine in window."""
    lo, hi = window
    if k < 0:
        raise ValueError("k must be nonnegative")
    if compare(base.gamma_max, hi) < 0:
        base = gamma_star(base.cone, hi)
    found: dict[Exact, list[tuple[Degree, int]]] = {}
    for d, _ in base.degrees:
        g = d.gamma
        if compare(g, hi) > 0:
            continue
        if k == 0:
            qs = [0]
        else:
            q0 = max(0, math.ceil(float(lo - g)) - 1)
            qs = range(q0, math.floor(float(hi - g)) + 2)
        for q in qs:
            v = g + q
            if _le(lo, v) and _le(v, hi):
                found.setdefault(v, []).append((d, q))
    entries = tuple(
        CylinderDegree(v, tuple(found[v]))
        for v in sorted(found, key=_SortKey)
    )
    return CylinderSpectrum(base, k, lo, hi, entries)


class _SortKey:
    """Exact ordering key for mixed rationals and surds."""

    __slots__ = ("x",)

    def __init__(self, x):
        self.x = x

    def __lt__(self, other):
        return compare(self.x, other.x) < 0


@dataclass(frozen=True)
class GapPair:
    delta_below: Exact
    delta_above: Exact

    def as_floats(self) -> tuple[float, float]:
        return float(self.delta_below), float(self.delta_above)


def gaps(cyl: CylinderSpectrum) -> GapPair:
    """Spectral gaps of the cylinder spectrum on either side of the degree 1."""
    if compare(cyl.lo, -1) > 0 or compare(cyl.hi, 3) < 0:
        raise ValueError("gap computation needs a window containing [-1, 3]")
    below = [v for v in cyl.values() if compare(v, 1) < 0]
    above = [v for v in cyl.values() if compare(v, 1) > 0]
    if not below or not above:
        raise ValueError("window too small: no degree on one side of 1")
    top = max(below, key=_SortKey)
    bottom = min(above, key=_SortKey)
    return GapPair(1 - top, bottom - 1)


def default_window(cone) -> tuple[Fraction, Fraction]:
    return min(Fraction(-1), Fraction(2 - cone.n0, 2)), Fraction(3)


def cylinder_gaps(cone, k: int) -> GapPair:
    """Gaps of cone x R^k (the spectrum window is chosen automatically)."""
    lo, hi = default_window(cone)
    return gaps(cylinder_spectrum(gamma_star(cone, hi), k, (lo, hi)))


def alpha(cone, k: int = 0) -> Exact:
    """Decay exponent -gamma_1 of positive Jacobi fields.

    The value does not depend on the spine dimension k of a cylinder.
    """
    if not is_strictly_stable(cone):
        raise ValueError("degree extraction requires strict stability")
    return -Degree(bottom_eigenvalue(cone), cone.n0, 1).gamma


def alpha_n(n: int) -> Exact:
    """(n-2)/2 - sqrt((n-2)**2/4 - (n-1)), the minimal alpha in dimension n."""
    disc = Fraction((n - 2) ** 2, 4) - (n - 1)
    if disc < 0:
        raise ValueError("discriminant negative")
    return Fraction(n - 2, 2) - sqrt_exact(disc)
