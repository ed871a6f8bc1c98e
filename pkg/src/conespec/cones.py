"""Quadratic hypercones C_{p,q} and the spectrum of their link Jacobi operator.

The link of C_{p,q} is S^p(sqrt(p/(p+q))) x S^q(sqrt(q/(p+q))) and carries the
constant |A|^2 = p + q.  A spherical harmonic of bidegree (a, b) is an
eigenfunction of -(Delta + |A|^2) with eigenvalue

    mu(a, b) = (p+q) * (a(a+p-1)/p + b(b+q-1)/q) - (p+q).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb


def harmonic_dim(m: int, d: int) -> int:
    """Dimension of degree-m spherical harmonics on S^d."""
    if m < 0:
        return 0
    lower = comb(m + d - 2, d) if m >= 2 else 0
    return comb(m + d, d) - lower


@dataclass(frozen=True)
class LinkEigenvalue:
    mu: Fraction
    multiplicity: int
    modes: tuple[tuple[int, int], ...] = ()


@dataclass(frozen=True)
class QuadraticCone:
    """C_{p,q} = {(x, y) in R^{p+1} x R^{q+1} : q|x|^2 = p|y|^2}."""

    p: int
    q: int

    def __post_init__(self):
        for name in ("p", "q"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise ValueError(f"{name} must be a positive integer, got {v!r}")

    @property
    def n0(self) -> int:
        return self.p + self.q + 1

    @property
    def second_fund_sq(self) -> int:
        return self.p + self.q

    @property
    def link_radii_sq(self) -> tuple[Fraction, Fraction]:
        s = self.p + self.q
        return Fraction(self.p, s), Fraction(self.q, s)

    @property
    def strongly_integrable(self) -> bool:
        return True

    @property
    def minimizing(self) -> bool:
        return classify(self)["minimizing"]

    def mode_eigenvalue(self, a: int, b: int) -> Fraction:
        s = self.p + self.q
        return s * (Fraction(a * (a + self.p - 1), self.p) + Fraction(b * (b + self.q - 1), self.q)) - s

    def mode_multiplicity(self, a: int, b: int) -> int:
        return harmonic_dim(a, self.p) * harmonic_dim(b, self.q)

    def link_spectrum(self, mu_max) -> list[LinkEigenvalue]:
        mu_max = Fraction(mu_max)
        found: dict[Fraction, list[tuple[int, int]]] = {}
        a = 0
        # mu is increasing in a and in b separately, so the shells terminate
        while self.mode_eigenvalue(a, 0) <= mu_max:
            b = 0
            while (mu := self.mode_eigenvalue(a, b)) <= mu_max:
                found.setdefault(mu, []).append((a, b))
                b += 1
            a += 1
        out = []
        for mu in sorted(found):
            modes = tuple(found[mu])
            mult = sum(self.mode_multiplicity(a, b) for a, b in modes)
            out.append(LinkEigenvalue(mu, mult, modes))
        return out

    def to_json(self) -> dict:
        return {"p": self.p, "q": self.q}

    def __str__(self):
        return f"C({self.p},{self.q})"


@dataclass(frozen=True)
class RegularCone:
    """A regular cone whose link spectrum is supplied by the caller.

    ``eigenvalues`` must list every eigenvalue up to ``known_up_to``; asking
    for more of the spectrum than that is an error rather than a silent
    truncation.
    """

    n0: int
    eigenvalues: tuple[LinkEigenvalue, ...]
    known_up_to: Fraction
    minimizing: bool = True
    strongly_integrable: bool = False
    name: str = "regular"

    def __post_init__(self):
        mus = [e.mu for e in self.eigenvalues]
        if mus != sorted(mus) or len(set(mus)) != len(mus):
            raise ValueError("eigenvalues must be strictly increasing")
        if not mus:
            raise ValueError("at least the bottom eigenvalue is required")

    def link_spectrum(self, mu_max) -> list[LinkEigenvalue]:
        mu_max = Fraction(mu_max)
        if mu_max > self.known_up_to:
            raise ValueError(
                f"spectrum of {self.name} only known up to {self.known_up_to}"
            )
        return [e for e in self.eigenvalues if e.mu <= mu_max]

    def __str__(self):
        return self.name


def link_spectrum(cone, mu_max) -> list[LinkEigenvalue]:
    """All link eigenvalues mu <= mu_max with multiplicities, increasing."""
    return cone.link_spectrum(mu_max)


def bottom_eigenvalue(cone) -> Fraction:
    if isinstance(cone, QuadraticCone):
        return Fraction(-cone.second_fund_sq)
    return cone.eigenvalues[0].mu


def is_strictly_stable(cone) -> bool:
    n0 = cone.n0
    return bottom_eigenvalue(cone) + Fraction((n0 - 2) ** 2, 4) > 0


def classify(cone: QuadraticCone) -> dict:
    s = cone.p + cone.q
    stable = s >= 6
    minimizing = stable and (cone.p, cone.q) not in {(1, 5), (5, 1)}
    n0 = cone.n0
    strictly = Fraction((n0 - 2) ** 2, 4) > n0 - 1
    return {"stable": stable, "minimizing": minimizing, "strictlyStable": strictly}


def quadratic_cones(n0: int, minimizing_only: bool = True) -> list[QuadraticCone]:
    """All C_{p,q} with p + q + 1 = n0."""
    out = []
    for p in range(1, n0 - 1):
        c = QuadraticCone(p, n0 - 1 - p)
        if not minimizing_only or classify(c)["minimizing"]:
            out.append(c)
    return out


def parse_cone(text: str) -> QuadraticCone:
    """Parse 'P,Q'."""
    try:
        p, q = (int(t) for t in text.split(","))
    except ValueError:
        raise ValueError(f"cone must be given as P,Q, got {text!r}") from None
    return QuadraticCone(p, q)
