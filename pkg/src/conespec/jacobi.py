"""Finite spectral model of finite-energy Jacobi fields on C0 x R^k.

A field is a sum of terms c * r^gamma psi(w) p(r, y), where psi is a member
of a fixed orthonormal basis of the link eigenspace for mu(gamma) (only its
label is stored) and p is beta-harmonic with beta = 2 gamma + n0 - 2.  All
quantities here depend on psi only through L^2 orthonormality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.special import logsumexp

from .cones import QuadraticCone, bottom_eigenvalue, link_spectrum
from .degrees import Degree
from .moments import half_ball_moment, half_ball_moment_exact
from .polys import HomPolyRY, YPoly, apply_beta_operator
from .surd import Surd, compare, format_exact, parse_exact

HARMONIC_RTOL = 1e-9


def _to_exact_vector(y0) -> tuple:
    out = []
    for v in y0:
        if isinstance(v, (Fraction, Surd)):
            out.append(v)
        elif isinstance(v, float):
            out.append(Fraction(v))
        elif isinstance(v, (int, str)):
            out.append(parse_exact(v) if isinstance(v, str) else Fraction(v))
        else:
            raise TypeError(f"cannot use {v!r} as a coordinate")
    return tuple(out)


@dataclass(frozen=True)
class Term:
    degree: Degree
    label: int
    poly: HomPolyRY
    coeff: object = Fraction(1)

    @property
    def gamma(self):
        return self.degree.gamma

    @property
    def total_degree(self):
        """Homogeneity gamma + deg(p) of the term."""
        return self.degree.gamma + self.poly.degree

    @property
    def key(self) -> tuple:
        return (self.degree.mu, self.label)

    def scaled_poly(self) -> HomPolyRY:
        return self.poly.scale(self.coeff)


def _check_harmonic(poly: HomPolyRY, beta) -> bool:
    image = apply_beta_operator(poly, beta)
    if image.is_zero():
        return True
    if any(isinstance(c, float) for c in poly.coeffs.values()):
        scale = max(abs(float(c)) for c in poly.coeffs.values())
        return all(abs(float(c)) <= HARMONIC_RTOL * scale for c in image.coeffs.values())
    return False


@dataclass(frozen=True)
class SpectralJacobiField:
    cone: object
    k: int
    terms: tuple[Term, ...] = field(default_factory=tuple)

    def __post_init__(self):
        n0 = self.cone.n0
        threshold = Fraction(2 - n0, 2)
        mults: dict[Fraction, int] = {}
        for t in self.terms:
            d = t.degree
            if d.n0 != n0:
                raise ValueError(f"degree built for n0={d.n0}, cone has n0={n0}")
            if d.root != 1 or compare(d.gamma, threshold) <= 0:
                raise ValueError(
                    f"degree {format_exact(d.gamma)} is not above the threshold {threshold}"
                )
            if d.mu not in mults:
                spec = link_spectrum(self.cone, d.mu)
                if not spec or spec[-1].mu != d.mu:
                    raise ValueError(f"mu={d.mu} is not a link eigenvalue of {self.cone}")
                mults[d.mu] = spec[-1].multiplicity
            if not 0 <= t.label < mults[d.mu]:
                raise ValueError(
                    f"label {t.label} out of range for mu={d.mu} (multiplicity {mults[d.mu]})"
                )
            if t.poly.k != self.k:
                raise ValueError(f"polynomial has k={t.poly.k}, field has k={self.k}")
            if not _check_harmonic(t.poly, d.beta):
                raise ValueError(
                    f"polynomial {t.poly!r} is not beta-harmonic for beta={format_exact(d.beta)}"
                )
        object.__setattr__(self, "terms", _merge(self.terms))

    @property
    def n(self) -> int:
        return self.cone.n0 + self.k

    def is_zero(self) -> bool:
        return not self.terms

    def labels(self) -> list[tuple]:
        seen = []
        for t in self.terms:
            if t.key not in seen:
                seen.append(t.key)
        return seen

    def total_degrees(self) -> list:
        out = []
        for t in self.terms:
            d = t.total_degree
            if not any(compare(d, e) == 0 for e in out):
                out.append(d)
        return sorted(out, key=float)

    def with_terms(self, terms) -> "SpectralJacobiField":
        return SpectralJacobiField(self.cone, self.k, tuple(terms))

    def to_json(self) -> dict:
        cone = dict(self.cone.to_json()) if hasattr(self.cone, "to_json") else {"n0": self.cone.n0}
        cone["k"] = self.k
        return {
            "cone": cone,
            "terms": [
                {
                    "gamma_mu": format_exact(t.degree.mu),
                    "root": "plus",
                    "label": t.label,
                    "poly": t.poly.to_json(),
                    "coeff": format_exact(t.coeff),
                }
                for t in self.terms
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SpectralJacobiField":
        try:
            c = data["cone"]
            cone = QuadraticCone(int(c["p"]), int(c["q"]))
            k = int(c["k"])
            terms = []
            for i, t in enumerate(data["terms"]):
                if t.get("root", "plus") != "plus":
                    raise ValueError(f"term {i}: only the finite-energy root 'plus' is allowed")
                deg = Degree(parse_exact(t["gamma_mu"]), cone.n0, 1)
                poly = HomPolyRY.from_json(t["poly"])
                coeff = t.get("coeff", "1")
                coeff = coeff if isinstance(coeff, float) else parse_exact(coeff)
                terms.append(Term(deg, int(t["label"]), poly, coeff))
        except KeyError as exc:
            raise ValueError(f"missing field {exc}") from None
        return cls(cone, k, tuple(terms))


def _merge(terms) -> tuple[Term, ...]:
    """Combine terms sharing (mu, label, poly degree); drop zero terms."""
    groups: dict[tuple, list[Term]] = {}
    for t in terms:
        groups.setdefault((t.degree.mu, t.label, t.poly.degree), []).append(t)
    out = []
    for group in groups.values():
        if len(group) == 1:
            t = group[0]
            if t.coeff != 0 and not t.poly.is_zero():
                out.append(t)
            continue
        total = group[0].scaled_poly()
        for t in group[1:]:
            total = total + t.scaled_poly()
        if not total.is_zero():
            out.append(Term(group[0].degree, group[0].label, total, Fraction(1)))
    return tuple(out)


def _term_moment_float(t: Term, n0: int, k: int) -> float:
    """int over the unit half ball of r^{2 gamma + n0 - 1} (c p)^2."""
    base = 2 * float(t.gamma) + n0 - 1
    items = [(j, m, float(c)) for (j, m), c in t.poly.coeffs.items()]
    total = 0.0
    for j1, m1, c1 in items:
        for j2, m2, c2 in items:
            alpha = tuple(a + b for a, b in zip(m1, m2))
            total += c1 * c2 * half_ball_moment(base + 2 * (j1 + j2), alpha, k)
    return float(t.coeff) ** 2 * total


def _term_moment_exact(t: Term, n0: int, k: int):
    """Exact (rational, sqrt(pi) power) version; None when not available."""
    g = t.gamma
    if not isinstance(g, Fraction) or (2 * g).denominator != 1:
        return None
    coeffs = list(t.poly.coeffs.items())
    if not all(isinstance(c, Fraction) for _, c in coeffs) or not isinstance(t.coeff, (Fraction, int)):
        return None
    base = int(2 * g) + n0 - 1
    total = Fraction(0)
    power = None
    for (j1, m1), c1 in coeffs:
        for (j2, m2), c2 in coeffs:
            alpha = tuple(a + b for a, b in zip(m1, m2))
            v, p = half_ball_moment_exact(base + 2 * (j1 + j2), alpha, k)
            if v == 0:
                continue
            if power is not None and p != power:
                raise AssertionError("inconsistent sqrt(pi) powers within one term")
            power = p
            total += c1 * c2 * v
    return Fraction(t.coeff) ** 2 * total, (power or 0)


@dataclass(frozen=True)
class ExactNorm:
    """value * sqrt(pi)**pi_power."""

    value: Fraction
    pi_power: int

    def __float__(self):
        return float(self.value) * math.pi ** (self.pi_power / 2)


def l2_expansion(u: SpectralJacobiField) -> list[tuple[object, float]]:
    """[(d, C_d)] with int_{C cap B_rho} u^2 = sum_d C_d rho^{n + 2d}, d exact."""
    acc: list[list] = []
    for t in u.terms:
        d = t.total_degree
        c = _term_moment_float(t, u.cone.n0, u.k)
        for entry in acc:
            if compare(entry[0], d) == 0:
                entry[1] += c
                break
        else:
            acc.append([d, c])
    acc.sort(key=lambda e: float(e[0]))
    return [(d, c) for d, c in acc]


def l2_expansion_exact(u: SpectralJacobiField):
    """Exact coefficients [(d, ExactNorm)], or None if some degree is not a half-integer."""
    acc: list[list] = []
    for t in u.terms:
        res = _term_moment_exact(t, u.cone.n0, u.k)
        if res is None:
            return None
        d = t.total_degree
        for entry in acc:
            if entry[0] == d:
                if entry[2] != res[1] and res[0] != 0 and entry[1] != 0:
                    raise AssertionError("inconsistent sqrt(pi) powers across terms")
                entry[1] += res[0]
                break
        else:
            acc.append([d, res[0], res[1]])
    acc.sort(key=lambda e: e[0])
    return [(d, ExactNorm(v, p)) for d, v, p in acc]


def l2_norm_ball(u: SpectralJacobiField, rho: float) -> float:
    if rho <= 0:
        raise ValueError("rho must be positive")
    n = u.n
    return sum(c * rho ** (n + 2 * float(d)) for d, c in l2_expansion(u))


def l2_norm_ball_exact(u: SpectralJacobiField, rho) -> ExactNorm | None:
    """Exact norm for rational rho when every degree is an integer."""
    rho = Fraction(rho)
    exp = l2_expansion_exact(u)
    if exp is None:
        return None
    total = Fraction(0)
    power = 0
    for d, norm in exp:
        if d.denominator != 1:
            return None
        total += norm.value * rho ** (u.n + 2 * int(d))
        power = norm.pi_power
    return ExactNorm(total, power)


def _log_s(expansion, n: int, rho: float, kappa: float) -> float:
    """log of rho^{-n-2} l2(rho) + kappa rho^2, evaluated stably."""
    logs = [math.log(c) + (2 * float(d) - 2) * math.log(rho) for d, c in expansion if c > 0]
    if kappa > 0:
        logs.append(math.log(kappa) + 2 * math.log(rho))
    return float(logsumexp(np.array(logs)))


def decay_order(u: SpectralJacobiField, rho: float, kappa: float = 0.0) -> float:
    """kappa-adjusted decay order G^kappa(u; rho)."""
    if kappa < 0:
        raise ValueError("kappa must be nonnegative")
    if rho <= 0:
        raise ValueError("rho must be positive")
    if u.is_zero() and kappa == 0:
        raise ValueError("decay order undefined for the zero field")
    exp = l2_expansion(u)
    diff = _log_s(exp, u.n, 2 * rho, kappa) - _log_s(exp, u.n, rho, kappa)
    return 1 + diff / (2 * math.log(2))


@dataclass(frozen=True)
class DecayProfile:
    samples: tuple[tuple[float, float], ...]
    kappa: float
    d0: object


def decay_profile(u: SpectralJacobiField, rhos, kappa: float = 0.0) -> DecayProfile:
    exp = l2_expansion(u)
    if u.is_zero() and kappa == 0:
        raise ValueError("decay order undefined for the zero field")
    samples = []
    for rho in rhos:
        diff = _log_s(exp, u.n, 2 * rho, kappa) - _log_s(exp, u.n, rho, kappa)
        samples.append((float(rho), 1 + diff / (2 * math.log(2))))
    d0 = None if u.is_zero() else min_degree(u)
    return DecayProfile(tuple(samples), kappa, d0)


def min_degree(u: SpectralJacobiField):
    """d0(u): the smallest homogeneity present in u."""
    if u.is_zero():
        raise ValueError("d0 undefined for the zero field")
    best = None
    for t in u.terms:
        d = t.total_degree
        if best is None or compare(d, best) < 0:
            best = d
    return best


def decay_order_limit(u: SpectralJacobiField, kappa: float = 0.0):
    """Limit of G^kappa as rho -> 0: d0, or min(2, d0) when kappa > 0."""
    if kappa < 0:
        raise ValueError("kappa must be nonnegative")
    if u.is_zero():
        if kappa == 0:
            raise ValueError("decay order undefined for the zero field")
        return Fraction(2)
    d0 = min_degree(u)
    if kappa > 0 and compare(d0, 2) > 0:
        return Fraction(2)
    return d0


def recenter(u: SpectralJacobiField, y0) -> SpectralJacobiField:
    """The field (r, w, y) -> u(r, w, y0 + y), split into homogeneous pieces."""
    y0 = _to_exact_vector(y0)
    if len(y0) != u.k:
        raise ValueError(f"y0 must have length {u.k}")
    terms = []
    for t in u.terms:
        for comp in t.poly.translate_components(y0).values():
            terms.append(Term(t.degree, t.label, comp, t.coeff))
    return u.with_terms(terms)


def label_traces(u: SpectralJacobiField) -> list[tuple[Degree, int, YPoly]]:
    """For every (mu, label): the full trace polynomial sum_q c p_q(0, .)."""
    groups: dict[tuple, list] = {}
    for t in u.terms:
        entry = groups.setdefault(t.key, [t.degree, t.label, YPoly(u.k, {})])
        entry[2] = entry[2] + t.poly.trace().scale(t.coeff)
    return [tuple(v) for v in groups.values()]


def decay_order_at(u: SpectralJacobiField, y0):
    """min over labels of gamma_j + ord_{y0} of the label's trace polynomial."""
    from .splitting import ord_at

    if u.is_zero():
        raise ValueError("decay order undefined for the zero field")
    y0 = _to_exact_vector(y0)
    best = None
    for degree, _, trace in label_traces(u):
        if trace.is_zero():
            continue
        v = degree.gamma + ord_at(trace, y0)
        if best is None or compare(v, best) < 0:
            best = v
    return best


@dataclass(frozen=True)
class ComponentSplit:
    translation: SpectralJacobiField
    rotation: SpectralJacobiField
    positive: SpectralJacobiField
    remainder: SpectralJacobiField


def classify_components(u: SpectralJacobiField) -> ComponentSplit:
    """Split u into the translation, rotation, positive blocks and the rest."""
    if not getattr(u.cone, "strongly_integrable", False):
        raise ValueError("component classification requires a strongly integrable cone")
    n0 = u.cone.n0
    bottom = bottom_eigenvalue(u.cone)
    parts: dict[str, list[Term]] = {"translation": [], "rotation": [], "positive": [], "remainder": []}
    for t in u.terms:
        mu, q = t.degree.mu, t.poly.degree
        if mu == 0 and q == 0:
            parts["translation"].append(t)
        elif (mu == n0 - 1 and q == 0) or (mu == 0 and q == 1):
            parts["rotation"].append(t)
        elif mu == bottom and q == 0:
            parts["positive"].append(t)
        else:
            parts["remainder"].append(t)
    return ComponentSplit(**{name: u.with_terms(ts) for name, ts in parts.items()})


@dataclass(frozen=True)
class JacBasisElement:
    degree: Degree
    label: int
    poly: HomPolyRY

    def as_term(self, coeff=Fraction(1)) -> Term:
        return Term(self.degree, self.label, self.poly, coeff)


def jac_gamma_q_basis(cyl_spec, gamma, q: int) -> list[JacBasisElement]:
    """Basis of Jac*_{gamma,q}: every eigenfunction label times every basis polynomial."""
    from .polys import beta_harmonic_basis

    base = cyl_spec.base
    degree = base.find(gamma)
    if degree is None:
        raise ValueError(f"{format_exact(gamma)} is not a degree of the base cone")
    mult = base.multiplicity(degree.mu)
    polys = beta_harmonic_basis(degree.beta, cyl_spec.k, q)
    return [JacBasisElement(degree, lab, p) for lab in range(mult) for p in polys]
