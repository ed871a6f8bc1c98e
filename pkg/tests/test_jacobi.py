from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from conespec.acceptance import mixed_fields, quadrature_norm, random_field
from conespec.cones import QuadraticCone
from conespec.degrees import cylinder_spectrum, degree_of, gamma_star
from conespec.jacobi import (
    SpectralJacobiField,
    Term,
    classify_components,
    decay_order,
    decay_order_at,
    decay_order_limit,
    jac_gamma_q_basis,
    l2_norm_ball,
    l2_norm_ball_exact,
    min_degree,
    recenter,
)
from conespec.polys import HomPolyRY, YPoly, extend_from_trace, is_beta_harmonic

SIMONS = QuadraticCone(3, 3)
BOTTOM = degree_of(-6, 7)
ZERO = degree_of(0, 7)
ONE = degree_of(6, 7)


def P(k, degree, items):
    return HomPolyRY(k, degree, {key: Fraction(v) for key, v in items.items()})


def field(k, *terms):
    return SpectralJacobiField(SIMONS, k, tuple(terms))


Y3 = P(1, 3, {(0, (3,)): 1, (1, (1,)): -1})
U_SLOW = field(1, Term(BOTTOM, 0, Y3))
CONST1 = P(1, 0, {(0, (0,)): 1})

seeds = st.integers(0, 2**32 - 1)


def test_slow_field_norm_exact():
    # oracle: sympy in polar coordinates on the half disk, weight r^6 * r^-4
    t, s = sp.symbols("t s", positive=True)
    r, y = s * sp.cos(t), s * sp.sin(t)
    integrand = r**2 * (y**3 - r**2 * y) ** 2 * s
    want = sp.integrate(sp.integrate(sp.expand(integrand), (s, 0, 1)), (t, -sp.pi / 2, sp.pi / 2))
    got = l2_norm_ball_exact(U_SLOW, 1)
    assert sp.nsimplify(got.value) * sp.sqrt(sp.pi) ** got.pi_power == sp.simplify(want)
    assert math.isclose(l2_norm_ball(U_SLOW, 1.0), float(want), rel_tol=1e-14)


@pytest.mark.parametrize("u", mixed_fields(), ids=["simons-k1", "simons-k2", "c24-k1"])
def test_norm_against_quadrature(u):
    assert math.isclose(l2_norm_ball(u, 1.0), quadrature_norm(u), rel_tol=1e-8)


def test_orthogonality_of_degrees():
    a = field(1, Term(BOTTOM, 0, Y3))
    b = field(1, Term(ONE, 3, CONST1, Fraction(2)))
    both = field(1, *a.terms, *b.terms)
    assert math.isclose(l2_norm_ball(both, 0.7), l2_norm_ball(a, 0.7) + l2_norm_ball(b, 0.7), rel_tol=1e-14)


@pytest.mark.parametrize("t", [Fraction(1, 3), Fraction(2), Fraction(5, 2)])
def test_scaling_law_exact(t):
    for u in (U_SLOW, field(1, Term(ONE, 2, CONST1))):
        d = u.terms[0].total_degree
        assert l2_norm_ball_exact(u, t).value == t ** (u.n + 2 * d) * l2_norm_ball_exact(u, 1).value


def test_irrational_degree_has_no_exact_norm():
    assert l2_norm_ball_exact(mixed_fields()[2], 1) is None


@pytest.mark.parametrize("rho", [1e-6, 0.01, 0.3, 0.5])
def test_homogeneous_decay_order(rho):
    assert math.isclose(decay_order(U_SLOW, rho), 1.0, abs_tol=1e-12)
    u = field(1, Term(BOTTOM, 0, CONST1))
    assert math.isclose(decay_order(u, rho), -2.0, abs_tol=1e-12)


def test_zero_field():
    zero = field(1)
    assert math.isclose(decay_order(zero, 0.1, kappa=1.0), 2.0, abs_tol=1e-12)
    assert decay_order_limit(zero, 1.0) == 2
    with pytest.raises(ValueError, match="zero field"):
        decay_order(zero, 0.1)


def two_term_oracle(A, B, rho, n=8):
    """G for A r^-2 psi_1 + B r psi_mu=6 with k=1 from the two single-term norms."""
    c1 = l2_norm_ball(field(1, Term(BOTTOM, 0, CONST1)), 1.0)
    c2 = l2_norm_ball(field(1, Term(ONE, 0, CONST1)), 1.0)
    l2 = lambda s: A * A * c1 * s ** (n - 4) + B * B * c2 * s ** (n + 2)
    H = lambda s: l2(s) / s ** (n + 2)
    return 1 + math.log(H(2 * rho) / H(rho)) / (2 * math.log(2))


@pytest.mark.parametrize("A, B", [(1, 1), (1e-3, 5), (2, 0.5)])
@pytest.mark.parametrize("rho", [0.01, 0.1, 0.4])
def test_two_term_closed_form(A, B, rho):
    u = field(1, Term(BOTTOM, 0, CONST1, Fraction(A)), Term(ONE, 0, CONST1, Fraction(B)))
    assert math.isclose(decay_order(u, rho), two_term_oracle(A, B, rho), rel_tol=1e-11)


def test_limits():
    u = field(1, Term(BOTTOM, 0, CONST1), Term(ONE, 0, CONST1))
    assert decay_order_limit(u, 0) == -2
    assert decay_order_limit(u, 1) == -2
    v = field(1, Term(ONE, 0, P(1, 2, {(0, (2,)): 1, (1, (0,)): Fraction(-1, 9)})),
              Term(ONE, 1, extend_from_trace(YPoly.monomial((4,)), ONE.beta)))
    assert [float(d) for d in v.total_degrees()] == [3.0, 5.0]
    assert decay_order_limit(v, 1) == 2
    assert decay_order_limit(v, 0) == 3


@settings(max_examples=30, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(seeds, st.sampled_from([0.0, 1.0]))
def test_monotone_and_convex(seed, kappa):
    u = random_field(np.random.default_rng(seed))
    rhos = [2.0**-e for e in range(20, 0, -1)]
    g = [decay_order(u, r, kappa) for r in rhos]
    assert all(b >= a - 1e-10 for a, b in zip(g, g[1:]))
    ts = np.linspace(-12, 0, 40)
    f = [math.log(l2_norm_ball(u, math.exp(t)) + kappa * math.exp((u.n + 4) * t)) for t in ts]
    second = np.diff(f, 2)
    assert (second >= -1e-9).all()


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_constancy_rigidity(seed):
    u = random_field(np.random.default_rng(seed))
    g = [decay_order(u, r) for r in (1e-4, 1e-2, 0.3)]
    single = len(u.total_degrees()) == 1
    assert (max(g) - min(g) < 1e-9) == single


def test_recenter_examples():
    assert recenter(U_SLOW, [0]).terms == U_SLOW.terms
    w = recenter(U_SLOW, [1])
    assert sorted(t.poly.degree for t in w.terms) == [0, 1, 2, 3]
    for t in w.terms:
        assert is_beta_harmonic(t.poly, Fraction(1))
    # (y+1)^3 - r^2 (y+1)
    want = {0: P(1, 0, {(0, (0,)): 1}), 1: P(1, 1, {(0, (1,)): 3}),
            2: P(1, 2, {(0, (2,)): 3, (1, (0,)): -1}), 3: Y3}
    assert {t.poly.degree: t.scaled_poly() for t in w.terms} == want


@pytest.mark.parametrize("y0, want", [([0], 1), ([1], -2), ([Fraction(-3, 2)], -2)])
def test_decay_order_at_examples(y0, want):
    assert decay_order_at(U_SLOW, y0) == want


def test_decay_order_at_poly_free():
    u = field(2, Term(ZERO, 4, P(2, 0, {(0, (0, 0)): 1})))
    assert decay_order_at(u, [3, -1]) == 0


@settings(max_examples=25, deadline=None)
@given(seeds, st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=4), min_size=3, max_size=3))
def test_decay_order_at_matches_recenter(seed, y0):
    u = random_field(np.random.default_rng(seed))
    y0 = y0[: u.k]
    assert decay_order_at(u, y0) == min_degree(recenter(u, y0))


def test_classify_components():
    pos = field(1, Term(BOTTOM, 0, CONST1))
    split = classify_components(pos)
    assert split.positive.terms == pos.terms
    assert split.translation.is_zero() and split.rotation.is_zero() and split.remainder.is_zero()
    rot = field(1, Term(ZERO, 2, P(1, 1, {(0, (1,)): 1})))
    assert not classify_components(rot).rotation.is_zero()
    assert classify_components(U_SLOW).remainder.terms == U_SLOW.terms
    trl = field(1, Term(ZERO, 1, CONST1))
    assert classify_components(trl).translation.terms == trl.terms


def test_jac_basis():
    cyl = cylinder_spectrum(gamma_star(SIMONS, 3), 1, (-2, 3))
    b = jac_gamma_q_basis(cyl, Fraction(-2), 3)
    assert len(b) == 1 and b[0].poly == Y3 and b[0].degree.beta == 1
    assert len(jac_gamma_q_basis(cyl, Fraction(0), 0)) == 8
    assert len(jac_gamma_q_basis(cyl, Fraction(-2), 0)) == 1
    with pytest.raises(ValueError):
        jac_gamma_q_basis(cyl, Fraction(1, 2), 0)


def test_json_roundtrip():
    for u in mixed_fields() + [U_SLOW]:
        v = SpectralJacobiField.from_json(u.to_json())
        assert v.terms == u.terms
    data = U_SLOW.to_json()
    assert data["cone"] == {"p": 3, "q": 3, "k": 1}
    assert data["terms"][0]["gamma_mu"] == "-6" and data["terms"][0]["root"] == "plus"


@pytest.mark.parametrize(
    "make, match",
    [
        (lambda: field(1, Term(degree_of(5, 7), 0, CONST1)), "not a link eigenvalue"),
        (lambda: field(1, Term(ZERO, 8, CONST1)), "label 8 out of range"),
        (lambda: field(1, Term(BOTTOM, 0, P(1, 2, {(0, (2,)): 1}))), "not beta-harmonic"),
        (lambda: field(2, Term(BOTTOM, 0, CONST1)), "k=1"),
        (lambda: field(1, Term(degree_of(-6, 8), 0, CONST1)), "n0"),
    ],
)
def test_validation(make, match):
    with pytest.raises(ValueError, match=match):
        make()


def test_merge_cancels():
    u = field(1, Term(ONE, 0, CONST1), Term(ONE, 0, CONST1, Fraction(-1)))
    assert u.is_zero()
