from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conespec.cones import QuadraticCone, RegularCone, LinkEigenvalue, link_spectrum, quadratic_cones
from conespec.degrees import (
    Degree,
    alpha,
    alpha_n,
    cylinder_gaps,
    cylinder_spectrum,
    degree_of,
    gamma_full,
    gamma_star,
    gaps,
    mu_of,
)
from conespec.surd import compare, make

SIMONS = QuadraticCone(3, 3)
C24 = QuadraticCone(2, 4)


def root_oracle(mu, n0: int) -> float:
    return (2 - n0) / 2 + math.sqrt((n0 - 2) ** 2 / 4 + float(mu))


@given(st.fractions(min_value=-6, max_value=200, max_denominator=12), st.integers(7, 30))
def test_degree_solves_indicial_equation(mu, n0):
    d = degree_of(mu, n0)
    assert mu_of(d.gamma, n0) == mu
    assert math.isclose(d.value, root_oracle(mu, n0), rel_tol=1e-12, abs_tol=1e-12)


def test_simons_degrees():
    spec = gamma_star(SIMONS, 1)
    assert [(d.gamma, m) for d, m in spec.degrees] == [(-2, 1), (0, 8), (1, 16)]
    assert spec.gamma1.gamma == -2
    assert 1 in spec and Fraction(1, 2) not in spec


def test_c24_irrational_degrees():
    spec = gamma_star(C24, 2)
    vals = spec.values()
    assert make(Fraction(-5, 2), Fraction(1, 2), 73) in vals
    assert make(Fraction(-5, 2), Fraction(1, 2), 61) in vals
    assert spec.find(make(Fraction(-5, 2), Fraction(1, 2), 61)).mu == 9


def test_gamma_star_rejects_unstable():
    unstable = RegularCone(7, (LinkEigenvalue(Fraction(-7), 1),), Fraction(10), True, False, "unstable")
    with pytest.raises(ValueError, match="strict stability"):
        gamma_star(unstable, 1)


def test_gamma_full_has_conjugate_roots():
    full = gamma_full(SIMONS, -6, 1)
    vals = sorted(float(d.gamma) for d, _ in full)
    assert -5.0 in vals and -3.0 in vals and -2.0 in vals


def cylinder_oracle(cone, k: int, lo: float, hi: float) -> list[float]:
    """All gamma + q in [lo, hi] from a float enumeration of the spectrum."""
    out = set()
    for ev in link_spectrum(cone, Fraction(200)):
        g = root_oracle(ev.mu, cone.n0)
        for q in range(0, 12 if k else 1):
            if lo - 1e-12 <= g + q <= hi + 1e-12:
                out.add(round(g + q, 10))
    return sorted(out)


@pytest.mark.parametrize("cone", [SIMONS, C24, QuadraticCone(1, 6), QuadraticCone(3, 4)])
@pytest.mark.parametrize("k", [0, 1, 3])
def test_cylinder_spectrum_against_enumeration(cone, k):
    base = gamma_star(cone, 3)
    lo = Fraction(2 - cone.n0, 2)
    cyl = cylinder_spectrum(base, k, (lo, Fraction(3)))
    got = [round(float(v), 10) for v in cyl.values()]
    assert got == cylinder_oracle(cone, k, float(lo), 3.0)


def test_simons_window_zero_one():
    cyl = cylinder_spectrum(gamma_star(SIMONS, 1), 3, (0, 1))
    assert cyl.values() == [0, 1]


def test_simons_window_one_two():
    cyl = cylinder_spectrum(gamma_star(SIMONS, 2), 1, (1, 2))
    assert cyl.values()[:3] == [1, make(Fraction(-5, 2), Fraction(1, 2), 65), 2]


@pytest.mark.parametrize(
    "cone, below, above",
    [
        (SIMONS, Fraction(1), make(Fraction(-7, 2), Fraction(1, 2), 65)),
        (C24, Fraction(1), make(Fraction(-7, 2), Fraction(1, 2), 61)),
        (QuadraticCone(3, 4), None, make(-1, 1, 2)),
    ],
)
def test_gaps(cone, below, above):
    g = cylinder_gaps(cone, 1)
    if below is not None:
        assert g.delta_below == below
    assert g.delta_above == above
    lo, hi = g.as_floats()
    assert 0 < lo <= 1 and 0 < hi <= 1


@pytest.mark.parametrize("n0", range(7, 16))
@pytest.mark.parametrize("k", [1, 2])
def test_gap_windows_are_empty(n0, k):
    for cone in quadratic_cones(n0):
        g = cylinder_gaps(cone, k)
        values = cylinder_oracle(cone, k, -1, 3)
        inside = [v for v in values if 1 - float(g.delta_below) + 1e-9 < v < 1 + float(g.delta_above) - 1e-9 and abs(v - 1) > 1e-9]
        assert inside == []


def test_gaps_need_window():
    cyl = cylinder_spectrum(gamma_star(SIMONS, 2), 1, (0, 2))
    with pytest.raises(ValueError, match="window"):
        gaps(cyl)


@pytest.mark.parametrize("n, want", [(7, Fraction(2)), (8, make(3, -1, 2)), (10, make(4, -1, 7))])
def test_alpha_n_values(n, want):
    assert alpha_n(n) == want


def test_alpha_n_small_n():
    with pytest.raises(ValueError, match="discriminant negative"):
        alpha_n(6)


@pytest.mark.parametrize("n", range(7, 101))
def test_alpha_n_decreasing_above_one(n):
    assert compare(alpha_n(n), alpha_n(n + 1)) > 0
    assert float(alpha_n(n)) - 1 > 1e-12


def test_alpha_of_cones():
    assert alpha(SIMONS) == 2 and alpha(C24) == 2
    assert alpha(SIMONS, k=3) == alpha(SIMONS)
    for n0 in range(7, 30):
        for cone in quadratic_cones(n0):
            assert alpha(cone) == alpha_n(n0)


@settings(max_examples=50)
@given(st.integers(7, 60))
def test_alpha_matches_float_formula(n):
    want = (n - 2) / 2 - math.sqrt((n - 2) ** 2 / 4 - (n - 1))
    assert math.isclose(float(alpha_n(n)), want, rel_tol=1e-12)


def test_degree_ordering():
    a, b = Degree(Fraction(-6), 7), Degree(Fraction(10), 7)
    assert a < b and not b < a
