from __future__ import annotations

from fractions import Fraction

import pytest
import sympy as sp

from conespec.cones import (
    QuadraticCone,
    bottom_eigenvalue,
    classify,
    harmonic_dim,
    is_strictly_stable,
    link_spectrum,
    parse_cone,
    quadratic_cones,
)


def harmonic_dim_oracle(m: int, d: int) -> int:
    """Kernel dimension of the Laplacian on degree-m polynomials in d+1 variables."""
    xs = sp.symbols(f"x0:{d + 1}")
    monos = sorted(sp.itermonomials(xs, m, m), key=sp.default_sort_key)
    if m < 2:
        return len(monos)
    targets = sorted(sp.itermonomials(xs, m - 2, m - 2), key=sp.default_sort_key)
    index = {t: i for i, t in enumerate(targets)}
    rows = []
    for mono in monos:
        lap = sp.expand(sum(sp.diff(mono, x, 2) for x in xs))
        row = [0] * len(targets)
        for term in sp.Add.make_args(lap):
            if term == 0:
                continue
            c, rest = term.as_coeff_Mul()
            row[index[rest]] += c
        rows.append(row)
    return len(monos) - sp.Matrix(rows).rank()


@pytest.mark.parametrize("m", range(0, 5))
@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_harmonic_dim_against_kernel(m, d):
    assert harmonic_dim(m, d) == harmonic_dim_oracle(m, d)


def brute_spectrum(p: int, q: int, mu_max):
    """Enumerate modes (a, b) directly with the sphere eigenvalues on the radii."""
    out: dict[Fraction, int] = {}
    s = p + q
    for a in range(0, 12):
        for b in range(0, 12):
            lap = Fraction(a * (a + p - 1) * s, p) + Fraction(b * (b + q - 1) * s, q)
            mu = lap - s
            if mu <= mu_max:
                out[mu] = out.get(mu, 0) + harmonic_dim(a, p) * harmonic_dim(b, q)
    return sorted(out.items())


@pytest.mark.parametrize("p, q, mu_max", [(3, 3, 6), (2, 4, 0), (2, 4, 15), (1, 6, 10), (4, 5, 20)])
def test_spectrum_matches_brute_force(p, q, mu_max):
    got = [(e.mu, e.multiplicity) for e in link_spectrum(QuadraticCone(p, q), Fraction(mu_max))]
    assert got == brute_spectrum(p, q, Fraction(mu_max))


def test_simons_spectrum():
    got = [(e.mu, e.multiplicity) for e in link_spectrum(QuadraticCone(3, 3), 6)]
    assert got == [(-6, 1), (0, 8), (6, 16)]


def test_below_bottom_is_empty():
    assert link_spectrum(QuadraticCone(3, 3), -7) == []


def test_c24_zero_eigenspace():
    got = [(e.mu, e.multiplicity) for e in link_spectrum(QuadraticCone(2, 4), 0)]
    assert got == [(-6, 1), (0, 8)]


@pytest.mark.parametrize(
    "pq, stable, minimizing",
    [((3, 3), True, True), ((1, 5), True, False), ((5, 1), True, False), ((2, 3), False, False), ((1, 6), True, True)],
)
def test_classify(pq, stable, minimizing):
    c = classify(QuadraticCone(*pq))
    assert (c["stable"], c["minimizing"]) == (stable, minimizing)


@pytest.mark.parametrize("n0", range(7, 20))
def test_bottom_is_cone_independent(n0):
    for cone in quadratic_cones(n0):
        assert bottom_eigenvalue(cone) == -(n0 - 1)
        assert is_strictly_stable(cone)
        assert cone.second_fund_sq == n0 - 1
        r1, r2 = cone.link_radii_sq
        assert r1 + r2 == 1


def test_parse_cone_errors():
    assert parse_cone("3,3") == QuadraticCone(3, 3)
    for bad in ("3", "a,b", "0,3", "3,3,3"):
        with pytest.raises(ValueError):
            parse_cone(bad)
