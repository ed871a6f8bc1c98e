from __future__ import annotations

from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from conespec.polys import (
    HomPolyRY,
    YPoly,
    apply_beta_operator,
    beta_harmonic_basis,
    extend_from_trace,
    is_beta_harmonic,
    monomials,
)

R = sp.Symbol("r", positive=True)


def to_sympy(p: HomPolyRY):
    ys = sp.symbols(f"y1:{p.k + 1}")
    expr = 0
    for (j, m), c in p.coeffs.items():
        term = sp.Rational(c.numerator, c.denominator) * R ** (2 * j)
        for y, e in zip(ys, m):
            term *= y**e
        expr += term
    return expr, ys


def beta_op_sympy(p: HomPolyRY, beta: Fraction):
    expr, ys = to_sympy(p)
    b = sp.Rational(beta.numerator, beta.denominator)
    out = sp.diff(expr, R, 2) + (1 + b) / R * sp.diff(expr, R) + sum(sp.diff(expr, y, 2) for y in ys)
    return sp.expand(out)


def P(k, degree, items):
    return HomPolyRY(k, degree, {key: Fraction(v) for key, v in items.items()})


Y3 = P(1, 3, {(0, (3,)): 1, (1, (1,)): -1})


@pytest.mark.parametrize(
    "p, beta, want",
    [
        (Y3, Fraction(1), P(1, 1, {})),
        (P(2, 2, {(1, (0, 0)): 1}), Fraction(3), P(2, 0, {(0, (0, 0)): 10})),
        (P(3, 3, {(0, (2, 1, 0)): 3, (1, (0, 1, 0)): -1}), Fraction(1), P(3, 1, {})),
    ],
)
def test_apply_beta_operator_examples(p, beta, want):
    assert apply_beta_operator(p, beta) == want


@pytest.mark.parametrize("beta", [Fraction(1, 2), Fraction(1), Fraction(5), Fraction(7)])
@pytest.mark.parametrize("k, q", [(1, 3), (2, 2), (2, 4), (3, 3)])
def test_operator_matches_sympy(beta, k, q):
    for j in range(q // 2 + 1):
        for m in monomials(k, q - 2 * j):
            p = P(k, q, {(j, m): 1})
            got, _ = to_sympy(apply_beta_operator(p, beta))
            assert sp.expand(got - beta_op_sympy(p, beta)) == 0


def test_extend_examples():
    assert extend_from_trace(YPoly.monomial((3,)), Fraction(1)) == Y3
    assert extend_from_trace(YPoly.constant(2), Fraction(3)) == P(2, 0, {(0, (0, 0)): 1})
    assert extend_from_trace(YPoly.monomial((1, 0)), Fraction(3)) == P(2, 1, {(0, (1, 0)): 1})
    want = P(3, 3, {(0, (2, 1, 0)): 1, (1, (0, 1, 0)): Fraction(-1, 3)})
    assert extend_from_trace(YPoly.monomial((2, 1, 0)), Fraction(1)) == want


traces = st.builds(
    lambda k, q, cs: YPoly(k, {m: Fraction(c) for m, c in zip(monomials(k, q), cs) if c}),
    st.integers(1, 3),
    st.integers(0, 5),
    st.lists(st.integers(-4, 4), min_size=21, max_size=21),
)
betas = st.fractions(min_value=Fraction(1, 8), max_value=12, max_denominator=8)


@settings(max_examples=60, deadline=None)
@given(traces, betas)
def test_extension_is_harmonic_with_trace(h0, beta):
    if h0.is_zero():
        return
    p = extend_from_trace(h0, beta)
    assert p.trace() == h0
    assert is_beta_harmonic(p, beta)
    assert beta_op_sympy(p, beta) == 0


@pytest.mark.parametrize("beta", [Fraction(1, 2), Fraction(1), Fraction(3), Fraction(7)])
@pytest.mark.parametrize("k", range(0, 5))
@pytest.mark.parametrize("q", range(0, 7))
def test_basis_dimension(beta, k, q):
    from math import comb

    basis = beta_harmonic_basis(beta, k, q)
    want = comb(q + k - 1, k - 1) if k else int(q == 0)
    assert len(basis) == want
    assert all(is_beta_harmonic(p, beta) for p in basis)


def test_simons_k1_q3_basis():
    assert beta_harmonic_basis(Fraction(1), 1, 3) == [Y3]
    assert len(beta_harmonic_basis(Fraction(1), 3, 3)) == 10


@settings(max_examples=40, deadline=None)
@given(traces, st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=5), min_size=3, max_size=3))
def test_translate_matches_substitution(h0, shift):
    if h0.is_zero():
        return
    y0 = tuple(shift[: h0.k])
    ys = sp.symbols(f"y1:{h0.k + 1}")
    expr = sum(sp.Rational(c.numerator, c.denominator) * sp.prod([y**e for y, e in zip(ys, m)])
               for m, c in h0.coeffs.items())
    sub = sp.expand(expr.subs({y: y + sp.Rational(v.numerator, v.denominator) for y, v in zip(ys, y0)},
                              simultaneous=True))
    got = h0.translate(y0)
    back = sum(sp.Rational(c.numerator, c.denominator) * sp.prod([y**e for y, e in zip(ys, m)])
               for m, c in got.coeffs.items())
    assert sp.expand(back - sub) == 0


def test_translate_components_are_harmonic():
    comps = Y3.translate_components((Fraction(1),))
    assert sorted(comps) == [0, 1, 2, 3]
    for p in comps.values():
        assert is_beta_harmonic(p, Fraction(1))
    assert comps[3] == Y3


def test_json_roundtrip():
    p = extend_from_trace(YPoly(2, {(2, 0): Fraction(1), (0, 2): Fraction(-1, 3)}), Fraction(5))
    assert HomPolyRY.from_json(p.to_json()) == p
    assert Y3.to_json() == {"k": 1, "degree": 3,
                            "coeffs": [{"j": 0, "alpha": [3], "c": "1"}, {"j": 1, "alpha": [1], "c": "-1"}]}


@pytest.mark.parametrize("bad", [Fraction(0), Fraction(-1)])
def test_nonpositive_beta_rejected(bad):
    with pytest.raises(ValueError):
        beta_harmonic_basis(bad, 1, 3)


def test_inconsistent_degree_rejected():
    with pytest.raises(ValueError):
        HomPolyRY(1, 3, {(1, (0,)): Fraction(1)})
