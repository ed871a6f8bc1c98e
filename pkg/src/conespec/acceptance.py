"""Acceptance criteria AC1-AC10, each with its own independent oracle.

Every check returns a CriterionResult; ``run_all`` is what the ``reproduce``
command prints.  Oracles deliberately take a different route from the code
they check: sympy kernels for beta-harmonic spaces, scipy quadrature for
ball norms, closed-form geometric series for constant covering trees.
"""

from __future__ import annotations

import io
import math
from contextlib import redirect_stdout
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from . import resolve_seed
from .cones import QuadraticCone, classify
from .covering import (
    SyntheticFoliationSet,
    TimestampMap,
    bound_series,
    constant_tree,
    fiber_bound,
    image_bound,
    omega,
    random_tree,
    synth_experiment,
    theta_threshold,
)
from .degrees import alpha, alpha_n, degree_of, gamma_star, mu_of
from .dim_bounds import (
    SWEEP_GRID,
    dim_dom,
    dim_img,
    dom_below_zero,
    epsilon_n,
    epsilon_positive,
    gap_assignment,
    img_below_one,
)
from .jacobi import (
    SpectralJacobiField,
    Term,
    decay_order,
    decay_order_at,
    decay_order_limit,
    l2_norm_ball,
    l2_norm_ball_exact,
    recenter,
)
from .polys import HomPolyRY, YPoly, beta_harmonic_basis, extend_from_trace
from .splitting import v_u
from .surd import compare

SIMONS = QuadraticCone(3, 3)


@dataclass(frozen=True)
class CriterionResult:
    cid: str
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{self.cid} {'PASS' if self.passed else 'FAIL'} {self.name}: {self.detail}"


# ---------------------------------------------------------------- helpers


def random_rational(rng: np.random.Generator, lo: int = -5, hi: int = 5, den: int = 4) -> Fraction:
    """A nonzero random rational num/d with |num| <= max(|lo|, hi)."""
    while True:
        v = Fraction(int(rng.integers(lo, hi + 1)), int(rng.integers(1, den + 1)))
        if v != 0:
            return v


def random_field(rng: np.random.Generator, cone=SIMONS, k: int | None = None,
                 gamma_max=Fraction(5, 2), max_terms: int = 4, max_q: int = 3) -> SpectralJacobiField:
    """Random finite-energy field: true degrees, random beta-harmonic polynomials."""
    if k is None:
        k = int(rng.integers(1, 4))
    spec = gamma_star(cone, gamma_max)
    terms = []
    for _ in range(int(rng.integers(1, max_terms + 1))):
        d, mult = spec.degrees[int(rng.integers(len(spec.degrees)))]
        label = int(rng.integers(mult))
        q = int(rng.integers(0, max_q + 1))
        basis = beta_harmonic_basis(d.beta, k, q)
        poly = HomPolyRY.zero(k, q)
        for b in basis:
            if rng.random() < 0.6:
                poly = poly + b.scale(random_rational(rng))
        if poly.is_zero():
            poly = basis[0]
        terms.append(Term(d, label, poly, random_rational(rng)))
    return SpectralJacobiField(cone, k, tuple(terms))


def sympy_kernel_dim(beta: Fraction, k: int, q: int) -> int:
    """Dimension of the beta-harmonic degree-q space by symbolic differentiation."""
    import sympy as sp

    r = sp.Symbol("r", positive=True)
    ys = sp.symbols(f"y1:{k + 1}") if k else ()
    b = sp.Rational(beta.numerator, beta.denominator)
    basis = []
    for j in range(q // 2 + 1):
        rest = q - 2 * j
        for expo in _all_multi(k, rest):
            mono = r ** (2 * j)
            for y, e in zip(ys, expo):
                mono *= y**e
            basis.append(mono)
    if not basis:
        return 0
    images = []
    for mono in basis:
        img = sp.diff(mono, r, 2) + (1 + b) / r * sp.diff(mono, r)
        for y in ys:
            img += sp.diff(mono, y, 2)
        images.append(sp.expand(img))
    gens = (r,) + tuple(ys)
    monos = sorted(
        {m for img in images if img != 0 for m in sp.Poly(img, *gens).monoms()}
    )
    if not monos:
        return len(basis)
    rows = []
    for img in images:
        coeffs = dict(sp.Poly(img, *gens).terms()) if img != 0 else {}
        rows.append([coeffs.get(m, 0) for m in monos])
    mat = sp.Matrix(rows).T
    return len(basis) - mat.rank()


def _all_multi(k: int, q: int):
    if k == 0:
        if q == 0:
            yield ()
        return
    for e in range(q + 1):
        for rest in _all_multi(k - 1, q - e):
            yield (e,) + rest


def quadrature_norm(u: SpectralJacobiField, rho: float = 1.0) -> float:
    """Oracle for the ball norm: integrate each label's squared sum with scipy."""
    from scipy import integrate

    n0 = u.cone.n0
    groups: dict[tuple, list[Term]] = {}
    for t in u.terms:
        groups.setdefault(t.key, []).append(t)
    total = 0.0
    for terms in groups.values():
        data = [(float(t.gamma), float(t.coeff),
                 [(j, m, float(c)) for (j, m), c in t.poly.coeffs.items()]) for t in terms]

        def f(r, *y):
            s = 0.0
            for g, c, coeffs in data:
                p = 0.0
                for j, m, cc in coeffs:
                    v = cc * r ** (2 * j)
                    for yi, e in zip(y, m):
                        v *= yi**e
                    p += v
                s += c * r**g * p
            return r ** (n0 - 1) * s * s

        opts = dict(epsabs=0, epsrel=1e-11)
        if u.k == 1:
            val, _ = integrate.dblquad(
                lambda y, r: f(r, y), 0, rho,
                lambda r: -math.sqrt(max(rho**2 - r * r, 0)), lambda r: math.sqrt(max(rho**2 - r * r, 0)),
                **opts,
            )
        elif u.k == 2:
            val, _ = integrate.tplquad(
                lambda y2, y1, r: f(r, y1, y2), 0, rho,
                lambda r: -math.sqrt(max(rho**2 - r * r, 0)), lambda r: math.sqrt(max(rho**2 - r * r, 0)),
                lambda r, y1: -math.sqrt(max(rho**2 - r * r - y1 * y1, 0)),
                lambda r, y1: math.sqrt(max(rho**2 - r * r - y1 * y1, 0)),
                **opts,
            )
        else:
            raise ValueError("quadrature oracle supports k = 1, 2")
        total += val
    return total


def _poly(k: int, degree: int, items: dict) -> HomPolyRY:
    return HomPolyRY(k, degree, {key: Fraction(v) for key, v in items.items()})


def splitting_examples() -> list[SpectralJacobiField]:
    """Three degree-1 fields: y^3 - r^2 y (k=1), y1^3 - r^2 y1, 3 y1^2 y2 - r^2 y2 (k=3)."""
    d = degree_of(-6, 7)
    return [
        SpectralJacobiField(SIMONS, 1, (Term(d, 0, _poly(1, 3, {(0, (3,)): 1, (1, (1,)): -1})),)),
        SpectralJacobiField(SIMONS, 3, (Term(d, 0, _poly(3, 3, {(0, (3, 0, 0)): 1, (1, (1, 0, 0)): -1})),)),
        SpectralJacobiField(SIMONS, 3, (Term(d, 0, _poly(3, 3, {(0, (2, 1, 0)): 3, (1, (0, 1, 0)): -1})),)),
    ]


def mixed_fields() -> list[SpectralJacobiField]:
    """Three fields mixing degrees, labels and polynomial degrees (one irrational degree)."""
    bottom = degree_of(-6, 7)
    zero = degree_of(0, 7)
    one = degree_of(6, 7)
    u1 = SpectralJacobiField(SIMONS, 1, (
        Term(bottom, 0, _poly(1, 3, {(0, (3,)): 1, (1, (1,)): -1})),
        Term(bottom, 0, _poly(1, 1, {(0, (1,)): 1}), Fraction(2)),
        Term(zero, 3, _poly(1, 0, {(0, (0,)): 1}), Fraction(-1, 2)),
        Term(one, 5, extend_from_trace(YPoly.monomial((2,)), one.beta), Fraction(3)),
    ))
    y2 = extend_from_trace(YPoly(2, {(2, 0): Fraction(1), (0, 2): Fraction(-1, 3), (1, 1): Fraction(1)}), zero.beta)
    u2 = SpectralJacobiField(SIMONS, 2, (
        Term(zero, 1, y2),
        Term(zero, 1, _poly(2, 0, {(0, (0, 0)): 1}), Fraction(5, 4)),
        Term(bottom, 0, extend_from_trace(YPoly.monomial((1, 1)), bottom.beta), Fraction(-2)),
    ))
    c24 = QuadraticCone(2, 4)
    irr = degree_of(9, 7)  # (sqrt(61) - 5) / 2
    u3 = SpectralJacobiField(c24, 1, (
        Term(irr, 2, extend_from_trace(YPoly.monomial((2,)), irr.beta)),
        Term(irr, 2, _poly(1, 0, {(0, (0,)): 1}), Fraction(-3, 2)),
        Term(degree_of(-6, 7), 0, _poly(1, 1, {(0, (1,)): 1}), Fraction(1, 3)),
    ))
    return [u1, u2, u3]


# ---------------------------------------------------------------- criteria


def ac1() -> CriterionResult:
    from .cli import main

    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(["spectrum", "--cone", "3,3"])
    lines = buf.getvalue().strip().splitlines()
    rows = [ln.split(",") for ln in lines[1:]]
    got = [(r[0], r[1], r[2]) for r in rows]
    want = [("-6", "1", "-2"), ("0", "8", "0"), ("6", "16", "1")]
    ok = code == 0 and got == want
    return CriterionResult("AC1", "Simons spectrum", ok, f"(mu, mult, gamma) = {got}")


def ac2() -> CriterionResult:
    exact_seven = alpha_n(7) == 2 and isinstance(alpha_n(7), Fraction)
    vals = [alpha_n(n) for n in range(7, 102)]
    floats = [float(v) for v in vals]
    dec = all(floats[i] - floats[i + 1] > 1e-12 for i in range(len(floats) - 1))
    above = all(f - 1 > 1e-12 for f in floats[:94])
    dec_exact = all(compare(vals[i], vals[i + 1]) > 0 for i in range(len(vals) - 1))
    ok = exact_seven and dec and above and dec_exact
    return CriterionResult(
        "AC2", "alpha table", ok,
        f"alpha_7={alpha_n(7)}, decreasing={dec and dec_exact}, >1 on [7,100]={above}, alpha_100={floats[93]:.12f}",
    )


def ac3() -> CriterionResult:
    checked = 0
    bad = []
    for s in range(6, 41):
        for p in range(1, s):
            cone = QuadraticCone(p, s - p)
            if not classify(cone)["minimizing"]:
                continue
            n0 = cone.n0
            a = alpha(cone)
            # mu-level identity: -a is a root of g^2 + (n0-2) g = -(n0-1)
            if a != alpha_n(n0) or mu_of(-a, n0) != -(n0 - 1):
                bad.append((p, s - p))
            checked += 1
    return CriterionResult("AC3", "alpha equality case", not bad, f"{checked} cones checked, mismatches={bad}")


def ac4() -> CriterionResult:
    basis = beta_harmonic_basis(Fraction(1), 1, 3)
    target = _poly(1, 3, {(0, (3,)): 1, (1, (1,)): -1})
    first = len(basis) == 1 and basis[0] == target
    bad = []
    count = 0
    for beta in (Fraction(1, 2), Fraction(1), Fraction(3), Fraction(7)):
        for k in range(0, 5):
            for q in range(0, 7):
                want = comb(q + k - 1, k - 1) if k else int(q == 0)
                got = len(beta_harmonic_basis(beta, k, q))
                oracle = sympy_kernel_dim(beta, k, q)
                count += 1
                if not (got == want == oracle):
                    bad.append((beta, k, q, got, want, oracle))
    ok = first and not bad
    return CriterionResult("AC4", "beta-harmonic basis", ok,
                           f"y^3-r^2y basis={first}, {count} grid points, mismatches={bad}")


RHO_GRID = [2.0**-e for e in range(20, 0, -1)]


def ac5(seed: int | None = None) -> CriterionResult:
    rng = np.random.default_rng(resolve_seed(seed))
    worst = 0.0
    limit_bad = 0
    for _ in range(200):
        u = random_field(rng)
        d0 = min((t.total_degree for t in u.terms), key=float)
        for kappa in (0.0, 1.0):
            g = [decay_order(u, rho, kappa) for rho in RHO_GRID]
            worst = max(worst, max(g[i] - g[i + 1] for i in range(len(g) - 1)))
            want = d0 if kappa == 0 or compare(d0, 2) <= 0 else Fraction(2)
            lim = decay_order_limit(u, kappa)
            if compare(lim, want) != 0 or abs(decay_order(u, 1e-300, kappa) - float(want)) > 1e-6:
                limit_bad += 1
    ok = worst <= 1e-10 and limit_bad == 0
    return CriterionResult("AC5", "decay-order monotonicity", ok,
                           f"200 fields x 2 kappas, max decrease={worst:.3e}, limit mismatches={limit_bad}")


def ac6(seed: int | None = None) -> CriterionResult:
    rng = np.random.default_rng(resolve_seed(seed) + 6)
    bad = 0
    for i in range(50):
        u = random_field(rng)
        if i % 5 == 0:
            y0 = [Fraction(0)] * u.k
        else:
            y0 = [Fraction(int(rng.integers(-3, 4)), int(rng.integers(1, 4))) for _ in range(u.k)]
        lhs = decay_order_at(u, y0)
        w = recenter(u, y0)
        rhs = min((t.total_degree for t in w.terms), key=float)
        if compare(lhs, rhs) != 0:
            bad += 1
    return CriterionResult("AC6", "recentering oracle", bad == 0, f"50 pairs, mismatches={bad}")


def _same(u, w) -> bool:
    def table(f):
        return {(t.degree.mu, t.label, t.poly.degree): t.scaled_poly() for t in f.terms}

    a, b = table(u), table(w)
    return a.keys() == b.keys() and all(a[key] == b[key] for key in a)


def ac7() -> CriterionResult:
    dims = []
    invariant = True
    for u in splitting_examples():
        locus = v_u(u)
        dims.append(locus.dim)
        for v in locus.basis:
            invariant &= _same(recenter(u, v), u)
    ok = dims == [0, 2, 1] and invariant
    return CriterionResult("AC7", "splitting subspaces", ok, f"dims={dims}, invariance={invariant}")


def ac8() -> CriterionResult:
    mismatches = []
    cases = 0
    for n in range(7, 15):
        expected = n <= 10
        for gq in SWEEP_GRID:
            for gn in SWEEP_GRID:
                gaps = gap_assignment(n, nonqd=gn, qd=gq)
                img = img_below_one(n, gaps) == "yes"
                dom = dom_below_zero(n, gaps) == "yes"
                fimg = dim_img(n, gaps) < 1
                fdom = dim_dom(n, gaps) < 0
                cases += 1
                if not (img == dom == expected == fimg == fdom):
                    mismatches.append((n, gq, gn, img, dom, fimg, fdom))
    eps_bad = []
    for n in range(11, 21):
        for nonqd in (Fraction(1), Fraction(1, 100), math.inf):
            gaps = gap_assignment(n, nonqd=nonqd)
            eps = epsilon_n(n, gaps)
            # independent re-evaluation of eps and of d_dom <= n - 10 - eps
            terms = [float(alpha_n(7)) + min(float(gaps.qd[n - 7]), float(nonqd)) - 2]
            terms += [float(alpha_n(n - k)) + min(float(gaps.qd[k]), float(nonqd)) - 1 for k in range(0, n - 7)]
            dom_terms = [k - (1 + float(alpha_n(n - k)) + min(float(gaps.qd[k]), float(nonqd)))
                         for k in range(0, n - 6)]
            if not (eps > 0 and epsilon_positive(n, gaps) and abs(eps - min(terms)) < 1e-12
                    and max(dom_terms) <= n - 10 - eps + 1e-12
                    and abs(dim_dom(n, gaps) - max(dom_terms)) < 1e-12):
                eps_bad.append((n, nonqd))
    ok = not mismatches and not eps_bad
    return CriterionResult("AC8", "dimension-11 equivalence", ok,
                           f"{cases} sweep cases, mismatches={mismatches[:3]}, epsilon failures={eps_bad}")


def ac9(seed: int | None = None) -> CriterionResult:
    # constant trees against the closed form N^j omega_d (C2 C1^j theta^{j h})^d
    const_ok = True
    for (N, D, h, C1, theta, d) in [(2, 1.0, 1.0, 2.0, 0.25, 1.0), (3, 0.5, 0.75, 1.5, 1 / 16, 0.8),
                                    (1, 0.0, 1.0, 1.0, 0.5, 0.5)]:
        tree = constant_tree(6, N, D, h, C1, 1.0, theta)
        for j in range(7):
            got = image_bound(tree, d, C1, 1.0, theta, 0.1, level=j).enumeration
            want = N**j * omega(d) * (C1**j * theta ** (j * h)) ** d
            const_ok &= math.isclose(got, want, rel_tol=1e-12)
            gotf = fiber_bound(tree, d, C1, 1.0, theta, 0.1, level=j).enumeration
            wantf = omega(d) * theta ** (j * d) * N**j * C1**j * theta ** (j * h)
            const_ok &= math.isclose(gotf, wantf, rel_tol=1e-12)
    # Cantor set, timestamp exponent 1 and 1/2
    cantor = []
    for h in (1.0, 0.5):
        s = SyntheticFoliationSet((1 / 3, 1 / 3), ((0.0,), (2 / 3,)), TimestampMap(h))
        rep = synth_experiment(s, 12, C1=1.01, xi=0.1, seed=resolve_seed(seed))
        target = (0.1 + math.log(2) / math.log(3)) / h
        cantor.append(rep.box_count_dim <= target + 0.1 and math.isclose(rep.bound_dim, target, rel_tol=1e-12))
    # majorant decays iff theta <= theta0 on dyadic theta
    sharp = True
    for C1, xi in [(2.0, 1.0), (1.1, 0.15), (3.0, 0.5)]:
        t0 = theta_threshold(C1, xi)
        for m in range(1, 25):
            theta = 2.0**-m
            decays = C1**2 * theta**xi < 1
            sharp &= decays == (theta <= t0)
    # enumeration <= path bound <= majorant on random valid trees
    rng = np.random.default_rng(resolve_seed(seed) + 9)
    chain = True
    for _ in range(10):
        tree = random_tree(rng, 12, 1.1, 1.0, 0.25, dim_range=(0.45, 0.6), holder_range=(0.8, 1.0))
        for b in bound_series(image_bound, tree, 1.0, 1.1, 1.0, 0.25, 0.15):
            chain &= b.hypothesis_holds and b.enumeration <= b.path_bound * (1 + 1e-12) <= b.majorant * (1 + 1e-12)
    ok = const_ok and all(cantor) and sharp and chain
    return CriterionResult("AC9", "covering harness", ok,
                           f"closed forms={const_ok}, cantor={cantor}, threshold sharpness={sharp}, random chains={chain}")


def ac10() -> CriterionResult:
    scaling = True
    for u in mixed_fields()[:1] + splitting_examples():
        for term in u.terms:
            single = u.with_terms([term])
            d = term.total_degree
            for t in (Fraction(1, 2), Fraction(3), Fraction(7, 5)):
                a = l2_norm_ball_exact(single, t)
                b = l2_norm_ball_exact(single, 1)
                scaling &= a is not None and a.pi_power == b.pi_power and a.value == t ** (single.n + 2 * d) * b.value
    rel = []
    for u in mixed_fields():
        want = quadrature_norm(u)
        got = l2_norm_ball(u, 1.0)
        rel.append(abs(got - want) / abs(want))
    ok = scaling and all(r <= 1e-8 for r in rel)
    return CriterionResult("AC10", "moment engine", ok,
                           f"exact scaling={scaling}, quadrature rel errors={[f'{r:.1e}' for r in rel]}")


SEEDED = ("AC5", "AC6", "AC9")

CRITERIA = {
    "AC1": ac1, "AC2": ac2, "AC3": ac3, "AC4": ac4, "AC5": ac5,
    "AC6": ac6, "AC7": ac7, "AC8": ac8, "AC9": ac9, "AC10": ac10,
}


def iter_results(only=None, seed: int | None = None):
    for cid, fn in CRITERIA.items():
        if only and cid not in only:
            continue
        yield fn(seed) if cid in SEEDED else fn()


def run_all(only=None, seed: int | None = None) -> list[CriterionResult]:
    return list(iter_results(only, seed))


__all__ = ["CriterionResult", "CRITERIA", "run_all", "iter_results", "random_field", "quadrature_norm",
           "sympy_kernel_dim", "splitting_examples", "mixed_fields"]
