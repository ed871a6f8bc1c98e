"""Vanishing orders, the splitting subspace of a homogeneous polynomial and V_u.

For a homogeneous polynomial p of degree d the set {y0 : ord_p(y0) >= d} is
the linear subspace cut out by the linear forms D^alpha p, |alpha| = d - 1,
and p is invariant under translations by its elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import in_span, nullspace
from .polys import YPoly, monomials
from .surd import compare, format_exact


def ord_at(p: YPoly, y0) -> int:
    """Smallest |alpha| with D^alpha p(y0) != 0."""
    if p.is_zero():
        raise ValueError("ord undefined for the zero polynomial")
    shifted = p.translate(tuple(y0))
    return min(sum(m) for m in shifted.coeffs)


@dataclass(frozen=True)
class OrderLocus:
    """Linear subspace of R^k given by a basis of exact vectors."""

    k: int
    basis: tuple[tuple, ...]
    source_degree: int
    warnings: tuple[str, ...] = ()

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, y) -> bool:
        return in_span([list(b) for b in self.basis], list(y))

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "basis": [[format_exact(v) for v in b] for b in self.basis],
            "warnings": list(self.warnings),
        }


def _constraint_rows(p: YPoly) -> list[list]:
    """Coefficient rows of the linear forms D^alpha p, |alpha| = deg p - 1."""
    d = p.total_degree
    rows = []
    for alpha in monomials(p.k, d - 1):
        form = p.diff_multi(alpha)
        row = [Fraction(0)] * p.k
        for m, c in form.coeffs.items():
            row[m.index(1)] = c
        if any(v != 0 for v in row):
            rows.append(row)
    return rows


def _locus(k: int, rows: list[list], degree: int, warnings=()) -> OrderLocus:
    basis = tuple(tuple(v) for v in nullspace(rows, k)) if rows else tuple(
        tuple(Fraction(int(i == j)) for j in range(k)) for i in range(k)
    )
    return OrderLocus(k, basis, degree, tuple(warnings))


def splitting_subspace(p: YPoly) -> OrderLocus:
    """{y0 : ord_p(y0) >= deg p} for a nonzero homogeneous p, verified."""
    if p.is_zero():
        raise ValueError("splitting subspace undefined for the zero polynomial")
    if not p.is_homogeneous():
        raise ValueError("polynomial is not homogeneous")
    d = p.total_degree
    warnings = []
    if d == 0:
        warnings.append("constant polynomial: every point has order >= 0, locus is all of R^k")
        rows = []
    else:
        rows = _constraint_rows(p)
    locus = _locus(p.k, rows, d, warnings)
    for v in locus.basis:
        if p.translate(v) != p:
            raise AssertionError(f"translation invariance fails for {v}")
    return locus


def _same_field(u, w) -> bool:
    def table(f):
        return {(t.degree.mu, t.label, t.poly.degree): t.scaled_poly() for t in f.terms}

    a, b = table(u), table(w)
    return a.keys() == b.keys() and all(a[key] == b[key] for key in a)


def check_splitting_preconditions(u) -> None:
    if u.is_zero():
        raise ValueError("V_u undefined for the zero field")
    for t in u.terms:
        if compare(t.total_degree, 1) != 0:
            raise ValueError(
                f"not degree-1 homogeneous: term of degree {format_exact(t.total_degree)}"
            )
    for t in u.terms:
        if t.degree.mu == 0 and t.poly.degree == 1:
            raise ValueError("has spine-rotation component (gamma=0, q=1)")
    for t in u.terms:
        g = t.gamma
        if not (compare(g, 1) == 0 or (isinstance(g, Fraction) and g.denominator == 1 and g < 0)):
            raise AssertionError(f"degree {format_exact(g)} outside the admissible set")


def v_u(u) -> OrderLocus:
    """Splitting subspace of a degree-1 homogeneous field."""
    from .jacobi import label_traces, recenter

    check_splitting_preconditions(u)
    rows = []
    constrained = False
    for degree, _, trace in label_traces(u):
        if trace.is_zero():
            continue
        q = trace.total_degree
        if q == 0:
            continue
        constrained = True
        rows.extend(_constraint_rows(trace))
    warnings = []
    if not constrained:
        warnings.append("non-proper: u only has rotation-type terms, V_u is all of R^k")
    locus = _locus(u.k, rows, 1, warnings)
    for v in locus.basis:
        if not _same_field(recenter(u, v), u):
            raise AssertionError(f"u is not invariant under translation by {v}")
    return locus


def v_hat_member(u, y) -> bool:
    """Whether some w = u + (translation) + (positive) has order >= 1 at y.

    Independent of :func:`v_u`: works with Taylor coefficients at y and lets
    the translation and positive labels absorb a free constant.
    """
    from .cones import bottom_eigenvalue
    from .jacobi import label_traces

    check_splitting_preconditions(u)
    bottom = bottom_eigenvalue(u.cone)
    for degree, _, trace in label_traces(u):
        need = 1 - degree.gamma
        shifted = trace.translate(tuple(y))
        free_constant = degree.mu in (0, bottom)
        for m, c in shifted.coeffs.items():
            if sum(m) == 0 and free_constant:
                continue
            if compare(sum(m), need) < 0:
                return False
    return True
