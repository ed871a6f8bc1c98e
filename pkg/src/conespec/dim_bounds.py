"""Gap tables and the dimension bounds d_img(n), d_dom(n) and eps(n).

With a_m = alpha_m and g_k = min(nonqd gap, qd gap) for the cone dimension
n - k the bounds are

    d_img = max_k max{ k / (1 + a_{n-k} + g_k), (k-1) / (1 + a_{n-k}) }
    d_dom = max_k      k - (1 + a_{n-k} + g_k)

over k = 0..n-7.  The non-quadratic gap is only known to be positive; it is
either supplied as a number (possibly infinite) or left as POSITIVE_UNKNOWN,
in which case the bounds become intervals over all admissible gaps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .cones import quadratic_cones
from .degrees import alpha_n, cylinder_gaps
from .surd import compare, format_exact


class _PositiveUnknown:
    def __repr__(self):
        return "POSITIVE_UNKNOWN"

    __str__ = __repr__


POSITIVE_UNKNOWN = _PositiveUnknown()
INF = math.inf


def _min(a, b):
    if a == INF:
        return b
    if b == INF:
        return a
    return a if compare(a, b) <= 0 else b


@lru_cache(maxsize=None)
def _cone_gap_above(p: int, q: int, cylinder: bool):
    from .cones import QuadraticCone

    return cylinder_gaps(QuadraticCone(p, q), 1 if cylinder else 0).delta_above


def delta_qd(n: int, k: int):
    """Smallest gap above 1 over quadratic cylinders C_{p,q} x R^j, j >= k, of dimension n."""
    if not 0 <= k <= n - 7:
        raise ValueError(f"k must lie in [0, {n - 7}], got {k}")
    best = None
    for j in range(k, n - 6):
        for cone in quadratic_cones(n - j):
            g = _cone_gap_above(cone.p, cone.q, j >= 1)
            best = g if best is None else _min(best, g)
    return best


def delta_qd_all(n: int):
    best = None
    for k in range(0, n - 6):
        g = delta_qd(n, k)
        best = g if best is None else _min(best, g)
    return best


@dataclass(frozen=True)
class GapAssignment:
    n: int
    qd: dict = field(default_factory=dict)
    nonqd: dict = field(default_factory=dict)

    def __post_init__(self):
        ks = set(range(0, self.n - 6))
        if set(self.qd) != ks or set(self.nonqd) != ks:
            raise ValueError(f"gap maps must be keyed by k = 0..{self.n - 7}")
        for k in ks:
            g = self.qd[k]
            if compare(g, 0) <= 0 or compare(g, 1) > 0:
                raise ValueError(f"quadratic gap for k={k} must lie in (0, 1]")
            v = self.nonqd[k]
            if v is not POSITIVE_UNKNOWN and v != INF and compare(v, 0) <= 0:
                raise ValueError(f"non-quadratic gap for k={k} must be positive")

    def numeric(self) -> bool:
        return all(v is not POSITIVE_UNKNOWN for v in self.nonqd.values())

    def gap(self, k: int):
        """min(nonqd, qd) for numeric entries."""
        v = self.nonqd[k]
        if v is POSITIVE_UNKNOWN:
            raise ValueError("gap is symbolic")
        return _min(v, self.qd[k])


def gap_assignment(n: int, nonqd=POSITIVE_UNKNOWN, qd=None) -> GapAssignment:
    """Gaps for dimension n: computed quadratic gaps unless ``qd`` overrides them.

    ``nonqd`` and ``qd`` may be a single value (used for every k) or a map k -> value.
    """
    if n < 7:
        raise ValueError("dimension bounds need n >= 7")
    ks = range(0, n - 6)
    if qd is None:
        qd_map = {k: delta_qd(n, k) for k in ks}
    elif isinstance(qd, dict):
        qd_map = {k: qd[k] for k in ks}
    else:
        qd_map = {k: qd for k in ks}
    if isinstance(nonqd, dict):
        nonqd_map = {k: nonqd.get(k, POSITIVE_UNKNOWN) for k in ks}
    else:
        nonqd_map = {k: nonqd for k in ks}
    return GapAssignment(n, qd_map, nonqd_map)


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float
    lo_closed: bool = True
    hi_closed: bool = False

    def __str__(self):
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{format(self.lo, '.17g')}, {format(self.hi, '.17g')}{right}"


def _img_terms(n: int, k: int, g: float) -> tuple[float, float]:
    a = float(alpha_n(n - k))
    return k / (1 + a + g), (k - 1) / (1 + a)


def _dom_term(n: int, k: int, g: float) -> float:
    return k - (1 + float(alpha_n(n - k)) + g)


def _as_float(g) -> float:
    return INF if g == INF else float(g)


def _bound(n: int, gaps: GapAssignment, term):
    """max_k of term(k, g); an Interval when some non-quadratic gap is unknown."""
    if gaps.numeric():
        return max(term(k, _as_float(gaps.gap(k))) for k in range(0, n - 6))
    lo_vals, hi_vals, hi_attained = [], [], []
    for k in range(0, n - 6):
        if gaps.nonqd[k] is POSITIVE_UNKNOWN:
            # decreasing in g: the worst case g -> 0 is not attained
            lo_vals.append(term(k, float(gaps.qd[k])))
            at_zero = term(k, 0.0)
            hi_vals.append(at_zero)
            hi_attained.append(term(k, float(gaps.qd[k])) == at_zero)
        else:
            v = term(k, _as_float(gaps.gap(k)))
            lo_vals.append(v)
            hi_vals.append(v)
            hi_attained.append(True)
    hi = max(hi_vals)
    closed = any(v == hi and att for v, att in zip(hi_vals, hi_attained))
    return Interval(max(lo_vals), hi, True, closed)


def dim_img(n: int, gaps: GapAssignment):
    if n < 7:
        raise ValueError("dimension bounds need n >= 7")
    return _bound(n, gaps, lambda k, g: max(_img_terms(n, k, g)))


def dim_dom(n: int, gaps: GapAssignment):
    """Only the k - (1 + a + g) terms: (k-1) - (1 + a) never exceeds them since g <= 1."""
    if n < 7:
        raise ValueError("dimension bounds need n >= 7")
    return _bound(n, gaps, lambda k, g: _dom_term(n, k, g))


# ---- exact verdicts ----
# k / (1 + a + g) < 1  <=>  k - (1 + a + g) < 0  <=>  a + 1 - k > -g
# (k - 1) / (1 + a) < 1  <=>  a > k - 2


def _main_term_ok(n: int, k: int, g) -> bool:
    a = alpha_n(n - k)
    if g == INF:
        return True
    return compare(a + 1 - k, -g) > 0


def _main_term_ok_all_positive(n: int, k: int) -> bool:
    """k / (1 + a + g) < 1 for every g > 0, i.e. k <= 1 + a."""
    return compare(alpha_n(n - k) + 1 - k, 0) >= 0


def _side_term_ok(n: int, k: int) -> bool:
    return compare(alpha_n(n - k), k - 2) > 0


def _verdict(n: int, gaps: GapAssignment, with_side: bool) -> str:
    yes = True
    for k in range(0, n - 6):
        if with_side and not _side_term_ok(n, k):
            return "no"
        v = gaps.nonqd[k]
        if v is POSITIVE_UNKNOWN:
            if not _main_term_ok(n, k, gaps.qd[k]):
                return "no"
            if not _main_term_ok_all_positive(n, k):
                yes = False
        elif not _main_term_ok(n, k, gaps.gap(k)):
            return "no"
    return "yes" if yes else "undetermined"


def img_below_one(n: int, gaps: GapAssignment) -> str:
    """Exact 'yes' / 'no' / 'undetermined' for d_img < 1 over all admissible gaps."""
    return _verdict(n, gaps, with_side=True)


def dom_below_zero(n: int, gaps: GapAssignment) -> str:
    return _verdict(n, gaps, with_side=False)


def epsilon_terms(n: int, gaps: GapAssignment) -> list[tuple[int, float]]:
    if n < 11:
        raise ValueError("epsilon is defined for n >= 11")
    if not gaps.numeric():
        raise ValueError("epsilon requires numeric non-qd lower bounds")
    out = [(n - 7, float(alpha_n(7)) + _as_float(gaps.gap(n - 7)) - 2)]
    for k in range(0, n - 7):
        out.append((k, float(alpha_n(n - k)) + _as_float(gaps.gap(k)) - 1))
    return out


def epsilon_n(n: int, gaps: GapAssignment) -> float:
    return min(v for _, v in epsilon_terms(n, gaps))


def epsilon_positive(n: int, gaps: GapAssignment) -> bool:
    """Exact positivity of every term of epsilon."""
    if not gaps.numeric():
        raise ValueError("epsilon requires numeric non-qd lower bounds")
    for k in range(0, n - 6):
        g = gaps.gap(k)
        a = alpha_n(n - k)
        shift = 2 if k == n - 7 else 1
        if g == INF:
            if compare(a - shift, 0) <= 0:
                return False
        elif compare(a - shift, -g) <= 0:
            return False
    return True


def format_gap(g) -> str:
    if g is POSITIVE_UNKNOWN:
        return "POSITIVE_UNKNOWN"
    if g == INF:
        return "inf"
    return format_exact(g)


SWEEP_GRID = (Fraction(1, 10**9),) + tuple(Fraction(i, 20) for i in range(1, 21))
