"""Monomial moments over the half ball {r > 0, r^2 + |y|^2 < 1} in R x R^k.

    int r^a y^alpha dr dy
        = prod Gamma((e+1)/2) / Gamma(sum (e+1)/2) / (a + |alpha| + k + 1)

over the exponents e in (a, alpha_1, ..., alpha_k); the integral vanishes as
soon as one alpha_i is odd.  For integer a every Gamma value is a rational
times a power of sqrt(pi), and the exact variant keeps that power separate.
"""

from __future__ import annotations

import math
from fractions import Fraction


def half_gamma(m: int) -> tuple[Fraction, int]:
    """Gamma(m/2) = value * sqrt(pi)**power for an integer m >= 1."""
    if m < 1:
        raise ValueError("Gamma(m/2) needs m >= 1")
    if m % 2 == 0:
        return Fraction(math.factorial(m // 2 - 1)), 0
    t = (m - 1) // 2
    return Fraction(math.factorial(2 * t), 4**t * math.factorial(t)), 1


def half_ball_moment(a: float, alpha, k: int) -> float:
    """Float moment for a real exponent a > -1."""
    if any(e % 2 for e in alpha):
        return 0.0
    if a <= -1:
        raise ValueError("moment diverges for r-exponent <= -1")
    total = a + sum(alpha) + k + 1
    log_num = math.lgamma((a + 1) / 2) + sum(math.lgamma((e + 1) / 2) for e in alpha)
    return math.exp(log_num - math.lgamma(total / 2)) / total


def half_ball_moment_exact(a: int, alpha, k: int) -> tuple[Fraction, int]:
    """Exact moment for an integer exponent a >= 0, as (rational, sqrt(pi) power)."""
    if any(e % 2 for e in alpha):
        return Fraction(0), 0
    if a < 0:
        raise ValueError("exact moments need a nonnegative integer r-exponent")
    total = a + sum(alpha) + k + 1
    value, power = half_gamma(a + 1)
    for e in alpha:
        v, p = half_gamma(e + 1)
        value *= v
        power += p
    v, p = half_gamma(total)
    return value / v / total, power - p
