"""Lower bound for the localized decay exponent alpha(C; sigma) of a cylinder.

On the link of C0 x R^k write a point as (sin(s) w, cos(s) t) with w on the
link of C0, t in S^{k-1} and s in (0, pi/2].  For functions psi_1(w) f(s)
the link Jacobi operator reduces to the weighted Sturm-Liouville problem

    -(W f')' + mu_1 W f / sin(s)**2 = lam W f,   W = sin^{n0-1} cos^{k-1},

with a Dirichlet condition where the link radius sin(s) drops to sigma and the
natural condition at s = pi/2.  The positive field r^{gamma_1} psi_1 restricts
to the exact ground state phi = sin^{gamma_1}(s) with eigenvalue
lam_0 = gamma_1 (gamma_1 + n - 2), n = n0 + k.  Writing f = phi g removes the
singular potential:

    lam - lam_0 = min  int g'^2 phi^2 W / int g^2 phi^2 W.

That quotient is discretized with P1 elements.  Conforming elements give an
upper bound for lam, hence a lower bound for

    alpha = (n-2)/2 - sqrt((n-2)**2/4 + lam).

All meshes are sub-meshes of one global geometric mesh in s, so the discrete
spaces are nested as sigma decreases and the bound is monotone in sigma.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.linalg import solve_banded

from .cones import QuadraticCone
from .degrees import alpha

MIN_ELEMENTS = 8
_GAUSS_X, _GAUSS_W = np.polynomial.legendre.leggauss(8)


def geometric_nodes(s_min: float, mesh_size: float) -> np.ndarray:
    """Nodes pi/2 * exp(-i h) that are >= s_min (first one rounded up), increasing."""
    top = math.pi / 2
    count = math.floor(math.log(top / s_min) / mesh_size + 1e-12)
    i = np.arange(count, -1, -1)
    return top * np.exp(-mesh_size * i)


def _assemble(nodes: np.ndarray, weight_exp: float, k: int):
    """Banded stiffness and mass matrices for P1 elements, weight sin^e cos^{k-1}."""
    a, b = nodes[:-1], nodes[1:]
    h = b - a
    x = 0.5 * (a + b)[:, None] + 0.5 * h[:, None] * _GAUSS_X[None, :]
    gw = 0.5 * h[:, None] * _GAUSS_W[None, :] * np.sin(x) ** weight_exp * np.cos(x) ** (k - 1)
    phi_l = (b[:, None] - x) / h[:, None]
    phi_r = (x - a[:, None]) / h[:, None]
    stiff = gw.sum(axis=1) / h**2
    m_ll = (gw * phi_l * phi_l).sum(axis=1)
    m_lr = (gw * phi_l * phi_r).sum(axis=1)
    m_rr = (gw * phi_r * phi_r).sum(axis=1)
    return stiff, m_ll, m_lr, m_rr


def _banded(diag_l, off, diag_r):
    """Assemble element contributions into (upper, diag, lower) bands."""
    n = len(off) + 1
    d = np.zeros(n)
    d[:-1] += diag_l
    d[1:] += diag_r
    return off, d


def lowest_excess(nodes: np.ndarray, weight_exp: float, k: int, tol: float = 1e-14) -> float:
    """Smallest discrete eigenvalue of the potential-free problem.

    Dirichlet at nodes[0], natural at nodes[-1].  Inverse iteration with
    banded solves; the Rayleigh quotient is evaluated as a sum of squares of
    differences, so it is never below the discrete minimum by cancellation.
    """
    stiff, m_ll, m_lr, m_rr = _assemble(nodes, weight_exp, k)
    a_off, a_d = _banded(stiff, -stiff, stiff)
    m_off, m_d = _banded(m_ll, m_lr, m_rr)
    # drop the Dirichlet node
    a_off, a_d = a_off[1:], a_d[1:]
    m_off, m_d = m_off[1:], m_d[1:]
    n = len(a_d)
    ab = np.zeros((3, n))
    ab[0, 1:] = a_off
    ab[1] = a_d
    ab[2, :-1] = a_off

    def apply_m(v):
        out = m_d * v
        out[:-1] += m_off * v[1:]
        out[1:] += m_off * v[:-1]
        return out

    def rayleigh(v):
        full = np.concatenate(([0.0], v))
        num = float(np.sum(stiff * np.diff(full) ** 2))
        return num / float(v @ apply_m(v))

    v = np.ones(n)
    rq = rayleigh(v)
    for _ in range(1000):
        v = solve_banded((1, 1), ab, apply_m(v))
        v /= np.max(np.abs(v))
        new = rayleigh(v)
        if abs(new - rq) <= tol * abs(new):
            return new
        rq = new
    return rq


def alpha_from_eigenvalue(lam: float, n: int) -> float:
    disc = (n - 2) ** 2 / 4 + lam
    if disc < 0:
        raise ValueError("link eigenvalue below the stability threshold")
    return (n - 2) / 2 - math.sqrt(disc)


def alpha_localized_lower_bound(cone, k: int, sigma: float, mesh_size: float = 0.02) -> float:
    """Certified lower bound for alpha(C0 x R^k; sigma) in the psi_1 sector."""
    if not isinstance(cone, QuadraticCone):
        raise ValueError("localized alpha is implemented for quadratic cones only")
    if k < 1:
        raise ValueError("localized alpha needs a spine, k >= 1")
    if not 0 < sigma < 1:
        raise ValueError("sigma must lie in (0, 1)")
    if not 0 < mesh_size <= 0.5:
        raise ValueError("mesh size must lie in (0, 0.5]")
    nodes = geometric_nodes(math.asin(sigma), mesh_size)
    if len(nodes) - 1 < MIN_ELEMENTS:
        raise ValueError(
            f"mesh size {mesh_size} too coarse for sigma={sigma}: "
            f"only {len(nodes) - 1} elements"
        )
    n0, n = cone.n0, cone.n0 + k
    g1 = -float(alpha(cone))
    lam0 = g1 * (g1 + n - 2)
    excess = lowest_excess(nodes, 2 * g1 + n0 - 1, k)
    return alpha_from_eigenvalue(lam0 + excess, n)
