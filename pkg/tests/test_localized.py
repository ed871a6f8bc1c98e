from __future__ import annotations

import math

import numpy as np
import pytest
from scipy.linalg import eigh_tridiagonal

from conespec.cones import QuadraticCone
from conespec.degrees import alpha
from conespec.localized import alpha_from_eigenvalue, alpha_localized_lower_bound

SIMONS = QuadraticCone(3, 3)
C34 = QuadraticCone(3, 4)


def fd_alpha(cone, k: int, sigma: float, m: int = 4000) -> float:
    """Oracle: cell-centred finite differences for the untransformed problem.

    -(W f')' + mu1 W f / sin^2 = lam W f on [asin(sigma), pi/2], f(left) = 0,
    no flux at pi/2, W = sin^{n0-1} cos^{k-1}.
    """
    n0 = cone.n0
    mu1 = -(n0 - 1)
    a, b = math.asin(sigma), math.pi / 2
    h = (b - a) / m
    c = a + h * (np.arange(m) + 0.5)
    faces = a + h * np.arange(m + 1)
    W = lambda x: np.sin(x) ** (n0 - 1) * np.cos(x) ** (k - 1)
    wf = W(faces)
    wf[-1] = 0.0
    mass = W(c) * h
    diag = (wf[1:] + wf[:-1]) / h
    diag[0] += wf[0] / h  # ghost value -f_0 at the Dirichlet face
    diag += mu1 * mass / np.sin(c) ** 2
    off = -wf[1:-1] / h
    d = 1 / np.sqrt(mass)
    lam = eigh_tridiagonal(diag * d * d, off * d[:-1] * d[1:], select="i", select_range=(0, 0))[0][0]
    return alpha_from_eigenvalue(lam, n0 + k)


@pytest.mark.parametrize("cone, k", [(SIMONS, 1), (SIMONS, 2), (C34, 1)])
def test_matches_dense_mesh_oracle(cone, k):
    want = fd_alpha(cone, k, 0.5)
    errs = []
    for h in (0.01, 0.005, 0.0025):
        got = alpha_localized_lower_bound(cone, k, 0.5, mesh_size=h)
        assert got < float(alpha(cone))
        # a lower bound; the rounded-up Dirichlet node costs O(h)
        assert want - 2 * h <= got <= want + 1e-6
        errs.append(want - got)
    assert errs[0] > errs[1] > errs[2]


def test_simons_half_strictly_below_two():
    assert alpha_localized_lower_bound(SIMONS, 1, 0.5) < 2


@pytest.mark.parametrize("cone", [SIMONS, C34])
def test_monotone_and_convergent(cone):
    sigmas = [0.9, 0.5, 0.1, 1e-2, 1e-4, 1e-6, 1e-8]
    vals = [alpha_localized_lower_bound(cone, 1, s) for s in sigmas]
    a = float(alpha(cone))
    assert all(x <= y for x, y in zip(vals, vals[1:]))
    assert all(v <= a for v in vals)
    assert a - vals[-1] < 0.05


@pytest.mark.parametrize(
    "kwargs, match",
    [
        (dict(k=0, sigma=0.5), "k >= 1"),
        (dict(k=1, sigma=0.0), "sigma"),
        (dict(k=1, sigma=1.0), "sigma"),
        (dict(k=1, sigma=0.5, mesh_size=0.0), "mesh size"),
        (dict(k=1, sigma=0.9, mesh_size=0.5), "too coarse"),
    ],
)
def test_errors(kwargs, match):
    with pytest.raises(ValueError, match=match):
        alpha_localized_lower_bound(SIMONS, **kwargs)
