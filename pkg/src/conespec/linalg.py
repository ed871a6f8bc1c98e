"""Exact Gaussian elimination over Fractions and same-field surds."""

from __future__ import annotations

from fractions import Fraction


def rref(rows: list[list], ncols: int) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        pick = next((i for i in range(row, len(m)) if m[i][col] != 0), None)
        if pick is None:
            continue
        m[row], m[pick] = m[pick], m[row]
        inv = Fraction(1) / m[row][col]
        m[row] = [v * inv for v in m[row]]
        for i in range(len(m)):
            if i != row and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[row])]
        pivots.append(col)
        row += 1
        if row == len(m):
            break
    return m[:row], pivots


def nullspace(rows: list[list], ncols: int) -> list[list]:
    """Basis of {x : rows @ x = 0}, one vector per free column."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in zip(red, pivots):
            v[p] = -r[f]
        basis.append(v)
    return basis


def rank(rows: list[list], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def in_span(basis: list[list], v: list) -> bool:
    if not any(x != 0 for x in v):
        return True
    return rank(basis + [v], len(v)) == rank(basis, len(v))
