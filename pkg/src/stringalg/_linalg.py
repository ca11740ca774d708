"""Exact Gaussian elimination over the rationals.

Small dense systems only; everything here is deterministic so that solver
output can be pinned in golden tests.
"""

from __future__ import annotations

from fractions import Fraction


def _rref(rows, ncols):
    """Reduced row echelon form in place; returns pivot column list."""
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = Fraction(1) / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def nullspace(rows, ncols):
    """Basis of the solution space of the homogeneous system rows * x = 0."""
    work = [[Fraction(x) for x in row] for row in rows if any(row)]
    pivots = _rref(work, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for r, c in enumerate(pivots):
            vec[c] = -work[r][free]
        basis.append(vec)
    return basis


def solve_affine(rows, rhs):
    """Particular solution of rows * x = rhs with free variables set to 0.

    Returns None when the system is inconsistent.  Deterministic: the
    solution comes from the reduced echelon form of the augmented matrix.
    """
    ncols = len(rows[0]) if rows else 0
    work = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    work = [row for row in work if any(row)]
    pivots = _rref(work, ncols + 1)
    if ncols in pivots:
        return None
    sol = [Fraction(0)] * ncols
    for r, c in enumerate(pivots):
        sol[c] = work[r][ncols]
    return sol


def matrix_inverse(rows):
    """Inverse of a square rational matrix, or None when singular."""
    n = len(rows)
    work = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
            for i, row in enumerate(rows)]
    pivots = _rref(work, 2 * n)
    if pivots[:n] != list(range(n)):
        return None
    return [row[n:] for row in work[:n]]
