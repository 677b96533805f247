"""Exact dense linear algebra over the rationals for small matrices.

Dimensions here are discrete invariants, so everything runs on Fractions;
no floating point anywhere.
"""

from fractions import Fraction


def row_echelon(rows):
    """Gaussian elimination with exact pivoting.

    Returns (echelon rows, rank, pivot columns).  The input is not modified.
    """
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return [], 0, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, r, pivots


def rank(rows):
    return row_echelon(rows)[1]


def in_row_span(rows, vec):
    """True iff vec lies in the row span of rows (over Q)."""
    base = rank(rows)
    return rank(list(rows) + [vec]) == base


def kernel_dimension(rows, ncols=None):
    """Nullity of the matrix whose rows are given."""
    if not rows:
        if ncols is None:
            raise ValueError("empty system needs an explicit column count")
        return ncols
    return len(rows[0]) - rank(rows)


def inverse(mat):
    """Exact inverse of a square matrix; raises ValueError if singular."""
    n = len(mat)
    aug = [[Fraction(mat[i][j]) for j in range(n)]
           + [Fraction(1 if i == j else 0) for j in range(n)]
           for i in range(n)]
    ech, r, _ = row_echelon(aug)
    if r < n or any(ech[i][i] != 1 for i in range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in ech[:n]]
