"""Exact linear algebra over the rationals (Gauss-Jordan elimination)."""

from __future__ import annotations

from fractions import Fraction


def solve(matrix, rhs):
    """Return one solution ``x`` of ``matrix @ x == rhs`` or ``None``.

    ``matrix`` is a list of rows.  Free variables are set to zero, so for a
    system of full column rank the returned solution is the unique one.
    """
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    aug = [[Fraction(v) for v in row] + [Fraction(r)] for row, r in zip(matrix, rhs)]
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if aug[i][c]), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = 1 / aug[r][c]
        pivot_row = [v * inv for v in aug[r]]
        aug[r] = pivot_row
        for i in range(rows):
            if i != r and aug[i][c]:
                f = aug[i][c]
                row = aug[i]
                for k in range(c, cols + 1):
                    if pivot_row[k]:
                        row[k] -= f * pivot_row[k]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if aug[i][cols]:
            return None
    x = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        x[c] = aug[i][cols]
    return x


def rank(matrix) -> int:
    rows = [[Fraction(v) for v in row] for row in matrix]
    if not rows:
        return 0
    cols = len(rows[0])
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(r + 1, len(rows)):
            if rows[i][c]:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return r
