"""Small exact linear algebra over a field: rank, solve, inverse, determinant."""

from __future__ import annotations

from typing import Optional


def _echelon(rows: list[list], ncols: int):
    """In-place reduced row echelon; returns list of pivot column indices."""
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(rows)):
            if not rows[i][c].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def matrix_rank(matrix: list[list]) -> int:
    if not matrix:
        return 0
    rows = [list(row) for row in matrix]
    return len(_echelon(rows, len(rows[0])))


def solve(matrix: list[list], rhs: list) -> Optional[list]:
    """One solution x of matrix @ x = rhs, or None if inconsistent."""
    if not matrix:
        return []
    n = len(matrix[0])
    rows = [list(row) + [b] for row, b in zip(matrix, rhs)]
    pivots = _echelon(rows, n)
    field = matrix[0][0].parent
    for i in range(len(pivots), len(rows)):
        if not rows[i][n].is_zero():
            return None
    x = [field.zero()] * n
    for r, c in enumerate(pivots):
        x[c] = rows[r][n]
    return x


def matrix_inverse(matrix: list[list]) -> Optional[list[list]]:
    n = len(matrix)
    field = matrix[0][0].parent
    one, zero = field.one(), field.zero()
    rows = [list(matrix[i]) + [one if j == i else zero for j in range(n)] for i in range(n)]
    pivots = _echelon(rows, n)
    if len(pivots) < n:
        return None
    return [row[n:] for row in rows]


def determinant(matrix: list[list]):
    n = len(matrix)
    field = matrix[0][0].parent
    rows = [list(r) for r in matrix]
    det = field.one()
    for c in range(n):
        pivot_row = None
        for i in range(c, n):
            if not rows[i][c].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            return field.zero()
        if pivot_row != c:
            rows[c], rows[pivot_row] = rows[pivot_row], rows[c]
            det = -det
        det = det * rows[c][c]
        inv = rows[c][c].inverse()
        for i in range(c + 1, n):
            if not rows[i][c].is_zero():
                f = rows[i][c] * inv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return det
