"""Exact rational linear algebra for the small systems met in root data."""

from collections.abc import Sequence
from fractions import Fraction

from coxtype.exceptions import InternalError

Matrix = list[list[Fraction]]


def _as_matrix(rows: Sequence[Sequence[int | Fraction]]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def solve(matrix: Sequence[Sequence[int | Fraction]], rhs: Sequence[int | Fraction]) -> list[Fraction]:
    """Solve ``matrix @ x = rhs`` for a nonsingular square matrix.

    Gauss-Jordan elimination over the rationals. An empty system returns an
    empty solution.

    Raises:
        InternalError: If the matrix is singular or not square.
    """
    n = len(matrix)
    if len(rhs) != n or any(len(row) != n for row in matrix):
        raise InternalError(f"expected a square system of size {n}")

    m = _as_matrix(matrix)
    b = [Fraction(x) for x in rhs]

    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            raise InternalError("singular system")
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            b[col], b[pivot] = b[pivot], b[col]

        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        b[col] *= inv

        for r in range(n):
            if r == col or m[r][col] == 0:
                continue
            factor = m[r][col]
            m[r] = [x - factor * y for x, y in zip(m[r], m[col])]
            b[r] -= factor * b[col]

    return b


def inverse(matrix: Sequence[Sequence[int | Fraction]]) -> Matrix:
    """Inverse of a nonsingular square matrix, column by column."""
    n = len(matrix)
    columns = [solve(matrix, [int(i == j) for i in range(n)]) for j in range(n)]
    return [[columns[j][i] for j in range(n)] for i in range(n)]
