"""Exact rational matrices, backed by sympy's DomainMatrix over QQ."""

from __future__ import annotations

from fractions import Fraction

from sympy import QQ
from sympy.polys.matrices import DomainMatrix


def qq(x):
    x = Fraction(x)
    return QQ(x.numerator, x.denominator)


def to_fraction(x) -> Fraction:
    return Fraction(int(QQ.numer(x)), int(QQ.denom(x)))


def matrix(rows) -> DomainMatrix:
    rows = [list(r) for r in rows]
    n = len(rows)
    m = len(rows[0]) if rows else 0
    return DomainMatrix([[qq(x) for x in r] for r in rows], (n, m), QQ)


def zeros(n: int, m: int) -> DomainMatrix:
    return DomainMatrix.zeros((n, m), QQ)


def eye(n: int) -> DomainMatrix:
    return DomainMatrix.eye(n, QQ)


def to_rows(M: DomainMatrix) -> list[list[Fraction]]:
    return [[to_fraction(x) for x in row] for row in M.to_list()]


def blocks(grid, r: int) -> DomainMatrix:
    """Assemble a block matrix from a grid of r-by-r DomainMatrix blocks (None means zero)."""
    nrows = len(grid)
    ncols = len(grid[0]) if grid else 0
    if nrows == 0 or ncols == 0:
        return zeros(nrows * r, ncols * r)
    rows = []
    for brow in grid:
        parts = [b if b is not None else zeros(r, r) for b in brow]
        rows.append(parts[0].hstack(*parts[1:]) if len(parts) > 1 else parts[0])
    return rows[0].vstack(*rows[1:]) if len(rows) > 1 else rows[0]


def block(M: DomainMatrix, i: int, j: int, r: int) -> DomainMatrix:
    return M.extract(list(range(i * r, (i + 1) * r)), list(range(j * r, (j + 1) * r)))


def rank(M: DomainMatrix) -> int:
    if M.shape[0] == 0 or M.shape[1] == 0:
        return 0
    return M.rank()


def is_invertible(M: DomainMatrix) -> bool:
    return M.shape[0] == M.shape[1] and rank(M) == M.shape[0]


def solve(A: DomainMatrix, B: DomainMatrix):
    """Solve A X = B exactly; returns (X, pivots) or None when inconsistent.

    Free variables are set to zero.
    """
    n, m = A.shape
    k = B.shape[1]
    if m == 0:
        return (zeros(0, k), ()) if _is_zero(B) else None
    aug = A.hstack(B)
    R, pivots = aug.rref()
    if any(p >= m for p in pivots):
        return None
    rows = R.to_list()
    X = [[QQ(0)] * k for _ in range(m)]
    for i, p in enumerate(pivots):
        X[p] = rows[i][m:]
    return DomainMatrix(X, (m, k), QQ), tuple(pivots)


def _is_zero(M: DomainMatrix) -> bool:
    return all(x == 0 for row in M.to_list() for x in row)


def is_zero(M: DomainMatrix) -> bool:
    return _is_zero(M)


def equal(A: DomainMatrix, B: DomainMatrix) -> bool:
    # == on DomainMatrix is sensitive to the dense/sparse representation
    return A.shape == B.shape and to_rows(A) == to_rows(B)
