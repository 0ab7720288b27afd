"""Exact rational matrices: rank, kernel and solving by Gaussian elimination.

Pivoting is deterministic: columns left to right, first nonzero row below the
current one.  Arithmetic is :class:`fractions.Fraction` throughout.
"""

from __future__ import annotations

from fractions import Fraction


class RationalMatrix:
    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows, ncols=None):
        self.rows = [[Fraction(x) for x in r] for r in rows]
        self.nrows = len(self.rows)
        if ncols is None:
            ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != ncols for r in self.rows):
            raise ValueError("ragged matrix")
        self.ncols = ncols

    @classmethod
    def zeros(cls, nrows, ncols):
        return cls([[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, RationalMatrix) and self.shape == other.shape and self.rows == other.rows

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.rows)) if other.rows else [()] * other.ncols
        return RationalMatrix(
            [[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols] for r in self.rows],
            other.ncols,
        )

    def transpose(self):
        return RationalMatrix(
            [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)], self.nrows
        )

    def is_zero(self):
        return all(x == 0 for r in self.rows for x in r)

    def __repr__(self):
        return f"RationalMatrix({[[str(x) for x in r] for r in self.rows]})"


def row_echelon(M: RationalMatrix):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    A = [list(r) for r in M.rows]
    pivots = []
    r = 0
    for c in range(M.ncols):
        p = next((i for i in range(r, M.nrows) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(M.nrows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == M.nrows:
            break
    return A, pivots


def rank_kernel(M: RationalMatrix):
    """Exact rank and a basis of the right kernel {v : M v = 0}."""
    A, pivots = row_echelon(M)
    free = [c for c in range(M.ncols) if c not in set(pivots)]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * M.ncols
        v[fcol] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -A[i][fcol]
        basis.append(v)
    return len(pivots), basis


def rank(M: RationalMatrix) -> int:
    return len(row_echelon(M)[1])


def solve(M: RationalMatrix, b):
    """One solution x of M x = b, or None when inconsistent."""
    aug = RationalMatrix([list(r) + [Fraction(v)] for r, v in zip(M.rows, b)], M.ncols + 1)
    A, pivots = row_echelon(aug)
    if M.ncols in pivots:
        return None
    x = [Fraction(0)] * M.ncols
    for i, pc in enumerate(pivots):
        x[pc] = A[i][M.ncols]
    return x
