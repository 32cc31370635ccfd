"""Exact Gauss-Jordan elimination over the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row-echelon form and pivot columns, pivots chosen left to right."""
    a = [[Fraction(v) for v in r] for r in rows]
    if not a:
        return a, []
    ncols = len(a[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [v * inv for v in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


class LinearSolver:
    """Solve ``A c = b`` for many right-hand sides with one elimination.

    Free unknowns are set to zero, so the answer is the unique solution
    supported on the pivot columns (leftmost columns win).
    """

    def __init__(self, matrix: Sequence[Sequence]):
        self.nrows = len(matrix)
        self.ncols = len(matrix[0]) if matrix else 0
        augmented = [
            list(row) + [1 if i == j else 0 for j in range(self.nrows)]
            for i, row in enumerate(matrix)
        ]
        reduced, pivots = rref(augmented)
        self.pivots = [c for c in pivots if c < self.ncols]
        self._reduced = reduced
        self._transform = [row[self.ncols:] for row in reduced]

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def solve(self, rhs: Sequence) -> list[Fraction] | None:
        """Return a solution vector, or ``None`` when the system is inconsistent."""
        b = [Fraction(v) for v in rhs]
        tb = [sum((t * v for t, v in zip(row, b) if t and v), Fraction(0)) for row in self._transform]
        for i in range(self.rank, self.nrows):
            if tb[i]:
                return None
        x = [Fraction(0)] * self.ncols
        for i, c in enumerate(self.pivots):
            x[c] = tb[i]
        return x


def solve(matrix: Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    return LinearSolver(matrix).solve(rhs)
