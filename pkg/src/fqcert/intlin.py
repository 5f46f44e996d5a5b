"""Exact integer linear systems via column-style Hermite reduction.

``A U = H`` with U unimodular and H in lower column-echelon form.  Solving
``A x = b`` over the integers then reduces to forward substitution in H.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


@dataclass
class ColumnEchelon:
    H: list[list[int]]
    U: list[list[int]]  # n x n, columns are the transform
    pivots: list[tuple[int, int]]  # (row, column)

    @property
    def rank(self) -> int:
        return len(self.pivots)


def _col_axpy(M: list[list[int]], dst: int, src: int, q: int) -> None:
    # column dst -= q * column src
    for row in M:
        s = row[src]
        if s:
            row[dst] -= q * s


def _col_swap(M: list[list[int]], i: int, j: int) -> None:
    for row in M:
        row[i], row[j] = row[j], row[i]


def _col_neg(M: list[list[int]], i: int) -> None:
    for row in M:
        row[i] = -row[i]


def column_echelon(A: Sequence[Sequence[int]], ncols: int | None = None) -> ColumnEchelon:
    H = [list(map(int, row)) for row in A]
    n = ncols if ncols is not None else (len(H[0]) if H else 0)
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    pivots = []
    c = 0
    for r, row in enumerate(H):
        if c >= n:
            break
        while True:
            nz = [j for j in range(c, n) if row[j]]
            if not nz:
                break
            j = min(nz, key=lambda k: (abs(row[k]), k))
            if j != c:
                _col_swap(H, c, j)
                _col_swap(U, c, j)
            if len(nz) == 1:
                break
            p = row[c]
            for k in range(c + 1, n):
                if row[k]:
                    q = row[k] // p
                    _col_axpy(H, k, c, q)
                    _col_axpy(U, k, c, q)
        if row[c]:
            if row[c] < 0:
                _col_neg(H, c)
                _col_neg(U, c)
            pivots.append((r, c))
            c += 1
    return ColumnEchelon(H, U, pivots)


def solve(A: Sequence[Sequence[int]], b: Sequence[int], ncols: int | None = None):
    """Integer solution of ``A x = b`` plus a basis of the integer kernel.

    Returns ``(x, kernel)`` or ``None`` when no integer solution exists.
    Free coordinates of the echelon system are set to zero, so the answer
    is deterministic.
    """
    ech = column_echelon(A, ncols)
    H, U = ech.H, ech.U
    n = len(U)
    y = [0] * n
    pivot_of_row = dict(ech.pivots)
    for r, row in enumerate(H):
        acc = sum(row[j] * y[j] for j in range(n) if y[j])
        if r in pivot_of_row:
            c = pivot_of_row[r]
            rem = b[r] - acc
            if rem % row[c]:
                return None
            y[c] = rem // row[c]
        elif acc != b[r]:
            return None
    x = [sum(U[i][j] * y[j] for j in range(n) if y[j]) for i in range(n)]
    kernel = [[U[i][j] for i in range(n)] for j in range(ech.rank, n)]
    return x, kernel


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(u, v))
