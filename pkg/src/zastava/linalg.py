"""Exact Gaussian elimination over the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class SingularSystemError(ArithmeticError):
    pass


def rref(rows: Sequence[Sequence[Fraction]], ncols: int):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((k for k in range(r, len(m)) if m[k][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for k in range(len(m)):
            if k != r and m[k][c] != 0:
                f = m[k][c]
                m[k] = [a - f * b for a, b in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence[Fraction]], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def solve_unique(A: Sequence[Sequence[Fraction]], b: Sequence[Fraction], ncols: int) -> list[Fraction]:
    """Solve a possibly overdetermined system ``A x = b`` exactly.

    Raises SingularSystemError when the solution is not unique or the
    system is inconsistent.
    """
    if len(A) != len(b):
        raise ValueError("row count mismatch")
    aug = [list(row) + [rhs] for row, rhs in zip(A, b)]
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        raise SingularSystemError("inconsistent system")
    if len(pivots) != ncols:
        raise SingularSystemError(f"rank {len(pivots)} < {ncols} unknowns")
    return [red[k][ncols] for k in range(ncols)]
