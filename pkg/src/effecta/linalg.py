"""Small exact linear algebra helpers over Fractions.

Only what the polytope and LP code needs: row reduction, affine solution
spaces and ranks.  Everything is dense and list-based; system sizes here are
tens of rows, not thousands.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


def rref(rows: list[list[Fraction]]) -> list[int]:
    """Reduce in place to reduced row echelon form, return pivot columns."""
    if not rows:
        return []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot_row = None
        for i in range(r, len(rows)):
            if rows[i][col] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = ONE / rows[r][col]
        if inv != 1:
            rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return pivots


def rank(vectors: Sequence[Sequence[Fraction]]) -> int:
    rows = [list(v) for v in vectors]
    return len(rref(rows))


def solve_affine(
    coeffs: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]
) -> tuple[list[Fraction], list[list[Fraction]], list[int]] | None:
    """Solve ``A x = b``; None when inconsistent.

    Returns (x0, directions, free_columns): the solution set is
    x0 + span(directions), where direction j has a 1 in free column j and the
    free columns are exactly the non-pivot variables.
    """
    if not coeffs:
        n = 0
        return [], [], []
    n = len(coeffs[0])
    aug = [list(row) + [b] for row, b in zip(coeffs, rhs)]
    pivots = rref(aug)
    if n in pivots:  # pivot in the constant column: 0 = nonzero
        return None
    free = [c for c in range(n) if c not in pivots]
    x0 = [ZERO] * n
    for r, col in enumerate(pivots):
        x0[col] = aug[r][n]
    dirs = []
    for f in free:
        d = [ZERO] * n
        d[f] = ONE
        for r, col in enumerate(pivots):
            d[col] = -aug[r][f]
        dirs.append(d)
    return x0, dirs, free
