"""Dense exact linear algebra over the rationals.

Matrices are lists of lists of Fractions.  Used for the state-space rank
test and for finite-window trajectory spaces, where feasibility verdicts
must not depend on floating-point rank decisions.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

Row = List[Fraction]


def _as_fraction_rows(rows: Sequence[Sequence]) -> List[Row]:
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows: Sequence[Sequence], ncols: Optional[int] = None) -> Tuple[List[Row], List[int]]:
    """Reduced row echelon form and pivot column indices."""
    m = _as_fraction_rows(rows)
    if not m:
        return [], []
    if ncols is None:
        ncols = len(m[0])
    width = len(m[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = Fraction(1) / m[r][c]
        pivot = [x * inv if x else x for x in m[r]]
        m[r] = pivot
        support = [j for j in range(width) if pivot[j]]
        for i in range(len(m)):
            f = m[i][c]
            if i != r and f != 0:
                row = m[i]
                for j in support:
                    row[j] -= f * pivot[j]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace_basis(rows: Sequence[Sequence], ncols: int) -> List[Row]:
    """Basis of {x : A x = 0}, one vector per free column."""
    reduced, pivots = rref(rows, ncols)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -reduced[r][fc]
        basis.append(v)
    return basis


def solve_affine(rows: Sequence[Sequence], rhs: Sequence) -> Optional[Row]:
    """One solution of A x = b with free variables set to 0, or None if infeasible."""
    if not rows:
        return []
    ncols = len(rows[0])
    augmented = [list(row) + [b] for row, b in zip(rows, rhs)]
    reduced, pivots = rref(augmented, ncols + 1)
    if ncols in pivots:
        return None  # a row reduced to 0 = 1
    x = [Fraction(0)] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = reduced[r][ncols]
    return x


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> List[Row]:
    rows_a = _as_fraction_rows(a)
    rows_b = _as_fraction_rows(b)
    inner = len(rows_b)
    return [
        [sum((ra[t] * rows_b[t][j] for t in range(inner)), Fraction(0)) for j in range(len(rows_b[0]))]
        for ra in rows_a
    ]
