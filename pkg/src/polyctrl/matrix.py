"""Matrices over polynomial rings: determinants, minors, symbolic rank.

The determinant uses fraction-free (Bareiss) elimination, whose divisions
are exact by the Sylvester identity; Laplace expansion is kept as a
cross-check oracle for small sizes.  Laurent matrices are normalized row
by row: multiplying a row by a monomial unit changes neither the row
module nor, up to units, the ideal generated by the maximal minors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from .groebner import Ideal
from .poly import Polynomial, Ring, exact_div


@dataclass(frozen=True)
class PolyMatrix:
    """A rows x cols matrix of polynomials sharing one ring."""

    ring: Ring
    entries: Tuple[Tuple[Polynomial, ...], ...]

    def __init__(self, ring: Ring, entries: Iterable[Iterable[Polynomial]]):
        rows = tuple(tuple(row) for row in entries)
        if not rows or not rows[0]:
            raise ValueError("matrix needs at least one row and one column")
        width = len(rows[0])
        for row in rows:
            if len(row) != width:
                raise ValueError("ragged matrix")
            for p in row:
                if p.ring != ring:
                    raise ValueError("entry ring mismatch")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "entries", rows)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    def entry(self, i: int, j: int) -> Polynomial:
        return self.entries[i][j]

    def is_zero(self) -> bool:
        return all(p.is_zero() for row in self.entries for p in row)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix(
            self.ring,
            [[self.entries[i][j] for j in col_idx] for i in row_idx],
        )

    def __str__(self):
        return "\n".join("[" + ", ".join(str(p) for p in row) + "]" for row in self.entries)


@dataclass(frozen=True)
class MinorIdeal:
    """All r x r minors in lexicographic (row-subset, column-subset) order."""

    size: int
    minors: Tuple[Polynomial, ...]
    ideal: Ideal


def _row_clearing_lifts(matrix: PolyMatrix) -> List[Tuple[int, ...]]:
    """Per-row exponent vectors e >= 0 such that row * x^e is polynomial."""
    n = matrix.ring.nvars
    lifts = []
    for row in matrix.entries:
        shifts = [0] * n
        for p in row:
            for m in p.monomials():
                for t in range(n):
                    shifts[t] = min(shifts[t], m[t])
        lifts.append(tuple(-s for s in shifts))
    return lifts


def clear_laurent_rows(matrix: PolyMatrix) -> PolyMatrix:
    """Rescale each row by a monomial unit so all entries become polynomials.

    Row scaling by units preserves the row module, so rank and the minor
    ideal (up to unit factors on each minor) are unchanged.  Non-Laurent
    matrices pass through.
    """
    if not matrix.ring.laurent:
        return matrix
    out_ring = matrix.ring.polynomial_ring()
    cleared_rows = []
    for row, lift in zip(matrix.entries, _row_clearing_lifts(matrix)):
        cleared_rows.append(
            [
                Polynomial(out_ring, {tuple(e + l for e, l in zip(m, lift)): c for m, c in p.terms.items()})
                for p in row
            ]
        )
    return PolyMatrix(out_ring, cleared_rows)


def _bareiss_determinant(m: List[List[Polynomial]], ring: Ring) -> Polynomial:
    n = len(m)
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        if m[k][k].is_zero():
            pivot_row = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if pivot_row is None:
                return ring.zero()
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                elt = m[k][k] * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = exact_div(elt, prev)
            m[i][k] = ring.zero()
        prev = m[k][k]
    return m[n - 1][n - 1] * sign


def determinant(matrix: PolyMatrix) -> Polynomial:
    """Exact determinant by fraction-free elimination."""
    if matrix.rows != matrix.cols:
        raise ValueError("determinant needs a square matrix")
    if matrix.ring.laurent:
        # det over the Laurent ring: clear rows, divide the row units back out
        lifts = _row_clearing_lifts(matrix)
        cleared = clear_laurent_rows(matrix)
        det = _bareiss_determinant([list(r) for r in cleared.entries], cleared.ring)
        unit = tuple(-sum(l[t] for l in lifts) for t in range(matrix.ring.nvars))
        return Polynomial(matrix.ring, dict(det.terms)).mul_term(unit, 1)
    return _bareiss_determinant([list(row) for row in matrix.entries], matrix.ring)


def determinant_laplace(matrix: PolyMatrix) -> Polynomial:
    """Cofactor expansion along the first row; oracle for small matrices."""
    if matrix.rows != matrix.cols:
        raise ValueError("determinant needs a square matrix")
    n = matrix.rows
    if n == 1:
        return matrix.entry(0, 0)
    total = matrix.ring.zero()
    cols = range(n)
    for j in cols:
        if matrix.entry(0, j).is_zero():
            continue
        minor = matrix.submatrix(range(1, n), [c for c in cols if c != j])
        term = matrix.entry(0, j) * determinant_laplace(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def minors(matrix: PolyMatrix, r: int) -> MinorIdeal:
    """The ideal of all r x r minors (Laurent input is row-normalized first)."""
    if not 1 <= r <= min(matrix.rows, matrix.cols):
        raise ValueError(f"minor size {r} out of range for {matrix.rows}x{matrix.cols}")
    work = clear_laurent_rows(matrix)
    out = []
    for row_idx in itertools.combinations(range(work.rows), r):
        for col_idx in itertools.combinations(range(work.cols), r):
            out.append(determinant(work.submatrix(row_idx, col_idx)))
    return MinorIdeal(size=r, minors=tuple(out), ideal=Ideal(work.ring, out))


def symbolic_rank(matrix: PolyMatrix) -> int:
    """Rank over the fraction field: the largest r with a nonzero r x r minor."""
    work = clear_laurent_rows(matrix)
    m = [list(row) for row in work.entries]
    ring = work.ring
    nrows, ncols = work.rows, work.cols
    rank = 0
    prev = ring.one()
    for k in range(min(nrows, ncols)):
        pivot = next(
            (
                (i, j)
                for j in range(k, ncols)
                for i in range(k, nrows)
                if not m[i][j].is_zero()
            ),
            None,
        )
        if pivot is None:
            break
        pi, pj = pivot
        if pi != k:
            m[k], m[pi] = m[pi], m[k]
        if pj != k:
            for row in m:
                row[k], row[pj] = row[pj], row[k]
        rank += 1
        for i in range(k + 1, nrows):
            for j in range(k + 1, ncols):
                elt = m[k][k] * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = exact_div(elt, prev)
            m[i][k] = ring.zero()
        prev = m[k][k]
    return rank


def hautus_matrix(state: Sequence[Sequence], inputs: Sequence[Sequence], var: str = "s") -> PolyMatrix:
    """[s*I - X, -U] over Q[s] for a state-space pair (X, U)."""
    x_rows = [[Fraction(v) for v in row] for row in state]
    n_states = len(x_rows)
    if n_states == 0 or any(len(row) != n_states for row in x_rows):
        raise ValueError("state matrix must be square and nonempty")
    u_rows = [[Fraction(v) for v in row] for row in inputs]
    if u_rows and len(u_rows) != n_states:
        raise ValueError("input matrix row count must match the state dimension")
    n_inputs = len(u_rows[0]) if u_rows else 0
    if any(len(row) != n_inputs for row in u_rows):
        raise ValueError("ragged input matrix")
    ring = Ring((var,), laurent=False)
    s = ring.variable(0)
    entries = []
    for i in range(n_states):
        row = []
        for j in range(n_states):
            p = ring.constant(-x_rows[i][j])
            if i == j:
                p = p + s
            row.append(p)
        for j in range(n_inputs):
            row.append(ring.constant(-u_rows[i][j]))
        entries.append(row)
    return PolyMatrix(ring, entries)
