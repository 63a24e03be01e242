"""Controllability decision procedures for polynomial presentation matrices.

A system presented by an l x k matrix over a polynomial (differential) or
Laurent (shift) ring is controllable exactly when the variety cut out by
the ideal of its l x l minors has codimension at least 2.  For shift
systems the codimension is measured in the torus, so the minor ideal is
first saturated by the product of the variables.  Presentations whose rank
drops below l fall outside the scope of that criterion and come back as
Indeterminate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import linalg
from .groebner import (
    DimensionResult,
    GroebnerBasis,
    Ideal,
    buchberger,
    ideal_dimension,
    saturate,
)
from .matrix import MinorIdeal, PolyMatrix, hautus_matrix, minors, symbolic_rank
from .orders import grevlex_order
from .poly import Polynomial, gcd_univariate


class Status(str, Enum):
    CONTROLLABLE = "Controllable"
    UNCONTROLLABLE = "Uncontrollable"
    INDETERMINATE = "Indeterminate"


REASON_CODIM_GE_2 = "codim_ge_2"
REASON_CODIM_LT_2 = "codim_lt_2"
REASON_ZERO_MODULE = "zero_module"
REASON_RANK_DEFICIENT = "rank_deficient"


@dataclass(frozen=True)
class Verdict:
    """Outcome of the controllability decision, with its evidence."""

    status: Status
    reason: str
    codim: Optional[float] = None  # int, math.inf, or None for Indeterminate
    minor_ideal: Optional[MinorIdeal] = None
    dimension: Optional[DimensionResult] = None
    groebner: Optional[GroebnerBasis] = None

    def to_json_dict(self) -> dict:
        codim = self.codim
        if codim == math.inf:
            codim = "inf"
        return {"status": self.status.value, "codim": codim, "reason": self.reason}


def _codim_verdict(
    minor_ideal: MinorIdeal, basis: GroebnerBasis, dim: DimensionResult
) -> Verdict:
    controllable = dim.codim >= 2
    return Verdict(
        status=Status.CONTROLLABLE if controllable else Status.UNCONTROLLABLE,
        reason=REASON_CODIM_GE_2 if controllable else REASON_CODIM_LT_2,
        codim=dim.codim,
        minor_ideal=minor_ideal,
        dimension=dim,
        groebner=basis,
    )


def decide(matrix: PolyMatrix) -> Verdict:
    """Decide controllability of the system presented by the matrix rows."""
    if matrix.is_zero():
        # empty law set: the full trajectory space, trivially controllable
        return Verdict(status=Status.CONTROLLABLE, reason=REASON_ZERO_MODULE, codim=0)
    l = matrix.rows
    if symbolic_rank(matrix) < l:
        return Verdict(status=Status.INDETERMINATE, reason=REASON_RANK_DEFICIENT)
    minor_ideal = minors(matrix, l)
    ideal = minor_ideal.ideal
    if matrix.ring.laurent:
        torus_ring = ideal.ring
        product = torus_ring.one()
        for g in torus_ring.gens():
            product = product * g
        ideal = saturate(ideal, product)
    basis = buchberger(ideal, grevlex_order(ideal.ring))
    dim = ideal_dimension(basis)
    return _codim_verdict(minor_ideal, basis, dim)


def decide_1d(matrix: PolyMatrix) -> Verdict:
    """One-variable specialization: gcd of the maximal minors decides.

    Controllable iff the gcd is a nonzero constant (no common root, hence
    an empty variety); otherwise the gcd cuts out finitely many points of
    codimension 1.  Agrees with decide on every full-rank univariate input.
    """
    if matrix.ring.nvars != 1:
        raise ValueError("decide_1d needs a univariate ring")
    l = matrix.rows
    if symbolic_rank(matrix) < l:
        raise ValueError("decide_1d needs a full-row-rank presentation")
    minor_ideal = minors(matrix, l)
    g = minor_ideal.ideal.ring.zero()
    for m in minor_ideal.minors:
        g = gcd_univariate(g, m)
    if matrix.ring.laurent and not g.is_zero():
        # torus view: a pure power of the variable is a unit
        content = min(m[0] for m in g.monomials())
        if content:
            g = Polynomial(g.ring, {(m[0] - content,): c for m, c in g.terms.items()})
    if g.is_constant():
        dim = DimensionResult(dim=-1, codim=math.inf, witness_independent_set=None)
        return Verdict(
            status=Status.CONTROLLABLE,
            reason=REASON_CODIM_GE_2,
            codim=math.inf,
            minor_ideal=minor_ideal,
            dimension=dim,
        )
    dim = DimensionResult(dim=0, codim=1, witness_independent_set=())
    return Verdict(
        status=Status.UNCONTROLLABLE,
        reason=REASON_CODIM_LT_2,
        codim=1,
        minor_ideal=minor_ideal,
        dimension=dim,
    )


def _check_state_space(state, inputs) -> Tuple[List[List[Fraction]], List[List[Fraction]]]:
    x = [[Fraction(v) for v in row] for row in state]
    n = len(x)
    if n == 0 or any(len(row) != n for row in x):
        raise ValueError("state matrix must be square and nonempty")
    u = [[Fraction(v) for v in row] for row in inputs]
    if u and len(u) != n:
        raise ValueError("input matrix row count must match the state dimension")
    width = len(u[0]) if u else 0
    if any(len(row) != width for row in u):
        raise ValueError("ragged input matrix")
    if not u:
        u = [[] for _ in range(n)]
    return x, u


def kalman_rank(state: Sequence[Sequence], inputs: Sequence[Sequence]) -> bool:
    """True iff [U, XU, ..., X^(l-1)U] has full row rank over the rationals."""
    x, u = _check_state_space(state, inputs)
    n = len(x)
    blocks = []
    current = u
    for _ in range(n):
        blocks.append(current)
        current = linalg.mat_mul(x, current)
    stacked = [sum((block[i] for block in blocks), []) for i in range(n)]
    return linalg.rank(stacked) == n


@dataclass(frozen=True)
class CrossCheckResult:
    verdict: Verdict
    kalman_controllable: bool
    agree: bool


def cross_check_state_space(state, inputs) -> CrossCheckResult:
    """Run the minor-codimension test on [sI - X, -U] against the Kalman rank test."""
    verdict = decide(hautus_matrix(state, inputs))
    kalman = kalman_rank(state, inputs)
    agree = (verdict.status is Status.CONTROLLABLE) == kalman
    return CrossCheckResult(verdict=verdict, kalman_controllable=kalman, agree=agree)
