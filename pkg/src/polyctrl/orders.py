"""Monomial orders: lex, graded reverse lex, and block elimination orders.

An order is a sort key on exponent tuples: larger key means larger
monomial.  All three kinds are multiplicative total orders and well-orders
on nonnegative exponent vectors, which is what the division algorithm and
Buchberger completion require.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from .poly import Monomial, Ring

LEX = "lex"
GREVLEX = "grevlex"
BLOCK = "block"


def _grevlex_key(exps: Sequence[int]) -> tuple:
    return (sum(exps), tuple(-e for e in reversed(exps)))


@dataclass(frozen=True)
class MonomialOrder:
    """A total monomial order on a fixed number of variables.

    priority lists variable indices from most to least significant.  For a
    block order the first `split` priority entries form the leading block,
    compared (by grevlex) before the rest; that makes it an elimination
    order for those variables.
    """

    kind: str
    priority: Tuple[int, ...]
    split: int = 0

    def __post_init__(self):
        if self.kind not in (LEX, GREVLEX, BLOCK):
            raise ValueError(f"unknown order kind {self.kind!r}")
        n = len(self.priority)
        if sorted(self.priority) != list(range(n)):
            raise ValueError("priority must be a permutation of variable indices")
        if self.kind == BLOCK and not (0 < self.split < n):
            raise ValueError("block order needs 0 < split < nvars")

    @property
    def nvars(self) -> int:
        return len(self.priority)

    def key(self, m: Monomial) -> tuple:
        e = [m[i] for i in self.priority]
        if self.kind == LEX:
            return tuple(e)
        if self.kind == GREVLEX:
            return _grevlex_key(e)
        return _grevlex_key(e[: self.split]) + _grevlex_key(e[self.split:])

    def greater(self, a: Monomial, b: Monomial) -> bool:
        return self.key(a) > self.key(b)


def _resolve_priority(ring: Ring, priority: Optional[Sequence[str]]) -> Tuple[int, ...]:
    if priority is None:
        return tuple(range(ring.nvars))
    idx = []
    for name in priority:
        if name not in ring.var_names:
            raise ValueError(f"unknown variable {name!r}")
        idx.append(ring.var_names.index(name))
    if sorted(idx) != list(range(ring.nvars)):
        raise ValueError("priority must mention every variable exactly once")
    return tuple(idx)


def lex_order(ring: Ring, priority: Optional[Sequence[str]] = None) -> MonomialOrder:
    return MonomialOrder(LEX, _resolve_priority(ring, priority))


def grevlex_order(ring: Ring, priority: Optional[Sequence[str]] = None) -> MonomialOrder:
    return MonomialOrder(GREVLEX, _resolve_priority(ring, priority))


def elimination_order(ring: Ring, drop: Sequence[str]) -> MonomialOrder:
    """Block order whose leading block is `drop`: a Groebner basis under it
    intersected with the drop-free elements generates the elimination ideal."""
    drop_set = set(drop)
    unknown = drop_set - set(ring.var_names)
    if unknown:
        raise ValueError(f"unknown variables {sorted(unknown)}")
    if len(drop_set) >= ring.nvars:
        raise ValueError("cannot eliminate every variable")
    if not drop_set:
        raise ValueError("empty elimination block")
    first = [i for i, v in enumerate(ring.var_names) if v in drop_set]
    rest = [i for i, v in enumerate(ring.var_names) if v not in drop_set]
    return MonomialOrder(BLOCK, tuple(first + rest), split=len(first))
