"""Buchberger completion, ideal membership, dimension, elimination, saturation.

The engine works over plain (non-Laurent) polynomial rings with exact
rational coefficients.  Buchberger runs with the normal pair-selection
strategy and both classical skip criteria (coprime leading monomials and
the chain criterion), then minimalizes and interreduces, so the returned
basis is the unique reduced monic Groebner basis of the ideal for the
given order.  Dimension of the variety is read off the leading-term ideal
by enumerating independent variable subsets.

Everything returned is immutable; distinct computations share no state.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from .orders import MonomialOrder, elimination_order, grevlex_order
from .poly import (
    Monomial,
    Polynomial,
    Ring,
    monomial_div,
    monomial_divides,
    monomial_lcm,
    monomial_mul,
    monomial_support,
)

# Subset enumeration in the dimension computation is 2^n.
MAX_DIMENSION_VARS = 8


@dataclass(frozen=True)
class Ideal:
    """A finitely generated ideal in a non-Laurent polynomial ring."""

    ring: Ring
    generators: Tuple[Polynomial, ...]

    def __init__(self, ring: Ring, generators: Iterable[Polynomial]):
        if ring.laurent:
            raise ValueError("ideals are computed in non-Laurent rings")
        gens = []
        for g in generators:
            if g.ring != ring:
                raise ValueError("generator ring mismatch")
            if not g.is_zero():
                gens.append(g)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "generators", tuple(gens))


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced monic Groebner basis, elements sorted by leading monomial."""

    ring: Ring
    order: MonomialOrder
    elements: Tuple[Polynomial, ...]

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


@dataclass(frozen=True)
class DimensionResult:
    """Dimension data of a variety: dim in {-1, 0..n}, codim = n - dim.

    dim == -1 encodes the empty variety; its codim is the +inf sentinel,
    which compares greater than every integer.  The witness is a maximal
    independent variable subset (None for the empty variety).
    """

    dim: int
    codim: float
    witness_independent_set: Optional[Tuple[str, ...]]


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    """S-polynomial: both leading terms lifted to their lcm and cancelled."""
    if f.is_zero() or g.is_zero():
        raise ValueError("s_polynomial needs nonzero inputs")
    f._check_ring(g)
    lmf, lcf = f.leading_term(order)
    lmg, lcg = g.leading_term(order)
    lcm = monomial_lcm(lmf, lmg)
    return f.mul_term(monomial_div(lcm, lmf), Fraction(1) / lcf) - g.mul_term(
        monomial_div(lcm, lmg), Fraction(1) / lcg
    )


def normal_form(
    f: Polynomial, basis: Sequence[Polynomial], order: MonomialOrder
) -> Polynomial:
    """Remainder of f under multivariate division by basis (tried in order).

    No term of the result is divisible by any basis leading monomial, and
    f minus the result lies in the ideal generated by basis.
    """
    divisors = [(g, *g.leading_term(order)) for g in basis if not g.is_zero()]
    rem: dict = {}
    work = dict(f.terms)
    while work:
        m = max(work, key=order.key)
        c = work.pop(m)
        for g, lm, lc in divisors:
            q = monomial_div(m, lm)
            if q is None:
                continue
            factor = c / lc
            for gm, gc in g.terms.items():
                if gm == lm:
                    continue
                t = monomial_mul(gm, q)
                nc = work.get(t, Fraction(0)) - factor * gc
                if nc == 0:
                    work.pop(t, None)
                else:
                    work[t] = nc
            break
        else:
            rem[m] = c
    return Polynomial(f.ring, rem)


def _normal_pair_key(pair, lms, order):
    i, j = pair
    return (order.key(monomial_lcm(lms[i], lms[j])), i, j)


def buchberger(ideal: Ideal, order: Optional[MonomialOrder] = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal under the order (default grevlex)."""
    ring = ideal.ring
    if order is None:
        order = grevlex_order(ring)

    basis: List[Polynomial] = []
    lms: List[Monomial] = []
    for g in ideal.generators:
        r = normal_form(g, basis, order)
        if not r.is_zero():
            basis.append(r.monic(order))
            lms.append(basis[-1].leading_monomial(order))

    pending = {(i, j) for j in range(len(basis)) for i in range(j)}
    while pending:
        i, j = min(pending, key=lambda p: _normal_pair_key(p, lms, order))
        pending.discard((i, j))
        lcm = monomial_lcm(lms[i], lms[j])
        # coprime criterion: disjoint leading monomials reduce to zero
        if lcm == monomial_mul(lms[i], lms[j]):
            continue
        # chain criterion: a third element dividing the lcm whose pairs with
        # i and j are already settled makes this pair redundant
        if any(
            k != i and k != j
            and monomial_divides(lms[k], lcm)
            and (min(i, k), max(i, k)) not in pending
            and (min(j, k), max(j, k)) not in pending
            for k in range(len(basis))
        ):
            continue
        r = normal_form(s_polynomial(basis[i], basis[j], order), basis, order)
        if r.is_zero():
            continue
        basis.append(r.monic(order))
        lms.append(basis[-1].leading_monomial(order))
        new = len(basis) - 1
        pending.update((t, new) for t in range(new))

    # minimalize: scan by ascending leading monomial, keep only elements whose
    # leading monomial no kept element divides
    minimal: List[Polynomial] = []
    for g in sorted(basis, key=lambda h: order.key(h.leading_monomial(order))):
        lm = g.leading_monomial(order)
        if all(not monomial_divides(h.leading_monomial(order), lm) for h in minimal):
            minimal.append(g)

    # interreduce: fully reduce every element against the others
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        r = normal_form(g, others, order)
        if not r.is_zero():
            reduced.append(r.monic(order))
    reduced.sort(key=lambda g: order.key(g.leading_monomial(order)))
    return GroebnerBasis(ring, order, tuple(reduced))


def contains_one(basis: GroebnerBasis) -> bool:
    """True iff the basis is {1}, i.e. the variety is empty."""
    return len(basis.elements) == 1 and basis.elements[0].is_constant()


def ideal_dimension(basis: GroebnerBasis) -> DimensionResult:
    """Combinatorial dimension of the leading-term ideal of a reduced basis.

    dim is the size of the largest variable subset S such that no leading
    monomial is supported entirely inside S; the empty variety gets dim -1
    and codim +inf.
    """
    ring = basis.ring
    n = ring.nvars
    if n > MAX_DIMENSION_VARS:
        raise ValueError(f"dimension enumeration capped at {MAX_DIMENSION_VARS} variables")
    if contains_one(basis):
        return DimensionResult(dim=-1, codim=math.inf, witness_independent_set=None)
    supports = [
        frozenset(monomial_support(g.leading_monomial(basis.order)))
        for g in basis.elements
    ]
    for size in range(n, -1, -1):
        for subset in itertools.combinations(range(n), size):
            chosen = frozenset(subset)
            if all(not s <= chosen for s in supports):
                names = tuple(ring.var_names[i] for i in subset)
                return DimensionResult(dim=size, codim=n - size, witness_independent_set=names)
    raise AssertionError("the empty subset is always independent for 1-free ideals")


def eliminate(ideal: Ideal, drop: Sequence[str]) -> Ideal:
    """Generators of ideal ∩ Q[remaining variables], via a block order basis."""
    ring = ideal.ring
    drop = tuple(drop)
    if not drop:
        return Ideal(ring, buchberger(ideal).elements)
    order = elimination_order(ring, drop)
    dropped = {ring.var_names.index(v) for v in drop}
    basis = buchberger(ideal, order)
    kept = [
        g
        for g in basis.elements
        if all(not (set(monomial_support(m)) & dropped) for m in g.monomials())
    ]
    return Ideal(ring, kept)


def saturate(ideal: Ideal, f: Polynomial) -> Ideal:
    """I : f^infinity via the auxiliary-variable trick (adjoin t, add 1 - t*f)."""
    if f.is_zero():
        raise ValueError("cannot saturate by the zero polynomial")
    if f.ring != ideal.ring:
        raise ValueError("saturation polynomial ring mismatch")
    ring = ideal.ring
    aux = next(f"t{i}" for i in itertools.count() if f"t{i}" not in ring.var_names)
    ext = Ring(ring.var_names + (aux,), laurent=False)

    def lift(p: Polynomial) -> Polynomial:
        return Polynomial(ext, {m + (0,): c for m, c in p.terms.items()})

    t = ext.variable(ext.nvars - 1)
    ext_ideal = Ideal(ext, [lift(g) for g in ideal.generators] + [ext.one() - t * lift(f)])
    eliminated = eliminate(ext_ideal, [aux])
    gens = [
        Polynomial(ring, {m[:-1]: c for m, c in g.terms.items()})
        for g in eliminated.generators
    ]
    return Ideal(ring, gens)


def ideal_member(f: Polynomial, basis: GroebnerBasis) -> bool:
    return normal_form(f, basis.elements, basis.order).is_zero()


def ideal_equal(a: Ideal, b: Ideal, order: Optional[MonomialOrder] = None) -> bool:
    """Ideal equality via the uniqueness of the reduced basis."""
    if a.ring != b.ring:
        return False
    if order is None:
        order = grevlex_order(a.ring)
    return buchberger(a, order).elements == buchberger(b, order).elements
