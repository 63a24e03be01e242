"""Shared random generators for the property tests (all explicitly seeded)."""

import random

from polyctrl.experiments import monomials_up_to
from polyctrl.matrix import PolyMatrix
from polyctrl.poly import Polynomial, Ring


def random_poly(ring, rng, deg, density=0.6, bound=4):
    """Random polynomial of total degree <= deg with small integer coefficients."""
    terms = {}
    for mono in monomials_up_to(ring.nvars, deg):
        if rng.random() < density:
            c = rng.randint(-bound, bound)
            if c:
                terms[mono] = c
    return Polynomial(ring, terms)


def random_laurent_poly(ring, rng, span=1, max_terms=3, bound=3):
    """Random Laurent polynomial with exponents in [-span, span]."""
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        mono = tuple(rng.randint(-span, span) for _ in range(ring.nvars))
        c = rng.randint(-bound, bound)
        if c:
            terms[mono] = terms.get(mono, 0) + c
    return Polynomial(ring, terms)


def random_full_rank_matrix(rng, max_rows=2, max_cols=3, max_vars=2, deg=2):
    """A random l x k matrix (l <= k) resampled until its symbolic rank is l."""
    from polyctrl.matrix import symbolic_rank

    n = rng.randint(1, max_vars)
    ring = Ring(tuple(f"x{j + 1}" for j in range(n)))
    l = rng.randint(1, max_rows)
    k = rng.randint(l, max_cols)
    while True:
        matrix = PolyMatrix(
            ring, [[random_poly(ring, rng, deg) for _ in range(k)] for _ in range(l)]
        )
        if symbolic_rank(matrix) == l:
            return matrix
