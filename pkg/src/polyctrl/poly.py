"""Exact multivariate (Laurent) polynomial arithmetic over the rationals.

A polynomial is stored as a sparse map from exponent vectors to nonzero
Fraction coefficients.  Exponent vectors are plain int tuples with one
entry per ring variable; Laurent rings permit negative entries.  The zero
polynomial is the empty map.

Example (ring with variables x, y):

    x^2*y + 3  ->  {(2, 1): Fraction(1), (0, 0): Fraction(3)}

Terms are re-sorted on construction, so iteration order, printing, and
hashing are reproducible.  Instances are immutable after construction and
safe to share between concurrent workers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Tuple, Union

Monomial = Tuple[int, ...]
Scalar = Union[int, Fraction]

# Degree of the zero polynomial; compares below every integer degree.
NEG_INF = float("-inf")


def _is_identifier(name: str) -> bool:
    return name.isidentifier()


@dataclass(frozen=True)
class Ring:
    """A polynomial ring Q[x1..xn] or Laurent ring Q[x1,x1^-1,..] over the rationals."""

    var_names: Tuple[str, ...]
    laurent: bool = False

    def __post_init__(self):
        names = tuple(self.var_names)
        object.__setattr__(self, "var_names", names)
        if len(names) < 1:
            raise ValueError("ring needs at least one variable")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names: {names}")
        for name in names:
            if not name or not _is_identifier(name):
                raise ValueError(f"invalid variable name: {name!r}")

    @property
    def nvars(self) -> int:
        return len(self.var_names)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c: Scalar) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: c})

    def variable(self, i: int, power: int = 1) -> "Polynomial":
        exps = [0] * self.nvars
        exps[i] = power
        return Polynomial(self, {tuple(exps): 1})

    def gens(self) -> Tuple["Polynomial", ...]:
        return tuple(self.variable(i) for i in range(self.nvars))

    def monomial(self, exps: Monomial, c: Scalar = 1) -> "Polynomial":
        return Polynomial(self, {tuple(exps): c})

    def polynomial_ring(self) -> "Ring":
        """The plain (non-Laurent) ring on the same variables."""
        if not self.laurent:
            return self
        return Ring(self.var_names, laurent=False)

    def __str__(self):
        kind = "Laurent" if self.laurent else "poly"
        return f"Q[{', '.join(self.var_names)}] ({kind})"


def _coerce_coeff(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int) and not isinstance(c, bool):
        return Fraction(c)
    raise TypeError(f"coefficient must be int or Fraction, got {type(c).__name__}")


class Polynomial:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("ring", "_terms")

    def __init__(self, ring: Ring, terms: Mapping[Monomial, Scalar]):
        cleaned = {}
        n = ring.nvars
        for mono, c in terms.items():
            mono = tuple(mono)
            if len(mono) != n:
                raise ValueError(f"exponent vector {mono} has wrong length for {ring}")
            if not ring.laurent and any(e < 0 for e in mono):
                raise ValueError(f"negative exponent {mono} in non-Laurent ring")
            c = _coerce_coeff(c)
            if c != 0:
                acc = cleaned.get(mono)
                cleaned[mono] = c if acc is None else acc + c
        # canonical sorted storage: deterministic iteration and printing
        ordered = {m: cleaned[m] for m in sorted(cleaned) if cleaned[m] != 0}
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "_terms", ordered)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return MappingProxyType(self._terms)

    def monomials(self) -> Iterable[Monomial]:
        return self._terms.keys()

    def coefficient(self, mono: Monomial) -> Fraction:
        return self._terms.get(tuple(mono), Fraction(0))

    def num_terms(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in m) for m in self._terms)

    def constant_value(self) -> Fraction:
        """The value of a constant polynomial."""
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.coefficient((0,) * self.ring.nvars)

    def total_degree(self):
        """Max over terms of the sum of positive exponent entries; -inf for zero."""
        if not self._terms:
            return NEG_INF
        return max(sum(e for e in m if e > 0) for m in self._terms)

    # ---- arithmetic ----

    def _check_ring(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check_ring(other)
            return other
        return self.ring.constant(_coerce_coeff(other))

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.ring, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            c = _coerce_coeff(other)
            return Polynomial(self.ring, {m: v * c for m, v in self._terms.items()})
        self._check_ring(other)
        out = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = monomial_mul(m1, m2)
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return Polynomial(self.ring, out)

    def __rmul__(self, other) -> "Polynomial":
        return self * other

    def __pow__(self, exponent: int) -> "Polynomial":
        if not isinstance(exponent, int):
            raise TypeError("polynomial power must be an int")
        if exponent < 0:
            return self.unit_inverse(-exponent)
        result = self.ring.one()
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def unit_inverse(self, power: int = 1) -> "Polynomial":
        """Inverse (to the given power) of a single-term polynomial, if it is a unit."""
        if len(self._terms) != 1:
            raise ValueError("only single-term polynomials are invertible")
        ((m, c),) = self._terms.items()
        inv_m = tuple(-e * power for e in m)
        if any(e != 0 for e in inv_m) and not self.ring.laurent:
            raise ValueError("monomial inverse needs a Laurent ring")
        return Polynomial(self.ring, {inv_m: Fraction(1) / c ** power})

    def mul_term(self, mono: Monomial, coeff: Scalar) -> "Polynomial":
        """Multiply by a single term coeff * x^mono."""
        c = _coerce_coeff(coeff)
        if c == 0:
            return self.ring.zero()
        mono = tuple(mono)
        return Polynomial(
            self.ring, {monomial_mul(m, mono): v * c for m, v in self._terms.items()}
        )

    def map_ring(self, ring: Ring) -> "Polynomial":
        """Reinterpret the same terms in another ring with the same variable count."""
        if ring.nvars != self.ring.nvars:
            raise ValueError("variable count mismatch")
        return Polynomial(ring, self._terms)

    # ---- leading terms (non-Laurent representations only) ----

    def leading_term(self, order) -> Tuple[Monomial, Fraction]:
        """The order-maximal (monomial, coefficient) pair of a nonzero polynomial."""
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        if any(e < 0 for m in self._terms for e in m):
            raise ValueError("leading term needs a non-Laurent representation")
        m = max(self._terms, key=order.key)
        return m, self._terms[m]

    def leading_monomial(self, order) -> Monomial:
        return self.leading_term(order)[0]

    def monic(self, order) -> "Polynomial":
        if not self._terms:
            return self
        _, c = self.leading_term(order)
        return self * (Fraction(1) / c)

    # ---- comparison / printing ----

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, tuple(self._terms.items())))

    def __str__(self):
        return to_string(self)

    def __repr__(self):
        return f"Polynomial({to_string(self)!r})"


# ---- monomial helpers (exponent tuples) ----

def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))

def monomial_div(a: Monomial, b: Monomial):
    """a / b as a monomial with nonnegative entries, or None if b does not divide a."""
    q = tuple(x - y for x, y in zip(a, b))
    return q if all(e >= 0 for e in q) else None

def monomial_divides(b: Monomial, a: Monomial) -> bool:
    return all(x >= y for x, y in zip(a, b))

def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))

def monomial_support(m: Monomial) -> Tuple[int, ...]:
    return tuple(i for i, e in enumerate(m) if e != 0)


# ---- printing ----

def _format_term(ring: Ring, mono: Monomial, coeff: Fraction) -> str:
    factors = []
    for name, e in zip(ring.var_names, mono):
        if e == 0:
            continue
        factors.append(name if e == 1 else f"{name}^{e}")
    if not factors:
        return str(abs(coeff))
    body = "*".join(factors)
    a = abs(coeff)
    return body if a == 1 else f"{a}*{body}"


def to_string(p: Polynomial) -> str:
    """Canonical text form; re-parses to an equal polynomial."""
    if p.is_zero():
        return "0"
    # descending, degree first: familiar textbook ordering
    monos = sorted(
        p.monomials(),
        key=lambda m: (sum(e for e in m if e > 0), m),
        reverse=True,
    )
    parts = []
    for i, m in enumerate(monos):
        c = p.coefficient(m)
        piece = _format_term(p.ring, m, c)
        if i == 0:
            parts.append(piece if c > 0 else f"-{piece}")
        else:
            parts.append(f"+ {piece}" if c > 0 else f"- {piece}")
    return " ".join(parts)


# ---- division, gcd, Laurent normalization ----

def divmod_single(p: Polynomial, d: Polynomial, order) -> Tuple[Polynomial, Polynomial]:
    """Division with remainder by a single nonzero divisor under the given order."""
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    p._check_ring(d)
    lm, lc = d.leading_term(order)
    quo: dict = {}
    rem: dict = {}
    work = dict(p.terms)
    while work:
        m = max(work, key=order.key)
        c = work.pop(m)
        q = monomial_div(m, lm)
        if q is None:
            rem[m] = rem.get(m, Fraction(0)) + c
            continue
        factor = c / lc
        quo[q] = quo.get(q, Fraction(0)) + factor
        for dm, dc in d.terms.items():
            if dm == lm:
                continue
            t = monomial_mul(dm, q)
            nc = work.get(t, Fraction(0)) - factor * dc
            if nc == 0:
                work.pop(t, None)
            else:
                work[t] = nc
    return Polynomial(p.ring, quo), Polynomial(p.ring, rem)


def exact_div(p: Polynomial, d: Polynomial, order=None) -> Polynomial:
    """Quotient p / d when the division is exact; raises ValueError otherwise."""
    from .orders import grevlex_order  # deferred: orders has no poly dependency

    if order is None:
        order = grevlex_order(p.ring)
    q, r = divmod_single(p, d, order)
    if not r.is_zero():
        raise ValueError("division is not exact")
    return q


def gcd_univariate(p: Polynomial, q: Polynomial) -> Polynomial:
    """Monic gcd in Q[x] by the Euclidean algorithm; gcd(p, 0) = monic(p)."""
    ring = p.ring
    if ring.nvars != 1 or ring.laurent:
        raise ValueError("gcd_univariate needs a univariate non-Laurent ring")
    p._check_ring(q)
    from .orders import lex_order

    order = lex_order(ring)
    a, b = p, q
    while not b.is_zero():
        _, r = divmod_single(a, b, order)
        a, b = b, r
    return a.monic(order) if not a.is_zero() else a


def laurent_clear(p: Polynomial) -> Tuple[Polynomial, Monomial]:
    """Split p = q * x^m with q polynomial and x^m the smallest clearing unit.

    Only variables that actually appear with negative exponents are cleared,
    so q is not divisible by any cleared variable.  On a non-Laurent ring
    this is the identity with unit exponent 0.  Zero maps to (0, unit 1).
    """
    ring = p.ring
    out_ring = ring.polynomial_ring()
    n = ring.nvars
    if p.is_zero():
        return out_ring.zero(), (0,) * n
    mins = [min(m[i] for m in p.monomials()) for i in range(n)]
    unit = tuple(m if m < 0 else 0 for m in mins)
    shifted = {
        tuple(e - u for e, u in zip(m, unit)): c for m, c in p.terms.items()
    }
    return Polynomial(out_ring, shifted), unit
