"""Exact arithmetic substrate.

Cyclotomic integers in canonical power-basis form (the value type of every
character sum), sparse polynomials with exact rational exponents and
coefficients, and the greedy factor-matching procedure for products of
binomials x^n +- a.

No floating point anywhere: equality of character sums must be decidable.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional

from .config import InputError

NEG_INF = float("-inf")


# ---------------------------------------------------------------------------
# dense integer polynomials (constant term first), internal helpers
# ---------------------------------------------------------------------------

def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_div_exact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials; den must divide num and be monic
    up to +-1 leading coefficient."""
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(q) - 1, -1, -1):
        c = num[i + len(den) - 1]
        if c % lead:
            raise ArithmeticError("non-exact polynomial division")
        q[i] = c // lead
        if q[i]:
            for j, d in enumerate(den):
                num[i + j] -= q[i] * d
    if any(num):
        raise ArithmeticError("non-exact polynomial division")
    return q


@lru_cache(maxsize=None)
def _cyclotomic_coeffs(m: int) -> tuple[int, ...]:
    """Integer coefficients of the m-th cyclotomic polynomial, constant first.

    Computed by exact division of x^m - 1 by the product of Phi_d over proper
    divisors d of m.
    """
    if m < 1:
        raise InputError("cyclotomic polynomial needs m >= 1")
    num = [0] * (m + 1)
    num[0], num[m] = -1, 1
    den = [1]
    for d in range(1, m):
        if m % d == 0:
            phi_d = _cyclotomic_coeffs(d)
            new = [0] * (len(den) + len(phi_d) - 1)
            for i, a in enumerate(den):
                if a:
                    for j, b in enumerate(phi_d):
                        new[i + j] += a * b
            den = new
    return tuple(_poly_div_exact(num, den))


@lru_cache(maxsize=None)
def _reduction_rows(m: int) -> tuple[tuple[int, ...], ...]:
    """Row e (0 <= e < m) holds the power-basis coordinates of x^e mod Phi_m."""
    phi = _cyclotomic_coeffs(m)
    d = len(phi) - 1
    rows: list[tuple[int, ...]] = []
    for e in range(m):
        if e < d:
            row = [0] * d
            row[e] = 1
        else:
            # multiply previous row by x and reduce the overflow term
            prev = rows[-1]
            row = [0] + list(prev[:-1])
            top = prev[-1]
            if top:
                for j in range(d):
                    row[j] -= top * phi[j]
        rows.append(tuple(row))
    return tuple(rows)


def _reduce_mod_cyclotomic(coeffs: list[int], m: int) -> tuple[int, ...]:
    """Reduce an integer polynomial (any degree) modulo Phi_m."""
    phi = _cyclotomic_coeffs(m)
    d = len(phi) - 1
    c = list(coeffs)
    for i in range(len(c) - 1, d - 1, -1):
        top = c[i]
        if top:
            c[i] = 0
            for j in range(d + 1):
                c[i - d + j] -= top * phi[j]
    c = c[:d] + [0] * max(0, d - len(c))
    return tuple(c[:d])


def euler_phi_degree(m: int) -> int:
    """deg(Phi_m), i.e. Euler's totient for m >= 2, and 1 for m = 1."""
    return len(_cyclotomic_coeffs(m)) - 1


# ---------------------------------------------------------------------------
# cyclotomic integers
# ---------------------------------------------------------------------------

class CycInt:
    """An element of Z[zeta_m] in canonical power-basis coordinates.

    Two values with the same modulus are equal iff their coordinate tuples
    are identical.  Instances are immutable and hashable.
    """

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs: Iterable[int]):
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != euler_phi_degree(m):
            raise InputError(
                f"CycInt modulus {m} needs {euler_phi_degree(m)} coordinates, "
                f"got {len(coeffs)}"
            )
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("CycInt is immutable")

    # construction -----------------------------------------------------

    @classmethod
    def from_int(cls, n: int, m: int = 1) -> "CycInt":
        c = [0] * euler_phi_degree(m)
        c[0] = n
        return cls(m, c)

    @classmethod
    def root_of_unity(cls, m: int, e: int) -> "CycInt":
        return cls(m, _reduction_rows(m)[e % m])

    @classmethod
    def from_exponent_counts(cls, m: int, counts: Iterable[int]) -> "CycInt":
        """Sum of counts[e] copies of zeta_m^e, reduced to canonical form."""
        rows = _reduction_rows(m)
        d = euler_phi_degree(m)
        acc = [0] * d
        for e, cnt in enumerate(counts):
            if cnt:
                row = rows[e % m]
                for j in range(d):
                    acc[j] += cnt * row[j]
        return cls(m, acc)

    # ring structure ----------------------------------------------------

    def _check(self, other: "CycInt") -> None:
        if self.m != other.m:
            raise InputError(
                f"modulus mismatch ({self.m} vs {other.m}); embed into the "
                "lcm explicitly first"
            )

    def __add__(self, other: "CycInt") -> "CycInt":
        self._check(other)
        return CycInt(self.m, (a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "CycInt") -> "CycInt":
        self._check(other)
        return CycInt(self.m, (a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "CycInt":
        return CycInt(self.m, (-a for a in self.coeffs))

    def __mul__(self, other) -> "CycInt":
        if isinstance(other, int):
            return CycInt(self.m, (a * other for a in self.coeffs))
        self._check(other)
        n = len(self.coeffs)
        prod = [0] * (2 * n - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        prod[i + j] += a * b
        return CycInt(self.m, _reduce_mod_cyclotomic(prod, self.m))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CycInt)
            and self.m == other.m
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.m, self.coeffs))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def as_int(self) -> Optional[int]:
        """The rational integer this value equals, or None."""
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def embed(self, big_m: int) -> "CycInt":
        """Embed into Z[zeta_M] for m | M via zeta_m = zeta_M^(M/m)."""
        if big_m % self.m:
            raise InputError(f"{self.m} does not divide {big_m}")
        step = big_m // self.m
        counts = [0] * big_m
        # power-basis coordinate j corresponds to zeta_m^j
        for j, c in enumerate(self.coeffs):
            counts[(j * step) % big_m] += c
        return CycInt.from_exponent_counts(big_m, counts)

    def __repr__(self) -> str:
        return f"CycInt(m={self.m}, {list(self.coeffs)})"


def root_of_unity_sum(m: int, exponents: Iterable[int]) -> CycInt:
    """Sum of zeta_m^e over a multiset of exponents, in canonical form."""
    counts = [0] * m
    for e in exponents:
        counts[e % m] += 1
    return CycInt.from_exponent_counts(m, counts)


def cyc_is_rational_integer(v: CycInt) -> Optional[int]:
    """Fast-path extraction of a rational integer value."""
    return v.as_int()


def reduction_matrix(m: int) -> tuple[tuple[int, ...], ...]:
    """The m x deg(Phi_m) matrix mapping exponent counts to canonical
    coordinates; shared with the vectorized duality engine."""
    return _reduction_rows(m)


# ---------------------------------------------------------------------------
# sparse polynomials with rational exponents
# ---------------------------------------------------------------------------

class SparsePoly:
    """Polynomial with exact rational coefficients and exponents.

    Rational exponents are needed because weighted-poset weights key the
    exponent lattice.  Zero coefficients are never stored; the zero
    polynomial has degree -inf (a float sentinel distinct from 0).
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        out: dict[Fraction, Fraction] = {}
        if terms:
            for e, c in dict(terms).items():
                c = Fraction(c)
                if c:
                    out[Fraction(e)] = c
        object.__setattr__(self, "terms", out)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("SparsePoly is immutable")

    @classmethod
    def zero(cls) -> "SparsePoly":
        return cls()

    @classmethod
    def monomial(cls, coeff, exponent=0) -> "SparsePoly":
        return cls({Fraction(exponent): Fraction(coeff)})

    @classmethod
    def from_int_coeffs(cls, coeffs: Iterable[int]) -> "SparsePoly":
        return cls({Fraction(i): Fraction(c) for i, c in enumerate(coeffs)})

    @property
    def degree(self):
        if not self.terms:
            return NEG_INF
        return max(self.terms)

    def coefficient(self, exponent) -> Fraction:
        return self.terms.get(Fraction(exponent), Fraction(0))

    def __add__(self, other: "SparsePoly") -> "SparsePoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return SparsePoly(out)

    def __sub__(self, other: "SparsePoly") -> "SparsePoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) - c
        return SparsePoly(out)

    def __mul__(self, other) -> "SparsePoly":
        if isinstance(other, (int, Fraction)):
            return SparsePoly({e: c * other for e, c in self.terms.items()})
        out: dict[Fraction, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return SparsePoly(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, SparsePoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def evaluate(self, x: Fraction) -> Fraction:
        # only valid for integer exponents
        total = Fraction(0)
        for e, c in self.terms.items():
            if e.denominator != 1:
                raise InputError("cannot evaluate at rational exponents")
            total += c * Fraction(x) ** int(e)
        return total

    def __repr__(self) -> str:
        if not self.terms:
            return "SparsePoly(0)"
        parts = [f"{c}*x^{e}" for e, c in sorted(self.terms.items())]
        return "SparsePoly(" + " + ".join(parts) + ")"


def cyclotomic_polynomial(m: int) -> SparsePoly:
    """The m-th cyclotomic polynomial Phi_m as a SparsePoly."""
    return SparsePoly.from_int_coeffs(_cyclotomic_coeffs(m))


# ---------------------------------------------------------------------------
# binomial-product factor matching
# ---------------------------------------------------------------------------

def expand_binomial_product(factors) -> SparsePoly:
    """Expand a product of factors (x^n + sign*a) exactly."""
    acc = SparsePoly.monomial(1)
    for n, a, sign in factors:
        term = SparsePoly({Fraction(n): Fraction(1), Fraction(0): sign * Fraction(a)})
        acc = acc * term
    return acc


def match_binomial_factors(left, right):
    """Pair up two multisets of binomial factors (x^n + sign*a).

    Returns a list of (left_index, right_index) pairs matching degree,
    constant and sign exactly, chosen greedily from the largest degree down
    (ties broken by input order), or None when the multisets differ.
    """
    if len(left) != len(right):
        return None

    def key(item):
        i, (n, a, sign) = item
        return (-n, -Fraction(a), -sign)

    ls = sorted(enumerate(left), key=key)
    rs = sorted(enumerate(right), key=key)
    pairs = []
    for (li, lf), (ri, rf) in zip(ls, rs):
        if lf[0] != rf[0] or Fraction(lf[1]) != Fraction(rf[1]) or lf[2] != rf[2]:
            return None
        pairs.append((li, ri))
    return pairs
