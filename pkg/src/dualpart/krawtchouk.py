"""Exact Krawtchouk polynomials and the covering non-reflexivity criteria.

Coefficients are exact rationals; integer-argument values are exact integers;
root isolation uses exact-sign bisection seeded by sign changes on a
progressively refined rational grid (the polynomials at hand have distinct
real roots, so a fine enough grid always separates them).
"""

from __future__ import annotations

import dataclasses
import math
from fractions import Fraction
from typing import Optional, Sequence

from .config import BudgetError, InputError


# ---------------------------------------------------------------------------
# construction and evaluation
# ---------------------------------------------------------------------------

def _poly_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _binom_poly(shift: Fraction, sign: int, j: int) -> list[Fraction]:
    """Coefficients of C(sign*x + shift, j) as a polynomial in x."""
    acc = [Fraction(1)]
    for i in range(j):
        acc = _poly_mul(acc, [shift - i, Fraction(sign)])
    return [c / math.factorial(j) for c in acc]


@dataclasses.dataclass(frozen=True)
class KrawtchoukPoly:
    n: int
    k: int
    q: int
    coeffs: tuple[Fraction, ...]  # ascending, degree exactly k

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, s) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * s + c
        return acc

    def derivative_coeffs(self) -> tuple[Fraction, ...]:
        return tuple(i * c for i, c in enumerate(self.coeffs))[1:] or (Fraction(0),)

    def int_scaled_coeffs(self) -> tuple[int, ...]:
        """Coefficients cleared of denominators (sign-faithful)."""
        den = math.lcm(*(c.denominator for c in self.coeffs))
        return tuple(int(c * den) for c in self.coeffs)


def ku_build(n: int, k: int, q: int) -> KrawtchoukPoly:
    """Expanded exact coefficients of
    sum_t (-1)^t (q-1)^(k-t) C(x,t) C(n-x,k-t)."""
    if n < 0 or k < 0 or q < 2:
        raise InputError("need n,k >= 0 and q >= 2")
    coeffs = [Fraction(0)] * (k + 1)
    for t in range(k + 1):
        term = _poly_mul(_binom_poly(Fraction(0), 1, t), _binom_poly(Fraction(n), -1, k - t))
        scale = Fraction((-1) ** t * (q - 1) ** (k - t))
        for i, c in enumerate(term):
            if i <= k:
                coeffs[i] += scale * c
    if k and coeffs[k] == 0:
        raise AssertionError("degree dropped below k")
    return KrawtchoukPoly(n, k, q, tuple(coeffs))


def ku_eval(n: int, k: int, q: int, s: int, engine: str = "sum") -> int:
    """Value at an integer argument; three independent engines agree."""
    if engine == "sum":
        if not 0 <= s <= n:
            raise InputError("sum engine needs 0 <= s <= n")
        return sum(
            (-1) ** t * (q - 1) ** (k - t) * math.comb(s, t) * math.comb(n - s, k - t)
            for t in range(k + 1)
        )
    if engine == "genfun":
        if not 0 <= s <= n:
            raise InputError("generating-function engine needs 0 <= s <= n")
        # coefficient of x^k in (1-x)^s (1+(q-1)x)^(n-s)
        coeffs = [0] * (k + 1)
        coeffs[0] = 1
        for _ in range(s):
            for i in range(k, 0, -1):
                coeffs[i] -= coeffs[i - 1]
        for _ in range(n - s):
            for i in range(k, 0, -1):
                coeffs[i] += (q - 1) * coeffs[i - 1]
        return coeffs[k]
    if engine == "poly":
        val = ku_build(n, k, q)(Fraction(s))
        if val.denominator != 1:
            raise AssertionError("integer argument gave a non-integer value")
        return int(val)
    raise InputError(f"unknown engine {engine!r}")


def ku_partial_sum(n: int, k: int, q: int, s: int) -> tuple[int, int]:
    """Both sides of sum_{l<=k} KU_(n,l)(s) = KU_(n-1,k)(s-1); equality
    asserted."""
    if n < 1 or not 1 <= s <= n:
        raise InputError("need n >= 1 and s in [1,n]")
    lhs = sum(ku_eval(n, l, q, s) for l in range(k + 1))
    rhs = ku_eval(n - 1, k, q, s - 1)
    if lhs != rhs:
        raise AssertionError("partial-sum identity failed")
    return lhs, rhs


# ---------------------------------------------------------------------------
# root isolation
# ---------------------------------------------------------------------------

def _sign_at(int_coeffs: Sequence[int], x: Fraction) -> int:
    """Exact sign of the polynomial at a rational point (Horner on the
    cleared-denominator coefficients)."""
    num, den = x.numerator, x.denominator
    acc = 0
    scale = 1
    for c in reversed(int_coeffs):
        acc = acc * num + c * scale
        scale *= den
    return (acc > 0) - (acc < 0)


def isolate_real_roots(
    int_coeffs: Sequence[int],
    lo: Fraction,
    hi: Fraction,
    expected: int,
    width: Fraction = Fraction(1, 10**9),
    max_refine: int = 64,
) -> list[tuple[Fraction, Fraction]]:
    """Isolating intervals for a polynomial known to have ``expected``
    distinct real roots in (lo, hi).

    Grid sign changes seed the intervals; the grid is refined until all
    expected roots separate, then each interval is bisected to the requested
    width.  Exact rational roots come back as degenerate intervals.
    """
    points = [lo + (hi - lo) * i / max(expected * 2, 4) for i in range(max(expected * 2, 4) + 1)]
    for attempt in range(max_refine):
        signs = [_sign_at(int_coeffs, x) for x in points]
        found: list[tuple[Fraction, Fraction]] = []
        ok = True
        for i, s in enumerate(signs):
            if s == 0:
                if points[i] in (lo, hi):
                    ok = False  # root on the boundary: shrink inwards
                    break
                found.append((points[i], points[i]))
        for i in range(len(points) - 1):
            if signs[i] != 0 and signs[i + 1] != 0 and signs[i] != signs[i + 1]:
                found.append((points[i], points[i + 1]))
        if ok and len(found) == expected:
            found.sort()
            return [_bisect(int_coeffs, a, b, width) for a, b in found]
        # refine: halve every grid cell
        nxt = []
        for i in range(len(points) - 1):
            nxt.append(points[i])
            nxt.append((points[i] + points[i + 1]) / 2)
        nxt.append(points[-1])
        points = nxt
    raise BudgetError(
        f"root isolation did not separate {expected} roots in {max_refine} refinements"
    )


def _bisect(
    int_coeffs: Sequence[int], lo: Fraction, hi: Fraction, width: Fraction
) -> tuple[Fraction, Fraction]:
    if lo == hi:
        return lo, hi
    slo = _sign_at(int_coeffs, lo)
    while hi - lo > width:
        mid = (lo + hi) / 2
        sm = _sign_at(int_coeffs, mid)
        if sm == 0:
            return mid, mid
        if sm == slo:
            lo = mid
        else:
            hi = mid
    return lo, hi


def _int_coeffs_of(coeffs: Sequence[Fraction]) -> tuple[int, ...]:
    den = math.lcm(*(c.denominator for c in coeffs))
    return tuple(int(c * den) for c in coeffs)


def ku_roots(
    n: int, k: int, q: int, width: Fraction = Fraction(1, 10**9)
) -> list[tuple[Fraction, Fraction]]:
    """The k distinct real roots, isolated to the requested width."""
    if not 1 <= k <= n:
        raise InputError("need 1 <= k <= n")
    poly = ku_build(n, k, q)
    if k == 1:
        # exact rational root of the linear polynomial
        root = -poly.coeffs[0] / poly.coeffs[1]
        return [(root, root)]
    return isolate_real_roots(poly.int_scaled_coeffs(), Fraction(0), Fraction(n), k, width)


def ku_derivative_roots(
    n: int, k: int, q: int, width: Fraction = Fraction(1, 10**9)
) -> list[tuple[Fraction, Fraction]]:
    """The k-1 distinct real roots of the derivative (they interlace)."""
    if not 1 <= k <= n:
        raise InputError("need 1 <= k <= n")
    if k == 1:
        return []
    poly = ku_build(n, k, q)
    der = poly.derivative_coeffs()
    if k == 2:
        root = -der[0] / der[1]
        return [(root, root)]
    return isolate_real_roots(_int_coeffs_of(der), Fraction(0), Fraction(n), k - 1, width)


def smallest_root_floor(n: int, k: int, q: int) -> int:
    """floor of the smallest root, by exact integer scan: values before the
    first root are positive since KU_(n,k)(0) > 0."""
    if not 1 <= k <= n:
        raise InputError("need 1 <= k <= n")
    for s in range(n + 1):
        v = ku_eval(n, k, q, s)
        if v == 0:
            return s
        if v < 0:
            return s - 1
    raise AssertionError("no sign change in [0,n] despite guaranteed roots")


def _floor_of_interval(int_coeffs, lo: Fraction, hi: Fraction) -> int:
    """floor of the unique root inside an isolating interval."""
    while math.floor(lo) != math.floor(hi):
        boundary = Fraction(math.floor(hi))
        s = _sign_at(int_coeffs, boundary)
        if s == 0:
            return int(boundary)
        if s == _sign_at(int_coeffs, lo):
            lo = boundary
        else:
            hi = boundary
        if hi - lo == 0:
            break
        mid = (lo + hi) / 2
        sm = _sign_at(int_coeffs, mid)
        if sm == 0:
            lo = hi = mid
        elif sm == _sign_at(int_coeffs, lo):
            lo = mid
        else:
            hi = mid
    return math.floor(lo)


def derivative_smallest_root_floor(n: int, k: int, q: int) -> int:
    """floor of the smallest derivative root, via exact isolation."""
    roots = ku_derivative_roots(n, k, q, width=Fraction(1, 4))
    if not roots:
        raise InputError("derivative of a linear polynomial has no root")
    lo, hi = roots[0]
    if lo == hi:
        return math.floor(lo)
    der = _int_coeffs_of(ku_build(n, k, q).derivative_coeffs())
    return _floor_of_interval(der, lo, hi)


# ---------------------------------------------------------------------------
# value vectors and distinct-value bounds
# ---------------------------------------------------------------------------

def ku_value_vector(n: int, k: int, q: int, t: int) -> tuple[int, ...]:
    """The dual-class fingerprint of a support size t in [1,n]: the values
    KU_(n-1,s)(t-1) over every multiple s of k in [1,n-1].

    Two nonzero elements of the q^n product fall in the same dual class of
    the k-covering partition exactly when their fingerprints agree.
    """
    if not 1 <= t <= n:
        raise InputError("support size out of range")
    return tuple(
        ku_eval(n - 1, s, q, t - 1) for s in range(k, n, k)
    )


def dual_class_lower_bound(n: int, k: int, q: int) -> int:
    """|Lambda| >= max_s |{KU_(n-1,s)(j)}| + 1 over multiples s of k."""
    best = 1  # the identity singleton
    for s in range(k, n, k):
        vals = {ku_eval(n - 1, s, q, j) for j in range(n)}
        best = max(best, len(vals) + 1)
    return best


# ---------------------------------------------------------------------------
# closed-form threshold machinery
# ---------------------------------------------------------------------------

def thm42_threshold(q: int, clause: str, n: int) -> bool:
    """Decide n >= (A + sqrt(B)) / (2(2q-3)^2) + 3 exactly, by isolating the
    radical and comparing squares."""
    if q < 2:
        raise InputError("q >= 2 required")
    if clause == "3.1":
        a = 9 * (q - 1)
        b = 48 * q**4 - 144 * q**3 + 189 * q**2 - 162 * q + 81
    elif clause == "3.3":
        a = 4 * q**2 + 3 * q - 9
        b = 48 * q**4 - 72 * q**3 + 9 * q**2 - 54 * q + 81
    else:
        raise InputError("clause must be '3.1' or '3.3'")
    c = 2 * (2 * q - 3) ** 2
    lhs = c * (n - 3) - a
    return lhs >= 0 and lhs * lhs >= b


def eq45_w(n: int, q: int) -> dict:
    """The smallest derivative root for k = 3 in closed form:
    rational part minus sqrt(radicand)/q."""
    if n < 4:
        raise InputError("closed form needs n >= 4")
    rational = Fraction(q - 1, q) * n - 2 + Fraction(3, q)
    radicand = Fraction((q - 1) * (n - 3)) + Fraction(q * q, 3)
    if radicand <= 0:
        raise AssertionError("radicand must be positive")
    return {
        "rational_part": rational,
        "radicand": radicand,
        "sqrt_divisor": q,
        "value": float(rational) - math.sqrt(radicand) / q,
        "floor": eq45_w_floor(n, q),
    }


def eq45_w_floor(n: int, q: int) -> int:
    """Exact floor of the closed-form root: w >= i iff
    (rational - i) >= 0 and (rational - i)^2 >= radicand / q^2."""
    rational = Fraction(q - 1, q) * n - 2 + Fraction(3, q)
    radicand = Fraction((q - 1) * (n - 3)) + Fraction(q * q, 3)
    target = radicand / (q * q)

    def w_ge(i: int) -> bool:
        diff = rational - i
        return diff >= 0 and diff * diff >= target

    i = math.floor(rational)
    while not w_ge(i):
        i -= 1
    return i


def lemma415_convergence(k: int, q: int, n_list: Sequence[int]) -> list[dict]:
    """Smallest-root ratios u_(n)/n and their deviation from (q-1)/q."""
    if k < 1:
        raise InputError("k >= 1 required")
    out = []
    limit = Fraction(q - 1, q)
    for n in n_list:
        if n < k:
            raise InputError("every n must satisfy n >= k")
        lo, hi = ku_roots(n, k, q)[0]
        mid = (lo + hi) / 2
        out.append(
            {
                "n": n,
                "ratio": mid / n,
                "deviation": abs(float(mid / n - limit)),
            }
        )
    return out


# ---------------------------------------------------------------------------
# the criteria chain
# ---------------------------------------------------------------------------

def co_nonreflexivity_verdict(n: int, k: int, q: int) -> dict:
    """Sufficient-criteria verdict for the all-k-subsets covering partition
    of a q^n product: reflexive, non-reflexive, or undecided-by-criteria.

    The criteria are tried in a fixed order and the first that fires is
    reported; they are sufficient conditions, so 'undecided' only means none
    applies (the caller may fall back to brute force).
    """
    if not 1 <= k <= n or q < 2:
        raise InputError("need 1 <= k <= n and q >= 2")
    co_classes = -(-n // k) + 1
    base = {"q": q, "n": n, "k": k, "co_classes": co_classes}

    def verdict(v: str, criterion: str, **extra) -> dict:
        return {**base, "verdict": v, "criterion": criterion, **extra}

    # reflexive sufficient conditions
    if k == n or k == 1:
        return verdict("reflexive", "partition-covering-equal-products")
    if q == 2 and n >= 2 and k in (2, n - 1):
        return verdict("reflexive", "q2-small-or-cosmall-k")
    # non-reflexive sufficient conditions, fixed-parameter families first
    if q >= 3 and n >= 3 and 2 <= k <= n - 1 and n % k == 1:
        return verdict("non-reflexive", "hamming-collapse-n-equiv-1-mod-k")
    if q >= 3 and n >= 4 and k == n - 2:
        return verdict("non-reflexive", "q-ge-3-k-n-minus-2")
    if q == 2 and n >= 5 and -(-n // 2) <= k <= n - 2:
        return verdict("non-reflexive", "q2-upper-half-k")
    if q == 2 and n >= 7 and k % 2 == 1 and -(-n // 5) <= k <= n - 2:
        return verdict("non-reflexive", "q2-odd-fifth-range-k")
    if q >= 3 and n >= 3 and k == 2:
        return verdict("non-reflexive", "k2-derivative-root")
    if k == 3:
        if n % 3 == 0 and thm42_threshold(q, "3.1", n):
            return verdict("non-reflexive", "k3-threshold-3.1")
        if n % 3 == 2 and thm42_threshold(q, "3.3", n):
            return verdict("non-reflexive", "k3-threshold-3.3")
        if q == 2 and n >= 5:
            return verdict("non-reflexive", "q2-k3")
    # generic Krawtchouk criteria
    need = Fraction(n, k)
    for s in range(k, n, k):
        vals = {ku_eval(n - 1, s, q, j) for j in range(n)}
        if len(vals) - 1 >= need:
            return verdict(
                "non-reflexive",
                "distinct-value-count",
                s=s,
                lambda_lower_bound=len(vals) + 1,
            )
    for s in range(k, n, k):
        if smallest_root_floor(n - 1, s, q) >= need:
            return verdict("non-reflexive", "smallest-root-floor", s=s)
    if n >= 3:
        for s in range(k, n, k):
            if s >= 2 and derivative_smallest_root_floor(n - 1, s, q) >= need:
                return verdict("non-reflexive", "derivative-root-floor", s=s)
    return verdict("undecided-by-criteria", "none")
