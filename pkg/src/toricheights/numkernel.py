"""Exact scalar arithmetic: factorization and rational combinations of log-primes.

Every height value produced by this package is a finite sum sum_p c_p * log p
with rational c_p and p prime.  Because {log p} is linearly independent over Q,
that representation is canonical: equality is a syntactic check and ordering
can be decided exactly.  ``ExactLog`` is the value type; the module-level
functions are the stable API.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

import mpmath

from .errors import DomainError, InternalError

__all__ = [
    "ExactLog",
    "factorize",
    "is_prime",
    "exactlog_of_rational",
    "exactlog_combine",
    "exactlog_compare",
    "exactlog_to_decimal",
    "compare_exactlog_rational",
    "half_log",
    "log_int",
]

# Interval evaluations escalate their working precision geometrically; the cap
# is unreachable for distinct canonical forms and only guards against bugs.
_PREC_CAP_BITS = 10**6

# Above this estimated bit size the exact power comparison would materialize
# astronomically large integers, so ordering falls back to intervals.
_EXACT_COMPARE_BIT_LIMIT = 1 << 18

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin (exact for n < 3.3e24, the scale used here)."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_rho(n: int) -> int:
    """Deterministic Brent cycle-finding split of an odd composite n."""
    if n % 2 == 0:
        return 2
    for c in range(1, 100):
        y, m, g, q, r = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise InternalError(f"rho failed to split {n}")


def factorize(n: int, trial_bound: int = 10000) -> dict[int, int]:
    """Prime factorization of a positive integer as {prime: exponent}.

    Trial division up to ``trial_bound`` first; any remaining cofactor is
    handled by deterministic Miller-Rabin plus Brent's rho.  Returns the
    empty mapping for n = 1.
    """
    if not isinstance(n, int) or n <= 0:
        raise DomainError(f"factorize: expected a positive integer, got {n!r}")
    factors: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    p = 5
    while p <= trial_bound and p * p <= n:
        for q in (p, p + 2):
            while n % q == 0:
                factors[q] = factors.get(q, 0) + 1
                n //= q
        p += 6
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            factors[m] = factors.get(m, 0) + 1
            continue
        d = _brent_rho(m)
        stack.append(d)
        stack.append(m // d)
    return dict(sorted(factors.items()))


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise DomainError(f"expected an integer or Fraction, got {type(x).__name__}")


@dataclass(frozen=True)
class ExactLog:
    """A value sum_p c_p * log p, stored as sorted (prime, coefficient) pairs.

    Composite keys passed to the constructor are decomposed into primes and
    zero coefficients are dropped, so two ExactLogs are equal as real numbers
    iff they are equal as dataclasses.
    """

    terms: tuple[tuple[int, Fraction], ...] = ()

    def __post_init__(self):
        merged: dict[int, Fraction] = {}
        for base, coeff in self.terms:
            coeff = _as_fraction(coeff)
            if coeff == 0:
                continue
            if base <= 1:
                raise DomainError(f"log base must be > 1, got {base}")
            if is_prime(base):
                merged[base] = merged.get(base, Fraction(0)) + coeff
            else:
                for p, e in factorize(base).items():
                    merged[p] = merged.get(p, Fraction(0)) + e * coeff
        canonical = tuple(sorted((p, c) for p, c in merged.items() if c != 0))
        object.__setattr__(self, "terms", canonical)

    # -- construction -----------------------------------------------------

    @classmethod
    def zero(cls) -> "ExactLog":
        return cls()

    @classmethod
    def of_rational(cls, q) -> "ExactLog":
        return exactlog_of_rational(q)

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.terms)

    # -- linear arithmetic --------------------------------------------------

    def __add__(self, other: "ExactLog") -> "ExactLog":
        return ExactLog(self.terms + other.terms)

    def __sub__(self, other: "ExactLog") -> "ExactLog":
        return self + other.scaled(-1)

    def scaled(self, s) -> "ExactLog":
        s = _as_fraction(s)
        return ExactLog(tuple((p, c * s) for p, c in self.terms))

    def __rmul__(self, s) -> "ExactLog":
        return self.scaled(s)

    def is_zero(self) -> bool:
        return not self.terms

    # -- order ------------------------------------------------------------

    def compare(self, other: "ExactLog") -> int:
        return exactlog_compare(self, other)

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    # -- rendering ----------------------------------------------------------

    def to_decimal(self, digits: int = 6) -> str:
        return exactlog_to_decimal(self, digits)

    def __float__(self) -> float:
        return sum(float(c) * math.log(p) for p, c in self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for p, c in self.terms:
            if c == 1:
                parts.append(f"log {p}")
            else:
                parts.append(f"{c} log {p}")
        return " + ".join(parts)

    def to_json(self, decimals: int = 6) -> dict:
        return {
            "terms": [{"prime": p, "coeff": f"{c.numerator}/{c.denominator}"} for p, c in self.terms],
            "decimal": self.to_decimal(decimals),
        }


def exactlog_of_rational(q) -> ExactLog:
    """The exact value log q of a positive rational, decomposed over primes."""
    q = _as_fraction(q)
    if q <= 0:
        raise DomainError(f"log of a non-positive rational: {q}")
    terms = [(p, Fraction(e)) for p, e in factorize(q.numerator).items()]
    terms += [(p, Fraction(-e)) for p, e in factorize(q.denominator).items()]
    return ExactLog(tuple(terms))


def log_int(m: int) -> ExactLog:
    return exactlog_of_rational(m)


def half_log(m: int) -> ExactLog:
    """(1/2) log m for a positive integer m."""
    return exactlog_of_rational(m).scaled(Fraction(1, 2))


def exactlog_combine(a: ExactLog, s, b: ExactLog) -> ExactLog:
    """a + s*b, canonicalized."""
    return a + b.scaled(s)


def _interval_value(x: ExactLog, prec: int):
    """Rigorous enclosure of the real value of x at the given binary precision."""
    iv = mpmath.iv
    old = iv.prec
    try:
        iv.prec = prec
        total = iv.mpf(0)
        for p, c in x.terms:
            total += (iv.mpf(c.numerator) / iv.mpf(c.denominator)) * iv.log(iv.mpf(p))
        return total
    finally:
        iv.prec = old


def _estimated_bits(x: ExactLog, denom: int) -> float:
    return sum(abs(c * denom) * p.bit_length() for p, c in x.terms)


def exactlog_compare(a: ExactLog, b: ExactLog) -> int:
    """Exact three-way comparison: -1, 0 or +1.

    Equality is syntactic on canonical forms.  Strict order is decided by
    clearing denominators and comparing the two integer products p^m exactly;
    when those integers would be enormous the decision falls back to interval
    evaluation at geometrically increasing precision (distinct canonical forms
    have distinct values, so the loop terminates).
    """
    diff = a - b
    if diff.is_zero():
        return 0
    denom = math.lcm(*(c.denominator for _, c in diff.terms))
    if _estimated_bits(diff, denom) <= _EXACT_COMPARE_BIT_LIMIT:
        up, down = 1, 1
        for p, c in diff.terms:
            m = int(c * denom)
            if m > 0:
                up *= p**m
            else:
                down *= p**-m
        return -1 if up < down else 1
    prec = 64
    while prec <= _PREC_CAP_BITS:
        enclosure = _interval_value(diff, prec)
        if enclosure.a > 0:
            return 1
        if enclosure.b < 0:
            return -1
        prec *= 2
    raise InternalError("exactlog_compare: interval separation failed below the precision cap")


def compare_exactlog_rational(x: ExactLog, q) -> int:
    """Three-way comparison of an ExactLog against a rational number.

    x = q is only possible for x = 0 (a nonzero rational is never a rational
    combination of log-primes), so strict cases terminate under interval
    refinement.
    """
    q = _as_fraction(q)
    if x.is_zero():
        return 0 if q == 0 else (-1 if q > 0 else 1)
    if q == 0:
        return exactlog_compare(x, ExactLog())
    prec = 64
    while prec <= _PREC_CAP_BITS:
        iv = mpmath.iv
        old = iv.prec
        try:
            iv.prec = prec
            enclosure = _interval_value(x, prec) - iv.mpf(q.numerator) / iv.mpf(q.denominator)
        finally:
            iv.prec = old
        if enclosure.a > 0:
            return 1
        if enclosure.b < 0:
            return -1
        prec *= 2
    raise InternalError("compare_exactlog_rational: interval separation failed below the precision cap")


def exactlog_to_decimal(x: ExactLog, digits: int) -> str:
    """Decimal rendering with rigorous error below 10^-digits.

    The value is enclosed in an interval narrower than 10^-(digits+3); the
    midpoint is then rounded to ``digits`` decimal places, so rounding error
    plus interval width stays under one unit in the last place.
    """
    if digits < 1:
        raise DomainError(f"digits must be >= 1, got {digits}")
    if x.is_zero():
        return "0." + "0" * digits
    target = mpmath.mpf(10) ** (-(digits + 3))
    prec = max(64, int((digits + 10) * 3.33))
    while True:
        enclosure = _interval_value(x, prec)
        if enclosure.delta < target:
            break
        prec *= 2
        if prec > _PREC_CAP_BITS:
            raise InternalError("exactlog_to_decimal: interval did not narrow below the precision cap")
    old = mpmath.mp.prec
    try:
        mpmath.mp.prec = prec + 64
        mid = (mpmath.mpf(enclosure.a) + mpmath.mpf(enclosure.b)) / 2
        scaled = mid * mpmath.mpf(10) ** digits
        k = int(mpmath.nint(scaled))
    finally:
        mpmath.mp.prec = old
    sign = "-" if k < 0 else ""
    s = str(abs(k)).rjust(digits + 1, "0")
    return f"{sign}{s[:-digits]}.{s[-digits:]}"


def factorization_product(factors: Mapping[int, int]) -> int:
    """Multiply a {prime: exponent} mapping back out (test oracle helper)."""
    out = 1
    for p, e in factors.items():
        out *= p**e
    return out
