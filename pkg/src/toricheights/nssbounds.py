"""Bound calculators for the sparse arithmetic Nullstellensatz and its affine companion.

The bounds are exact symbolic quantities: integers for degrees, rational
combinations of log-primes for heights.  Decimal renderings are advisory.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DomainError, PreconditionError
from .heights import LaurentPolyQ
from .numkernel import ExactLog, exactlog_of_rational
from .polytope import ExponentSet, normalized_volume

__all__ = ["NssInput", "NssBounds", "nss_support", "nss_bounds", "bk_afin_bound"]


def nss_support(n: int, polys: Sequence[LaurentPolyQ]) -> ExponentSet:
    """The augmented support: union of {0, e_1..e_n} with every polynomial support."""
    if n < 1:
        raise DomainError(f"nss_support: n must be >= 1, got {n}")
    points = {tuple(0 for _ in range(n))}
    points.update(tuple(1 if j == i else 0 for j in range(n)) for i in range(n))
    for k, f in enumerate(polys):
        if f.n != n:
            raise DomainError(f"polys[{k}]: has {f.n} variables, expected {n}")
        for e in f.support():
            if any(x < 0 for x in e):
                raise DomainError(f"polys[{k}]: negative exponent; ordinary polynomials only")
            points.add(e)
    return ExponentSet(n, tuple(sorted(points)))


@dataclass(frozen=True)
class NssInput:
    n: int
    s: int
    d: int
    h: ExactLog
    vol: int

    def __post_init__(self):
        if self.n < 1 or self.s < 1 or self.d < 1:
            raise DomainError("NssInput: n, s and d must all be >= 1")
        if self.vol < 1:
            raise DomainError("NssInput: the normalized volume must be a positive integer")

    @classmethod
    def from_system(cls, n: int, polys: Sequence[LaurentPolyQ]) -> "NssInput":
        from .heights import poly_height

        if not polys:
            raise DomainError("NssInput: needs at least one polynomial")
        support = nss_support(n, polys)
        d = max(f.max_total_degree() for f in polys)
        if d < 1:
            raise DomainError("NssInput: max degree must be >= 1")
        h = ExactLog()
        for f in polys:
            hf = poly_height(f, "sup")
            if hf > h:
                h = hf
        return cls(n, len(polys), d, h, normalized_volume(support))


@dataclass(frozen=True)
class NssBounds:
    deg_bound: int
    height_bound: ExactLog


def nss_bounds(data: NssInput) -> NssBounds:
    """Degree and height bounds for Bezout cofactors certifying an empty variety:

        deg  <= 2 n^2 d Vol(A)
        h    <= 2 (n+1)^3 d Vol(A) (h + log s + 14 (n+1) d log(d+1))
    """
    if data.n < 2 or data.d < 2:
        warnings.warn(
            "nss_bounds is calibrated for n, d >= 2; the formula is still evaluated",
            stacklevel=2,
        )
    n, s, d, vol = data.n, data.s, data.d, data.vol
    deg_bound = 2 * n * n * d * vol
    inner = data.h + exactlog_of_rational(s) + exactlog_of_rational(d + 1).scaled(14 * (n + 1) * d)
    height_bound = inner.scaled(2 * (n + 1) ** 3 * d * vol)
    return NssBounds(deg_bound, height_bound)


def bk_afin_bound(n: int, d: int, h: ExactLog, vol: int) -> ExactLog:
    """Affine intersection height bound Vol(A) (n h + 5 n (n+1) log(d+1)); needs n >= 2."""
    if n < 2:
        raise PreconditionError(f"bk_afin_bound requires n >= 2 (got n = {n})")
    if d < 1 or vol < 1:
        raise DomainError("bk_afin_bound: d and Vol(A) must be positive")
    inner = h.scaled(n) + exactlog_of_rational(d + 1).scaled(5 * n * (n + 1))
    return inner.scaled(vol)
