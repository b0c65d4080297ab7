"""Heights of rational and torsion points, monomial maps, and polynomial norms.

Everything is exact over Q.  Heights are computed by clearing coordinates (or
coefficients) to coprime integers, after which every non-archimedean place
contributes zero and only the archimedean norm survives; the result is stored
as an ExactLog.  Root-of-unity factors have absolute value one at every place
of any number field, so torsion points and torsion translates of rational
points are handled symbolically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import DomainError
from .numkernel import ExactLog, exactlog_of_rational, half_log
from .polytope import ExponentSet, LatticePolytope, lattice_points

__all__ = [
    "ProjPointQ",
    "AffinePointQ",
    "TorsionPoint",
    "LaurentPolyQ",
    "HomogMapQ",
    "PushforwardCheck",
    "proj_height",
    "weil_height",
    "monomial_map",
    "A_weil_height",
    "Q_height",
    "torsion_image_height",
    "torsion_translate_q_height",
    "poly_height",
    "weyl_norm_sq",
    "map_weyl_height",
    "pushforward_height_check",
]


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise DomainError(f"expected a rational value, got {type(x).__name__}")


@dataclass(frozen=True)
class ProjPointQ:
    """A rational projective point, stored as coprime integers with canonical sign."""

    coords: tuple[int, ...]

    def __post_init__(self):
        coords = tuple(int(c) for c in self.coords)
        if not any(coords):
            raise DomainError("projective point: coordinates must not all vanish")
        g = math.gcd(*coords)
        coords = tuple(c // g for c in coords)
        first = next(c for c in coords if c)
        if first < 0:
            coords = tuple(-c for c in coords)
        object.__setattr__(self, "coords", coords)

    @classmethod
    def from_rationals(cls, values: Sequence) -> "ProjPointQ":
        vals = [_to_fraction(v) for v in values]
        if not vals:
            raise DomainError("projective point: empty coordinate list")
        lcm = math.lcm(*(v.denominator for v in vals))
        return cls(tuple(int(v * lcm) for v in vals))

    def __len__(self) -> int:
        return len(self.coords)


@dataclass(frozen=True)
class AffinePointQ:
    """A point of the algebraic torus: nonzero rational coordinates."""

    coords: tuple[Fraction, ...]

    def __post_init__(self):
        coords = tuple(_to_fraction(c) for c in self.coords)
        if any(c == 0 for c in coords):
            raise DomainError("torus point: coordinates must be nonzero")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def of(cls, *values) -> "AffinePointQ":
        return cls(tuple(_to_fraction(v) for v in values))

    def __len__(self) -> int:
        return len(self.coords)

    def power(self, exponent: Sequence[int]) -> Fraction:
        """The monomial value prod coords[i]**exponent[i] (negative exponents fine)."""
        out = Fraction(1)
        for c, e in zip(self.coords, exponent):
            out *= c**e
        return out


@dataclass(frozen=True)
class TorsionPoint:
    """(zeta^k_1, ..., zeta^k_n) for zeta a primitive root of unity of the given order."""

    order: int
    exponents: tuple[int, ...]

    def __post_init__(self):
        if self.order < 1:
            raise DomainError("torsion point: order must be >= 1")
        object.__setattr__(self, "exponents", tuple(int(k) % self.order for k in self.exponents))

    def __len__(self) -> int:
        return len(self.exponents)

    def image_exponents(self, points: Sequence[Sequence[int]]) -> tuple[int, ...]:
        """Root-of-unity exponents of the monomial image coordinates, mod order."""
        return tuple(sum(k * a for k, a in zip(self.exponents, p)) % self.order for p in points)

    def is_identity(self) -> bool:
        return all(k == 0 for k in self.exponents)


@dataclass(frozen=True)
class LaurentPolyQ:
    """Laurent polynomial over Q: a finite map exponent vector -> nonzero coefficient."""

    n: int
    terms: tuple[tuple[tuple[int, ...], Fraction], ...]

    def __post_init__(self):
        canon = {}
        for exp, coeff in self.terms:
            exp = tuple(int(e) for e in exp)
            if len(exp) != self.n:
                raise DomainError(f"polynomial term has {len(exp)} exponents, expected {self.n}")
            coeff = _to_fraction(coeff)
            canon[exp] = canon.get(exp, Fraction(0)) + coeff
        object.__setattr__(
            self, "terms", tuple(sorted((e, c) for e, c in canon.items() if c != 0))
        )

    @classmethod
    def from_dict(cls, n: int, terms: Mapping[Sequence[int], object]) -> "LaurentPolyQ":
        return cls(n, tuple((tuple(e), _to_fraction(c)) for e, c in terms.items()))

    def as_dict(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> tuple[tuple[int, ...], ...]:
        return tuple(e for e, _ in self.terms)

    def evaluate(self, point: AffinePointQ) -> Fraction:
        if len(point) != self.n:
            raise DomainError("evaluate: dimension mismatch")
        return sum((c * point.power(e) for e, c in self.terms), Fraction(0))

    def multiply(self, other: "LaurentPolyQ") -> "LaurentPolyQ":
        if self.n != other.n:
            raise DomainError("multiply: dimension mismatch")
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return LaurentPolyQ.from_dict(self.n, out)

    def partial(self, j: int) -> "LaurentPolyQ":
        out: dict[tuple[int, ...], Fraction] = {}
        for e, c in self.terms:
            if e[j] != 0:
                new = list(e)
                new[j] -= 1
                key = tuple(new)
                out[key] = out.get(key, Fraction(0)) + c * e[j]
        return LaurentPolyQ.from_dict(self.n, out)

    def max_total_degree(self) -> int:
        return max(sum(e) for e, _ in self.terms)

    def primitive_integer_coefficients(self) -> tuple[int, ...]:
        """Coefficients after scaling to integers with gcd one (height-invariant)."""
        if self.is_zero():
            raise DomainError("zero polynomial has no height")
        coeffs = [c for _, c in self.terms]
        lcm = math.lcm(*(c.denominator for c in coeffs))
        ints = [int(c * lcm) for c in coeffs]
        g = math.gcd(*ints)
        return tuple(c // g for c in ints)

    def to_json(self) -> dict:
        return {
            "terms": [
                {"exp": list(e), "coeff": f"{c.numerator}/{c.denominator}"} for e, c in self.terms
            ]
        }


# ---------------------------------------------------------------------------
# point heights
# ---------------------------------------------------------------------------


def proj_height(point: ProjPointQ) -> ExactLog:
    """Projective height: (1/2) log of the sum of squared coprime coordinates."""
    return half_log(sum(c * c for c in point.coords))


def weil_height(point: ProjPointQ) -> ExactLog:
    """Weil height: log of the largest absolute coprime coordinate."""
    return exactlog_of_rational(max(abs(c) for c in point.coords))


def monomial_map(exponents: ExponentSet, point: AffinePointQ) -> ProjPointQ:
    """Evaluate the monomial map t -> (t^a : a in A) and clear to coprime integers."""
    if len(point) != exponents.ambient_dim:
        raise DomainError("monomial_map: dimension mismatch")
    return ProjPointQ.from_rationals([point.power(a) for a in exponents.points])


def A_weil_height(exponents: ExponentSet, point: AffinePointQ) -> ExactLog:
    """Weil height of the monomial image of the point."""
    return weil_height(monomial_map(exponents, point))


def Q_height(poly: LatticePolytope, point: AffinePointQ) -> ExactLog:
    """Weil height of the monomial image under all lattice points of the polytope.

    Always nonnegative: 1 is among the candidate monomial values at each place
    after normalization (product formula).
    """
    if poly.ambient_dim != len(point):
        raise DomainError("Q_height: dimension mismatch")
    return A_weil_height(lattice_points(poly), point)


def torsion_image_height(
    exponents: ExponentSet,
    zeta: TorsionPoint,
    rational_part: AffinePointQ | None = None,
) -> ExactLog:
    """Projective height of the monomial image of a torsion point zeta, or of a
    torsion translate zeta * xi when a rational part is given.

    Root-of-unity coordinate factors have absolute value one at every place, so
    they never affect a height: the image of a pure torsion point has height
    exactly (1/2) log Card(A), and a translate inherits the height of its
    rational part's image.
    """
    if len(zeta) != exponents.ambient_dim:
        raise DomainError("torsion_image_height: dimension mismatch")
    zeta.image_exponents(exponents.points)  # validates the symbolic image
    if rational_part is None:
        return half_log(len(exponents))
    if len(rational_part) != exponents.ambient_dim:
        raise DomainError("torsion_image_height: dimension mismatch")
    return proj_height(monomial_map(exponents, rational_part))


def torsion_translate_q_height(
    poly: LatticePolytope, zeta: TorsionPoint, rational_part: AffinePointQ
) -> ExactLog:
    """Q-height of the torsion translate zeta * xi; unit-modulus factors drop out."""
    if len(zeta) != poly.ambient_dim or len(rational_part) != poly.ambient_dim:
        raise DomainError("torsion_translate_q_height: dimension mismatch")
    return Q_height(poly, rational_part)


# ---------------------------------------------------------------------------
# polynomial heights and norms
# ---------------------------------------------------------------------------

_NORMS = ("sup", "l1", "l2")


def poly_height(f: LaurentPolyQ, norm: str) -> ExactLog:
    """Height of a nonzero Laurent polynomial for the sup, l1 or l2 coefficient norm.

    After scaling to coprime integer coefficients all finite places contribute
    zero, leaving the log of the archimedean coefficient norm.
    """
    if norm not in _NORMS:
        raise DomainError(f"norm must be one of {_NORMS}, got {norm!r}")
    if f.is_zero():
        raise DomainError("zero polynomial has no height")
    coeffs = f.primitive_integer_coefficients()
    if norm == "sup":
        return exactlog_of_rational(max(abs(c) for c in coeffs))
    if norm == "l1":
        return exactlog_of_rational(sum(abs(c) for c in coeffs))
    return half_log(sum(c * c for c in coeffs))


def _multinomial(exponent: Sequence[int]) -> int:
    out = math.factorial(sum(exponent))
    for e in exponent:
        out //= math.factorial(e)
    return out


def weyl_norm_sq(f: LaurentPolyQ) -> Fraction:
    """Squared Weyl norm: sum over terms of coeff^2 over the multinomial coefficient."""
    if f.is_zero():
        raise DomainError("zero polynomial has no Weyl norm")
    degrees = {sum(e) for e, _ in f.terms}
    if len(degrees) != 1 or any(x < 0 for e, _ in f.terms for x in e):
        raise DomainError("weyl_norm_sq: input must be homogeneous with nonnegative exponents")
    return sum(
        (c * c / _multinomial(e) for e, c in f.terms),
        Fraction(0),
    )


@dataclass(frozen=True)
class HomogMapQ:
    """A rational map between projective spaces given by jointly primitive integer forms."""

    source_dim: int
    target_dim: int
    degree: int
    forms: tuple[LaurentPolyQ, ...]

    def __post_init__(self):
        if len(self.forms) != self.target_dim + 1:
            raise DomainError("HomogMapQ: need target_dim + 1 forms")
        all_coeffs: list[int] = []
        for f in self.forms:
            if f.n != self.source_dim + 1:
                raise DomainError("HomogMapQ: forms must have source_dim + 1 variables")
            if f.is_zero():
                continue
            degrees = {sum(e) for e, _ in f.terms}
            if degrees != {self.degree} or any(x < 0 for e, _ in f.terms for x in e):
                raise DomainError(f"HomogMapQ: forms must be homogeneous of degree {self.degree}")
            for _, c in f.terms:
                if c.denominator != 1:
                    raise DomainError("HomogMapQ: coefficients must be integers")
                all_coeffs.append(c.numerator)
        if not all_coeffs:
            raise DomainError("HomogMapQ: all forms vanish")
        if math.gcd(*all_coeffs) != 1:
            raise DomainError("HomogMapQ: forms must be jointly primitive")

    def evaluate(self, point: ProjPointQ) -> ProjPointQ:
        if len(point) != self.source_dim + 1:
            raise DomainError("HomogMapQ: dimension mismatch")
        values = []
        for f in self.forms:
            total = Fraction(0)
            for e, c in f.terms:
                term = c
                for x, k in zip(point.coords, e):
                    term *= Fraction(x) ** k
                total += term
            values.append(total)
        if not any(values):
            raise DomainError("map undefined: all forms vanish at the point")
        return ProjPointQ.from_rationals(values)


def map_weyl_height(phi: HomogMapQ) -> ExactLog:
    """(1/2) log of the summed squared Weyl norms of the defining forms."""
    total = sum((weyl_norm_sq(f) for f in phi.forms if not f.is_zero()), Fraction(0))
    return exactlog_of_rational(total).scaled(Fraction(1, 2))


@dataclass(frozen=True)
class PushforwardCheck:
    lhs: ExactLog
    rhs: ExactLog
    ok: bool


def pushforward_height_check(phi: HomogMapQ, point: ProjPointQ) -> PushforwardCheck:
    """Verify h(phi(xi)) <= h_W(phi) + deg(phi) * h(xi) at a concrete point."""
    lhs = proj_height(phi.evaluate(point))
    rhs = map_weyl_height(phi) + proj_height(point).scaled(phi.degree)
    return PushforwardCheck(lhs, rhs, lhs <= rhs)
