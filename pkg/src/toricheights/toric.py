"""Successive minima, degree and height bounds of projective monomial varieties.

The variety attached to a configuration A in Z^n is the closure of the image
of the torus under t -> (t^a : a in A).  Its i-th successive minimum equals
half the log of the minimal number of configuration points on a face of
codimension i-1 of Conv(A); its degree is the normalized volume.  This module
computes those exact values, the resulting height brackets, the classical
families with their closed forms, and an empirical sampling verifier.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError, PreconditionError
from .heights import (
    AffinePointQ,
    ProjPointQ,
    TorsionPoint,
    monomial_map,
    proj_height,
    torsion_image_height,
)
from .lattice import lattice_index
from .numkernel import ExactLog, compare_exactlog_rational, exactlog_of_rational, half_log
from .polytope import ExponentSet, FaceCounts, face_counts, face_members, normalized_volume

__all__ = [
    "ToricReport",
    "MonomialVarietyData",
    "MonomialBounds",
    "ZhangBracket",
    "ClassicalExample",
    "SampleConfig",
    "SampleReport",
    "successive_minima",
    "toric_dim_deg",
    "height_bounds",
    "proj_space_height",
    "zhang_bracket_check",
    "resultant_height_bound",
    "monomial_bounds",
    "min_height_lower_check",
    "classical_example",
    "sample_verify_minima",
    "toric_report",
]


def successive_minima(exponents: ExponentSet) -> tuple[ExactLog, ...]:
    """The exact successive minima: (1/2) log N_A(r-i+1) for i = 1..r+1.

    The first entry is the essential minimum (1/2) log Card(A); the last is
    the absolute minimum 0.
    """
    counts = face_counts(exponents)
    r = len(counts.counts) - 1
    return tuple(half_log(counts[r - i + 1]) for i in range(1, r + 2))


def toric_dim_deg(exponents: ExponentSet) -> tuple[int, int]:
    """(dimension, degree) of the monomial variety: lattice rank and normalized volume."""
    counts = face_counts(exponents)
    return len(counts.counts) - 1, normalized_volume(exponents)


def height_bounds(exponents: ExponentSet) -> tuple[ExactLog, ExactLog]:
    """Exact lower and upper bounds bracketing the projective height of the variety."""
    counts = face_counts(exponents)
    r = len(counts.counts) - 1
    vol = normalized_volume(exponents)
    lower = ExactLog()
    for i in range(r + 1):
        lower = lower + exactlog_of_rational(counts[i])
    lower = lower.scaled(Fraction(vol, 2))
    upper = exactlog_of_rational(len(exponents)).scaled(Fraction(vol * (r + 1), 2))
    return lower, upper


def proj_space_height(n: int) -> Fraction:
    """Exact projective height of n-dimensional projective space: (n+1)/2 * sum_{j=2}^{n+1} 1/j."""
    if n < 1:
        raise DomainError(f"projective space dimension must be >= 1, got {n}")
    return Fraction(n + 1, 2) * sum(Fraction(1, j) for j in range(2, n + 2))


@dataclass(frozen=True)
class ZhangBracket:
    sum_minima: ExactLog
    h_value: Fraction
    top: ExactLog
    strict: bool


def zhang_bracket_check(n: int) -> ZhangBracket:
    """Check sum of minima < h(P^n) < (n+1) * essential minimum, all strict."""
    if n < 1:
        raise DomainError(f"projective space dimension must be >= 1, got {n}")
    sum_minima = half_log(math.factorial(n + 1))
    top = half_log(n + 1).scaled(n + 1)
    h = proj_space_height(n)
    strict = compare_exactlog_rational(sum_minima, h) < 0 and compare_exactlog_rational(top, h) > 0
    return ZhangBracket(sum_minima, h, top, strict)


def resultant_height_bound(exponents: ExponentSet) -> ExactLog:
    """Sup-height bound (3/2)(n+1) log(Card A) Vol(A) for the sparse resultant.

    Only valid when the differences of A generate all of Z^n; any other input
    is refused with the violated hypothesis named.
    """
    index = lattice_index(exponents.points)
    if index != 1:
        raise PreconditionError(
            "resultant_height_bound requires L_A = Z^n (lattice index 1); "
            f"got index {'infinite' if index is None else index}"
        )
    n = exponents.ambient_dim
    vol = normalized_volume(exponents)
    return exactlog_of_rational(len(exponents)).scaled(Fraction(3 * (n + 1) * vol, 2))


@dataclass(frozen=True)
class MonomialVarietyData:
    """A configuration with a vector of nonzero rational coordinate weights."""

    exponents: ExponentSet
    alpha: tuple[Fraction, ...]

    def __post_init__(self):
        alpha = tuple(Fraction(a) for a in self.alpha)
        if len(alpha) != len(self.exponents):
            raise DomainError("alpha must have one weight per configuration point")
        if any(a == 0 for a in alpha):
            raise DomainError("alpha weights must be nonzero")
        object.__setattr__(self, "alpha", alpha)


@dataclass(frozen=True)
class MonomialBounds:
    minima_upper: tuple[ExactLog, ...]
    height_upper: ExactLog


def monomial_bounds(data: MonomialVarietyData) -> MonomialBounds:
    """Upper bounds for the minima and height of a weighted monomial variety.

    minima_upper[i-1] is the smallest projective height of the weight vector
    restricted to a face of dimension r-i+1; height_upper is
    (r+1)/2 * h(alpha) * Vol(A).
    """
    members = face_members(data.exponents)
    r = max(f.dim for f in members)
    minima_upper = []
    for i in range(1, r + 2):
        target = r - i + 1
        best: ExactLog | None = None
        for f in members:
            if f.dim != target:
                continue
            restricted = proj_height(
                ProjPointQ.from_rationals([data.alpha[j] for j in f.point_indices])
            )
            if best is None or restricted < best:
                best = restricted
        if best is None:
            raise DomainError("face lattice is missing a dimension")
        minima_upper.append(best)
    vol = normalized_volume(data.exponents)
    h_alpha = proj_height(ProjPointQ.from_rationals(list(data.alpha)))
    height_upper = h_alpha.scaled(Fraction((r + 1) * vol, 2))
    return MonomialBounds(tuple(minima_upper), height_upper)


def min_height_lower_check(point: ProjPointQ) -> bool:
    """True iff h(xi) >= (1/2) log(N+1) for a point with no vanishing coordinate."""
    if any(c == 0 for c in point.coords):
        raise DomainError("min_height_lower_check: point must avoid the coordinate hyperplanes")
    return proj_height(point) >= half_log(len(point))


@dataclass(frozen=True)
class ClassicalExample:
    kind: str
    exponents: ExponentSet
    expected_minima: tuple[ExactLog, ...]


def classical_example(kind: str, n: int, d: int | None = None) -> ClassicalExample:
    """Projective space, Veronese or Segre configurations with closed-form minima."""
    if n < 1:
        raise DomainError(f"classical_example: n must be >= 1, got {n}")
    if kind == "projective":
        points = [tuple(0 for _ in range(n))]
        points += [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
        minima = tuple(half_log(n - i + 2) for i in range(1, n + 2))
    elif kind == "veronese":
        if d is None or d < 1:
            raise DomainError("classical_example: veronese needs a degree d >= 1")
        points = sorted(
            p for p in itertools.product(range(d + 1), repeat=n) if sum(p) <= d
        )
        minima = tuple(
            half_log(math.comb(d + n - i + 1, n - i + 1)) for i in range(1, n + 2)
        )
    elif kind == "segre":
        points = sorted(itertools.product((0, 1), repeat=n))
        minima = tuple(half_log(2).scaled(n - i + 1) for i in range(1, n + 2))
    else:
        raise DomainError(f"classical_example: unknown kind {kind!r}")
    return ClassicalExample(kind, ExponentSet(n, tuple(points)), minima)


# ---------------------------------------------------------------------------
# empirical sampling verifier
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SampleConfig:
    torsion_samples: int = 50
    rational_samples: int = 50
    max_order: int = 12
    coeff_bound: int = 9
    seed: int = 0
    face_samples: int = 2


@dataclass(frozen=True)
class SampleReport:
    expected: ExactLog
    torsion_all_equal: bool
    rational_min: ExactLog | None
    violations: tuple[str, ...]
    face_checks_ok: bool


def _random_torsion(rng: random.Random, n: int, max_order: int) -> TorsionPoint:
    m = rng.randint(1, max_order)
    return TorsionPoint(m, tuple(rng.randrange(m) for _ in range(n)))


def _random_rational(rng: random.Random, bound: int) -> Fraction:
    while True:
        num = rng.randint(1, bound)
        den = rng.randint(1, bound)
        q = Fraction(num, den) * rng.choice((1, -1))
        if abs(q) != 1:
            return q


def sample_verify_minima(exponents: ExponentSet, config: SampleConfig) -> SampleReport:
    """Seeded empirical check of the minimum-height facts behind the minima.

    Torsion images (and their torsion translates) must have height exactly
    (1/2) log Card(A); rational points with non-torsion image must be strictly
    higher; points supported on a face must respect the face-restricted count,
    with equality for torsion samples.
    """
    rng = random.Random(config.seed)
    n = exponents.ambient_dim
    expected = half_log(len(exponents))
    violations: list[str] = []

    torsion_all_equal = True
    for _ in range(config.torsion_samples):
        zeta = _random_torsion(rng, n, config.max_order)
        if zeta.order <= 2:
            # coordinates are rational (+-1): run the full rational height machine
            point = AffinePointQ(tuple(Fraction(1 if k == 0 else -1) for k in zeta.exponents))
            h = proj_height(monomial_map(exponents, point))
        else:
            h = torsion_image_height(exponents, zeta)
        if h != expected:
            torsion_all_equal = False
            violations.append(f"torsion sample of order {zeta.order}: height {h} != {expected}")

    rational_min: ExactLog | None = None
    produced = 0
    attempts = 0
    while produced < config.rational_samples and attempts < 50 * config.rational_samples:
        attempts += 1
        point = AffinePointQ(tuple(_random_rational(rng, config.coeff_bound) for _ in range(n)))
        image = monomial_map(exponents, point)
        if max(abs(c) for c in image.coords) == 1:
            continue  # image is torsion: the strict case does not apply
        produced += 1
        h = proj_height(image)
        if rational_min is None or h < rational_min:
            rational_min = h
        if not h > expected:
            violations.append(f"rational sample {point.coords}: height {h} not above {expected}")

    face_checks_ok = True
    for fm in face_members(exponents):
        card = len(fm.point_indices)
        floor = half_log(card)
        for _ in range(config.face_samples):
            zeta = _random_torsion(rng, n, 2)
            signs = tuple(Fraction(1 if k == 0 else -1) for k in zeta.exponents)
            xi = AffinePointQ(signs)
            coords = [
                xi.power(exponents.points[j]) if j in fm.point_indices else Fraction(0)
                for j in range(len(exponents))
            ]
            h = proj_height(ProjPointQ.from_rationals(coords))
            if h != floor:
                face_checks_ok = False
                violations.append(f"face torsion sample on a {fm.dim}-face: {h} != {floor}")
            point = AffinePointQ(tuple(_random_rational(rng, config.coeff_bound) for _ in range(n)))
            coords = [
                point.power(exponents.points[j]) if j in fm.point_indices else Fraction(0)
                for j in range(len(exponents))
            ]
            h = proj_height(ProjPointQ.from_rationals(coords))
            if h < floor:
                face_checks_ok = False
                violations.append(f"face rational sample on a {fm.dim}-face: {h} below {floor}")
    return SampleReport(expected, torsion_all_equal, rational_min, tuple(violations), face_checks_ok)


@dataclass(frozen=True)
class ToricReport:
    exponents: ExponentSet
    r: int
    degree: int
    counts: FaceCounts
    minima: tuple[ExactLog, ...]
    height_lower: ExactLog
    height_upper: ExactLog
    resultant_bound: ExactLog | None

    def __post_init__(self):
        mins = self.minima
        if mins[0] != half_log(len(self.exponents)) or not mins[-1].is_zero():
            raise DomainError("minima endpoints are inconsistent with the configuration")


def toric_report(exponents: ExponentSet) -> ToricReport:
    """Assemble dimension, degree, face counts, minima, and the height bracket."""
    counts = face_counts(exponents)
    r = len(counts.counts) - 1
    minima = successive_minima(exponents)
    lower, upper = height_bounds(exponents)
    bound = None
    if lattice_index(exponents.points) == 1:
        bound = resultant_height_bound(exponents)
    return ToricReport(exponents, r, normalized_volume(exponents), counts, minima, lower, upper, bound)
