"""Arithmetic Bezout-Koushnirenko verification on exactly solvable systems.

For a system of Laurent polynomials with Newton polytope Q, the multiplicity
weighted sum of Q-heights over isolated torus zeros is bounded by
n! Vol_n(Q) times the sum of the l1-heights of the equations.  This module
checks that inequality on systems whose rational zeros can be enumerated
exactly (univariate, triangular, binomial-power, or user-declared), computes
the companion dense and simplex-shift variants, evaluates the general
set-theoretic bound values, and expands small symbolic Sylvester resultants
as an oracle for the resultant height bound.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .errors import DomainError, InternalError, PreconditionError
from .heights import (
    AffinePointQ,
    LaurentPolyQ,
    Q_height,
    TorsionPoint,
    A_weil_height,
    poly_height,
)
from .lattice import IntMatrix, det, difference_lattice, lattice_index, smith_normal_form
from .numkernel import ExactLog, exactlog_of_rational, factorize, log_int
from .polytope import (
    ExponentSet,
    LatticePolytope,
    euclidean_volume,
    lattice_points,
    newton_polytope,
    normalized_volume,
)

__all__ = [
    "DeclaredSolution",
    "LaurentSystem",
    "ZeroPoint",
    "SolvedZero",
    "KoushReport",
    "BkgralBounds",
    "SylvesterReport",
    "ReducedSystem",
    "solve_univariate",
    "solve_triangular",
    "jacobian_nonsingular",
    "koushnirenko_check",
    "denso_check",
    "simplex_shift_check",
    "bkgral_bounds",
    "sylvester_resultant_check",
    "support_lattice_reduction",
    "binomial_power_zeros",
    "power_tower_system",
]


@dataclass(frozen=True)
class DeclaredSolution:
    point: AffinePointQ
    multiplicity: int

    def __post_init__(self):
        if self.multiplicity < 1:
            raise DomainError("declared multiplicity must be a positive integer")


@dataclass(frozen=True)
class LaurentSystem:
    n: int
    polys: tuple[LaurentPolyQ, ...]
    declared_solutions: tuple[DeclaredSolution, ...] | None = None

    def __post_init__(self):
        if not self.polys:
            raise DomainError("system: needs at least one polynomial")
        for i, f in enumerate(self.polys):
            if f.n != self.n:
                raise DomainError(f"polys[{i}]: has {f.n} variables, expected {self.n}")
            if f.is_zero():
                raise DomainError(f"polys[{i}]: must be nonzero")
        if self.declared_solutions is not None:
            for k, sol in enumerate(self.declared_solutions):
                if len(sol.point) != self.n:
                    raise DomainError(f"solutions[{k}]: point has wrong dimension")
                for i, f in enumerate(self.polys):
                    if f.evaluate(sol.point) != 0:
                        raise DomainError(
                            f"solutions[{k}]: does not satisfy polys[{i}] exactly"
                        )


@dataclass(frozen=True)
class ZeroPoint:
    """A torus zero: a rational point, optionally twisted by a torsion cofactor.

    Root-of-unity cofactors never change a height, so all height bookkeeping
    uses the rational part; the torsion part records which zero this is.
    """

    rational: AffinePointQ
    torsion: TorsionPoint | None = None

    def describe(self) -> str:
        base = "(" + ", ".join(str(c) for c in self.rational.coords) + ")"
        if self.torsion is None or self.torsion.is_identity():
            return base
        return f"zeta_{self.torsion.order}^{list(self.torsion.exponents)} * {base}"


@dataclass(frozen=True)
class SolvedZero:
    point: ZeroPoint
    multiplicity: int
    certified: bool
    note: str = ""


@dataclass(frozen=True)
class KoushReport:
    lhs: ExactLog
    rhs: ExactLog
    vol_term: int
    contributions: tuple[tuple[str, int, ExactLog], ...]
    ok: bool
    lhs_complete: bool
    flags: tuple[str, ...]


# ---------------------------------------------------------------------------
# exact solvers
# ---------------------------------------------------------------------------


def _divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def _deflate(coeffs: list[Fraction], root: Fraction) -> list[Fraction] | None:
    """Divide by (x - root) via synthetic division; None if the remainder is nonzero."""
    out: list[Fraction] = []
    carry = Fraction(0)
    for c in reversed(coeffs):
        carry = c + carry * root
        out.append(carry)
    remainder = out.pop()
    if remainder != 0:
        return None
    return list(reversed(out))


def solve_univariate(f: LaurentPolyQ) -> tuple[tuple[Fraction, int], ...]:
    """All nonzero rational roots of a univariate Laurent polynomial, with
    exact multiplicities found by rational-root candidates and repeated deflation."""
    if f.n != 1:
        raise DomainError("solve_univariate: polynomial must be univariate")
    if f.is_zero():
        raise DomainError("solve_univariate: zero polynomial")
    exps = [e[0] for e, _ in f.terms]
    shift = min(exps)
    degree = max(exps) - shift
    coeffs = [Fraction(0)] * (degree + 1)
    for (e,), c in f.terms:
        coeffs[e - shift] = c
    if degree == 0:
        return ()
    lcm = math.lcm(*(c.denominator for c in coeffs))
    ints = [int(c * lcm) for c in coeffs]
    trailing = next(c for c in ints if c)
    leading = next(c for c in reversed(ints) if c)
    candidates = {
        sign * Fraction(p, q)
        for p in _divisors(abs(trailing))
        for q in _divisors(abs(leading))
        for sign in (1, -1)
    }
    roots = []
    for cand in sorted(candidates):
        mult = 0
        current = coeffs
        while True:
            if sum(c * cand**k for k, c in enumerate(current)) != 0:
                break
            nxt = _deflate(current, cand)
            if nxt is None:
                raise InternalError("deflation failed at an exact root")
            current = nxt
            mult += 1
        if mult:
            coeffs = current
            roots.append((cand, mult))
    return tuple(roots)


def _triangular_shape(system: LaurentSystem) -> list[tuple[tuple[int, ...], Fraction, Fraction]]:
    """For each equation i of a binomial triangular system, return
    (monomial exponent w, monomial coefficient k, constant c) with f_i = k x^w - c,
    where w has positive i-th entry and no later entries."""
    shape = []
    for i, f in enumerate(system.polys):
        terms = f.as_dict()
        if len(terms) != 2 or tuple(0 for _ in range(system.n)) not in terms:
            raise DomainError(f"polys[{i}]: not of the form (monomial in x_1..x_{i + 1}) - constant")
        const = terms.pop(tuple(0 for _ in range(system.n)))
        (w, k), = terms.items()
        if w[i] < 1 or any(w[j] != 0 for j in range(i + 1, system.n)):
            raise DomainError(
                f"polys[{i}]: monomial must involve x_{i + 1} positively and no later variable"
            )
        shape.append((w, k, -const))
    return shape


def solve_triangular(system: LaurentSystem) -> AffinePointQ:
    """Unique torus zero of a system f_i = m_i(x_1..x_{i-1}) x_i - c_i, by
    back-substitution; the triangular Jacobian certifies multiplicity one."""
    if len(system.polys) != system.n:
        raise DomainError("solve_triangular: need exactly n equations in n variables")
    shape = _triangular_shape(system)
    for i, (w, _, _) in enumerate(shape):
        if w[i] != 1:
            raise DomainError(f"polys[{i}]: variable x_{i + 1} must appear to the first power")
    coords: list[Fraction] = []
    for i, (w, k, c) in enumerate(shape):
        value = c / k
        for j in range(i):
            value *= coords[j] ** (-w[j])
        if value == 0:
            raise DomainError(f"polys[{i}]: solution leaves the torus")
        coords.append(value)
    return AffinePointQ(tuple(coords))


def jacobian_nonsingular(system: LaurentSystem, point: AffinePointQ) -> bool:
    """Exact nonvanishing test for the Jacobian determinant at a torus zero."""
    if len(system.polys) != system.n:
        raise DomainError("jacobian_nonsingular: need exactly n equations in n variables")
    if len(point) != system.n:
        raise DomainError("jacobian_nonsingular: dimension mismatch")
    for i, f in enumerate(system.polys):
        if f.evaluate(point) != 0:
            raise DomainError(f"jacobian_nonsingular: point is not a zero of polys[{i}]")
    rows = [[f.partial(j).evaluate(point) for j in range(system.n)] for f in system.polys]
    return _fraction_det(rows) != 0


def _fraction_det(rows: list[list[Fraction]]) -> Fraction:
    n = len(rows)
    a = [list(map(Fraction, r)) for r in rows]
    sign = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    out = Fraction(sign)
    for k in range(n):
        out *= a[k][k]
    return out


# ---------------------------------------------------------------------------
# binomial power systems: all torus zeros as torsion translates
# ---------------------------------------------------------------------------


def _integer_nth_root(m: int, n: int) -> int:
    """floor(m ** (1/n)) for m >= 0, by Newton iteration on integers."""
    if m < 2:
        return m
    x = 1 << ((m.bit_length() + n - 1) // n)
    while True:
        y = ((n - 1) * x + m // x ** (n - 1)) // n
        if y >= x:
            return x
        x = y


def _rational_nth_root(value: Fraction, n: int) -> Fraction | None:
    """Exact rational n-th root if it exists (for even n, the positive one)."""
    if n == 1:
        return value
    if value < 0 and n % 2 == 0:
        return None
    sign = -1 if value < 0 else 1
    num = abs(value.numerator)
    den = value.denominator
    rnum = _integer_nth_root(num, n)
    rden = _integer_nth_root(den, n)
    if rnum**n == num and rden**n == den:
        return Fraction(sign * rnum, rden)
    return None


def binomial_power_zeros(system: LaurentSystem) -> tuple[ZeroPoint, ...] | None:
    """Complete torus zero set of a nonsingular binomial system.

    Each two-term equation reads x^{w_i} = rho_i.  Through the Smith
    decomposition U W V = D the substitution x = z^V turns the system into
    z_i^{d_i} = prod_j rho_j^{U_ij}; when every right side has an exact
    rational d_i-th root, the zeros are exactly the principal rational point
    twisted by the |det W| characters in the kernel of t -> t^W, all simple
    (the Jacobian determinant is a unit times det W on the torus).  Returns
    None when the system is not binomial, det W = 0, or no rational zero exists.
    """
    if len(system.polys) != system.n:
        return None
    w_rows: list[list[int]] = []
    rhos: list[Fraction] = []
    for f in system.polys:
        if len(f.terms) != 2:
            return None
        (e1, c1), (e2, c2) = f.terms
        w_rows.append([a - b for a, b in zip(e1, e2)])
        rhos.append(-c2 / c1)
    w_matrix = IntMatrix.from_rows(w_rows)
    gamma = abs(det(w_matrix))
    if gamma == 0:
        return None
    snf = smith_normal_form(w_matrix)
    diag = snf.diag
    if math.prod(diag) != gamma:
        raise InternalError("binomial system: Smith diagonal does not match the determinant")
    u_rows = snf.left.to_rows()
    v_rows = snf.right.to_rows()
    z: list[Fraction] = []
    for i in range(system.n):
        sigma = Fraction(1)
        for j in range(system.n):
            sigma *= rhos[j] ** u_rows[i][j]
        root = _rational_nth_root(sigma, diag[i])
        if root is None or root == 0:
            return None
        z.append(root)
    coords = []
    for j in range(system.n):
        value = Fraction(1)
        for i in range(system.n):
            value *= z[i] ** v_rows[j][i]
        coords.append(value)
    principal = AffinePointQ(tuple(coords))
    for f in system.polys:
        if f.evaluate(principal) != 0:
            raise InternalError("binomial principal solution check failed")
    order = math.lcm(*diag)
    zeros: list[ZeroPoint] = []
    for residues in itertools.product(*(range(d) for d in diag)):
        exps = tuple(
            sum(v_rows[j][i] * residues[i] * (order // diag[i]) for i in range(system.n)) % order
            for j in range(system.n)
        )
        omega = TorsionPoint(order, exps)
        for w in w_rows:
            if sum(a * b for a, b in zip(w, omega.exponents)) % order != 0:
                raise InternalError("enumerated character is not in the kernel")
        zeros.append(ZeroPoint(principal, omega))
    if len(zeros) != gamma:
        raise InternalError("binomial system: wrong kernel size")
    return tuple(zeros)


# ---------------------------------------------------------------------------
# the checkers
# ---------------------------------------------------------------------------


def _resolve_zeros(system: LaurentSystem) -> tuple[tuple[SolvedZero, ...], bool, tuple[str, ...]]:
    """Rational (or torsion-translated rational) zeros with multiplicities.

    The boolean reports whether the list provably exhausts all torus zeros.
    """
    flags: list[str] = []
    if system.declared_solutions is not None:
        solved = []
        for sol in system.declared_solutions:
            certified = False
            note = ""
            if len(system.polys) == system.n:
                nonsingular = jacobian_nonsingular(system, sol.point)
                if nonsingular and sol.multiplicity == 1:
                    certified = True
                elif nonsingular:
                    note = "declared multiplicity contradicts a nonsingular Jacobian"
                    flags.append(note)
                else:
                    note = "multiplicity unverified (singular Jacobian)"
                    flags.append(note)
            else:
                note = "multiplicity unverified (non-square system)"
                flags.append(note)
            solved.append(SolvedZero(ZeroPoint(sol.point), sol.multiplicity, certified, note))
        return tuple(solved), False, tuple(flags)
    zeros = binomial_power_zeros(system)
    if zeros is not None:
        solved = tuple(
            SolvedZero(z, 1, True, "binomial kernel enumeration") for z in zeros
        )
        return solved, True, tuple(flags)
    if system.n == 1:
        if len(system.polys) != 1:
            raise DomainError("univariate systems must consist of a single polynomial")
        f = system.polys[0]
        roots = solve_univariate(f)
        exps = [e[0] for e, _ in f.terms]
        span = max(exps) - min(exps)
        complete = sum(m for _, m in roots) == span
        solved = tuple(
            SolvedZero(ZeroPoint(AffinePointQ((r,))), m, True, "deflation-exact multiplicity")
            for r, m in roots
        )
        return solved, complete, tuple(flags)
    try:
        point = solve_triangular(system)
    except DomainError:
        point = None
    if point is not None:
        if not jacobian_nonsingular(system, point):
            raise InternalError("triangular system produced a singular zero")
        return (
            (SolvedZero(ZeroPoint(point), 1, True, "triangular back-substitution"),),
            True,
            tuple(flags),
        )
    raise DomainError(
        "cannot enumerate zeros: system is not univariate, triangular or binomial, "
        "and no solutions were declared"
    )


def _volume_term(system: LaurentSystem, q_poly: LatticePolytope) -> int:
    vol = euclidean_volume(q_poly) * math.factorial(system.n)
    if vol.denominator != 1:
        raise InternalError("n! Vol_n(Q) must be an integer for integral polytopes")
    return int(vol)


def _check_with_height(
    system: LaurentSystem,
    height_of: Callable[[ZeroPoint], ExactLog],
    rhs: ExactLog,
    vol_term: int,
) -> KoushReport:
    solved, complete, flags = _resolve_zeros(system)
    lhs = ExactLog()
    contributions = []
    for z in solved:
        h = height_of(z.point)
        lhs = lhs + h.scaled(z.multiplicity)
        contributions.append((z.point.describe(), z.multiplicity, h))
    ok = lhs <= rhs
    return KoushReport(lhs, rhs, vol_term, tuple(contributions), ok, complete, flags)


def koushnirenko_check(system: LaurentSystem) -> KoushReport:
    """Check sum of l(xi) * hQ(xi) <= n! Vol_n(Q) * sum of h_1(f_i).

    The left side runs over the rational torus zeros that can be enumerated
    exactly (the report says whether that enumeration is complete); omitted
    algebraic zeros only ever increase the left side, so the check stays a
    valid necessary condition.
    """
    if len(system.polys) != system.n:
        raise DomainError("koushnirenko_check: need exactly n polynomials in n variables")
    q_poly = newton_polytope(system.polys)
    vol_term = _volume_term(system, q_poly)
    rhs = ExactLog()
    for f in system.polys:
        rhs = rhs + poly_height(f, "l1")
    rhs = rhs.scaled(vol_term)
    return _check_with_height(system, lambda z: Q_height(q_poly, z.rational), rhs, vol_term)


def _standard_simplex_set(n: int) -> ExponentSet:
    pts = [tuple(0 for _ in range(n))]
    pts += [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    return ExponentSet(n, tuple(pts))


def denso_check(system: LaurentSystem) -> KoushReport:
    """Dense variant: sum of l(xi) * weil(xi) <= d^(n-1) * sum of h_1(f_i)."""
    if len(system.polys) != system.n:
        raise DomainError("denso_check: need exactly n polynomials in n variables")
    for i, f in enumerate(system.polys):
        if any(e < 0 for exp, _ in f.terms for e in exp):
            raise DomainError(f"polys[{i}]: denso_check needs ordinary (nonnegative) exponents")
    d = max(f.max_total_degree() for f in system.polys)
    rhs = ExactLog()
    for f in system.polys:
        rhs = rhs + poly_height(f, "l1")
    rhs = rhs.scaled(d ** (system.n - 1))
    simplex = _standard_simplex_set(system.n)
    return _check_with_height(
        system, lambda z: A_weil_height(simplex, z.rational), rhs, d ** (system.n - 1)
    )


def simplex_shift_check(system: LaurentSystem) -> KoushReport:
    """Weil-height variant, valid once some translate b + simplex fits inside Q."""
    if len(system.polys) != system.n:
        raise DomainError("simplex_shift_check: need exactly n polynomials in n variables")
    q_poly = newton_polytope(system.polys)
    members = set(lattice_points(q_poly).points)
    unit = [tuple(1 if j == i else 0 for j in range(system.n)) for i in range(system.n)]
    shift = None
    for b in sorted(members):
        if all(tuple(x + e for x, e in zip(b, u)) in members for u in unit):
            shift = b
            break
    if shift is None:
        raise PreconditionError(
            "simplex_shift_check requires some b in Z^n with b + standard simplex "
            "inside the Newton polytope; none exists"
        )
    vol_term = _volume_term(system, q_poly)
    rhs = ExactLog()
    for f in system.polys:
        rhs = rhs + poly_height(f, "l1")
    rhs = rhs.scaled(vol_term)
    simplex = _standard_simplex_set(system.n)
    return _check_with_height(
        system, lambda z: A_weil_height(simplex, z.rational), rhs, vol_term
    )


@dataclass(frozen=True)
class BkgralBounds:
    deg_bound: int
    height_bound: ExactLog


def bkgral_bounds(exponents: ExponentSet, polys: Sequence[LaurentPolyQ]) -> BkgralBounds:
    """Set-theoretic degree and height bounds for intersections with supports in A."""
    index = lattice_index(exponents.points)
    if index != 1:
        raise PreconditionError(
            "bkgral_bounds requires L_A = Z^n (lattice index 1); "
            f"got index {'infinite' if index is None else index}"
        )
    a_set = set(exponents.points)
    for i, f in enumerate(polys):
        if not set(f.support()) <= a_set:
            raise PreconditionError(f"polys[{i}]: support is not contained in A")
    n = exponents.ambient_dim
    vol = normalized_volume(exponents)
    inner = exactlog_of_rational(len(exponents)).scaled(Fraction(n + 1, 2))
    for f in polys:
        inner = inner + poly_height(f, "l2")
    return BkgralBounds(vol, inner.scaled(vol))


# ---------------------------------------------------------------------------
# Sylvester resultant oracle (univariate sparse resultant at full support)
# ---------------------------------------------------------------------------


def _symbolic_det(matrix: list[list[int | None]], nvars: int) -> dict[tuple[int, ...], int]:
    """Determinant of a matrix whose entries are single variables (by index) or None.

    Laplace expansion down the rows, memoized on the remaining column set;
    monomials are exponent tuples over the nvars variables.
    """
    size = len(matrix)
    memo: dict[tuple[int, ...], dict[tuple[int, ...], int]] = {}

    def expand(row: int, cols: tuple[int, ...]) -> dict[tuple[int, ...], int]:
        if not cols:
            return {tuple(0 for _ in range(nvars)): 1}
        if cols in memo:
            return memo[cols]
        out: dict[tuple[int, ...], int] = {}
        for pos, col in enumerate(cols):
            var = matrix[row][col]
            if var is None:
                continue
            sign = -1 if pos % 2 else 1
            sub = expand(row + 1, cols[:pos] + cols[pos + 1 :])
            for mono, coeff in sub.items():
                bumped = list(mono)
                bumped[var] += 1
                key = tuple(bumped)
                out[key] = out.get(key, 0) + sign * coeff
        out = {m: c for m, c in out.items() if c}
        memo[cols] = out
        return out

    return expand(0, tuple(range(size)))


@dataclass(frozen=True)
class SylvesterReport:
    degree: int
    num_terms: int
    max_abs_coeff: int
    h_sup: ExactLog
    bound: ExactLog
    extreme_ok: bool
    ok: bool


def sylvester_resultant_check(d: int) -> SylvesterReport:
    """Expand the 2d x 2d Sylvester determinant of two generic degree-d
    polynomials and compare its sup-height against 3 d log(d+1).

    Also verifies the two extreme monomials a_0^d b_d^d and a_d^d b_0^d carry
    coefficient +-1.  Capped at d <= 4: the expansion grows combinatorially.
    """
    if d < 1:
        raise DomainError(f"degree must be >= 1, got {d}")
    if d > 4:
        raise DomainError("sylvester_resultant_check refuses d > 4 (combinatorial blowup)")
    nvars = 2 * (d + 1)  # a_0..a_d then b_0..b_d
    size = 2 * d
    matrix: list[list[int | None]] = [[None] * size for _ in range(size)]
    for i in range(d):
        for k in range(d + 1):
            matrix[i][i + k] = k  # a_k
    for i in range(d):
        for k in range(d + 1):
            matrix[d + i][i + k] = d + 1 + k  # b_k
    expansion = _symbolic_det(matrix, nvars)
    max_abs = max(abs(c) for c in expansion.values())
    h_sup = log_int(max_abs) if max_abs > 1 else ExactLog()
    bound = exactlog_of_rational(d + 1).scaled(3 * d)
    extreme_a = tuple((d if v == 0 else d if v == 2 * d + 1 else 0) for v in range(nvars))
    extreme_b = tuple((d if v == d else d if v == d + 1 else 0) for v in range(nvars))
    extreme_ok = abs(expansion.get(extreme_a, 0)) == 1 and abs(expansion.get(extreme_b, 0)) == 1
    return SylvesterReport(
        d, len(expansion), max_abs, h_sup, bound, extreme_ok, h_sup <= bound
    )


# ---------------------------------------------------------------------------
# support-lattice reduction (index bookkeeping)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ReducedSystem:
    system: LaurentSystem
    gamma: int
    basis: tuple[tuple[int, ...], ...]


def support_lattice_reduction(system: LaurentSystem) -> ReducedSystem:
    """Rewrite a system through a basis of the lattice generated by its supports.

    Each polynomial is first normalized by a monomial factor so its support
    contains the origin (this changes neither torus zeros nor any height in
    play).  The supports then generate a finite-index sublattice L of Z^n with
    index gamma; transporting exponents to L-coordinates yields a system with
    full support lattice Z^n whose check values are exactly 1/gamma times the
    originals, while zero fibers have size gamma.
    """
    if len(system.polys) != system.n:
        raise DomainError("support_lattice_reduction: need exactly n polynomials in n variables")
    normalized = []
    support_union: set[tuple[int, ...]] = {tuple(0 for _ in range(system.n))}
    for f in system.polys:
        anchor = min(f.support())
        shifted = {
            tuple(a - b for a, b in zip(e, anchor)): c for e, c in f.terms
        }
        g = LaurentPolyQ.from_dict(system.n, shifted)
        normalized.append(g)
        support_union.update(g.support())
    lat = difference_lattice(sorted(support_union))
    if lat.rank != system.n:
        raise PreconditionError(
            "support_lattice_reduction requires supports of full rank; "
            f"got rank {lat.rank} < {system.n}"
        )
    gamma = math.prod(lat.elementary_divisors)
    transported = []
    for g in normalized:
        new_terms = {}
        for e, c in g.terms:
            new_terms[_coords_in_basis(lat.basis, e)] = c
        transported.append(LaurentPolyQ.from_dict(system.n, new_terms))
    reduced = LaurentSystem(system.n, tuple(transported))
    return ReducedSystem(reduced, gamma, lat.basis)


def _coords_in_basis(basis: Sequence[Sequence[int]], vec: Sequence[int]) -> tuple[int, ...]:
    rows = [list(b) for b in basis]
    n = len(vec)
    aug = [[Fraction(rows[j][i]) for j in range(len(rows))] + [Fraction(vec[i])] for i in range(n)]
    row = 0
    for j in range(len(rows)):
        piv = next(i for i in range(row, n) if aug[i][j] != 0)
        aug[row], aug[piv] = aug[piv], aug[row]
        pv = aug[row][j]
        aug[row] = [x / pv for x in aug[row]]
        for i in range(n):
            if i != row and aug[i][j] != 0:
                f = aug[i][j]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[row])]
        row += 1
    for i in range(row, n):
        if aug[i][-1] != 0:
            raise InternalError("support vector lies outside its own lattice")
    coords = []
    for i in range(len(rows)):
        c = aug[i][-1]
        if c.denominator != 1:
            raise InternalError("support vector has non-integral lattice coordinates")
        coords.append(int(c))
    return tuple(coords)


def power_tower_system(n: int, d: int, base: int) -> LaurentSystem:
    """The family x_1 = H, x_i = H x_{i-1}^d: Newton polytope of normalized
    volume one, a single torus zero of large Weil height but Q-height log H."""
    if n < 1 or d < 1 or base < 1:
        raise DomainError("power_tower_system: n, d and the base must be >= 1")
    polys = []
    zero = tuple(0 for _ in range(n))
    for i in range(n):
        exp = [0] * n
        exp[i] = 1
        if i > 0:
            exp[i - 1] = -d
        polys.append(LaurentPolyQ.from_dict(n, {tuple(exp): 1, zero: -base}))
    return LaurentSystem(n, tuple(polys))
