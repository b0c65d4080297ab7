"""Exact integer linear algebra: Hermite/Smith normal forms and difference lattices."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import DomainError, InternalError

__all__ = [
    "IntMatrix",
    "SmithDecomposition",
    "DifferenceLattice",
    "hermite_normal_form",
    "smith_normal_form",
    "difference_lattice",
    "lattice_coordinates",
    "lattice_index",
]


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DomainError(
                f"IntMatrix: {self.rows}x{self.cols} needs {self.rows * self.cols} entries, got {len(self.entries)}"
            )
        object.__setattr__(self, "entries", tuple(int(e) for e in self.entries))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DomainError("IntMatrix.from_rows: ragged rows")
        return cls(len(rows), ncols, tuple(x for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def matmul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DomainError("matmul: dimension mismatch")
        rows = []
        bt = list(zip(*other.to_rows())) if other.rows else []
        for i in range(self.rows):
            r = self.row(i)
            rows.append([sum(a * b for a, b in zip(r, col)) for col in bt] if bt else [0] * other.cols)
        return IntMatrix.from_rows(rows) if rows else IntMatrix(0, other.cols, ())

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows(list(zip(*self.to_rows()))) if self.rows and self.cols else IntMatrix(self.cols, self.rows, ())


def det(m: IntMatrix) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    if m.rows != m.cols:
        raise DomainError("det: matrix is not square")
    n = m.rows
    if n == 0:
        return 1
    a = [list(m.row(i)) for i in range(n)]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _row_reduce(work: list[list[int]], trans: list[list[int]]) -> None:
    """In-place integer row echelon with unimodular row ops recorded in trans."""
    rows = len(work)
    cols = len(work[0]) if rows else 0
    pivot_row = 0
    for col in range(cols):
        if pivot_row >= rows:
            break
        # gcd-cascade all entries of this column into the pivot row
        for i in range(pivot_row + 1, rows):
            while work[i][col] != 0:
                if work[pivot_row][col] == 0:
                    work[pivot_row], work[i] = work[i], work[pivot_row]
                    trans[pivot_row], trans[i] = trans[i], trans[pivot_row]
                    continue
                q = work[i][col] // work[pivot_row][col]
                if q:
                    work[i] = [a - q * b for a, b in zip(work[i], work[pivot_row])]
                    trans[i] = [a - q * b for a, b in zip(trans[i], trans[pivot_row])]
                if work[i][col] != 0:
                    work[pivot_row], work[i] = work[i], work[pivot_row]
                    trans[pivot_row], trans[i] = trans[i], trans[pivot_row]
        if work[pivot_row][col] == 0:
            continue
        if work[pivot_row][col] < 0:
            work[pivot_row] = [-a for a in work[pivot_row]]
            trans[pivot_row] = [-a for a in trans[pivot_row]]
        p = work[pivot_row][col]
        for i in range(pivot_row):
            q = work[i][col] // p  # floor division puts the entry in [0, p)
            if q:
                work[i] = [a - q * b for a, b in zip(work[i], work[pivot_row])]
                trans[i] = [a - q * b for a, b in zip(trans[i], trans[pivot_row])]
        pivot_row += 1


def hermite_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form (H, U) with U*m = H and U unimodular.

    H is in row echelon form with positive pivots; entries above each pivot
    are reduced into [0, pivot).  Nonzero rows of H are the canonical basis
    of the row lattice of m.
    """
    work = m.to_rows()
    trans = IntMatrix.identity(m.rows).to_rows()
    if m.rows:
        _row_reduce(work, trans)
    return IntMatrix.from_rows(work) if m.rows else m, IntMatrix.from_rows(trans) if m.rows else IntMatrix(0, 0, ())


@dataclass(frozen=True)
class SmithDecomposition:
    left: IntMatrix
    diag: tuple[int, ...]
    right: IntMatrix

    def diagonal_matrix(self, rows: int, cols: int) -> IntMatrix:
        out = [[0] * cols for _ in range(rows)]
        for i, d in enumerate(self.diag):
            out[i][i] = d
        return IntMatrix.from_rows(out) if rows else IntMatrix(0, cols, ())


def smith_normal_form(m: IntMatrix) -> SmithDecomposition:
    """Smith normal form U*m*V = diag(d_1..d_k) with d_1 | d_2 | ... and U, V unimodular."""
    a = m.to_rows()
    rows, cols = m.rows, m.cols
    u = IntMatrix.identity(rows).to_rows()
    v = IntMatrix.identity(cols).to_rows()

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for r in a:
            r[dst] += q * r[src]
        for r in v:
            r[dst] += q * r[src]

    def diagonalize_from(start: int) -> None:
        limit = min(rows, cols)
        for k in range(start, limit):
            best = None
            for i in range(k, rows):
                for j in range(k, cols):
                    if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return
            swap_rows(k, best[0])
            swap_cols(k, best[1])
            dirty = True
            while dirty:
                dirty = False
                for i in range(k + 1, rows):
                    if a[i][k]:
                        add_row(i, k, -(a[i][k] // a[k][k]))
                        if a[i][k]:
                            swap_rows(k, i)
                            dirty = True
                for j in range(k + 1, cols):
                    if a[k][j]:
                        add_col(j, k, -(a[k][j] // a[k][k]))
                        if a[k][j]:
                            swap_cols(k, j)
                            dirty = True
            if a[k][k] < 0:
                a[k] = [-x for x in a[k]]
                u[k] = [-x for x in u[k]]

    diagonalize_from(0)
    # Enforce the divisibility chain: folding column i+1 into column i puts
    # gcd(d_i, d_{i+1}) at position i after re-diagonalizing, so each fix
    # strictly decreases d_i and the loop terminates.
    while True:
        bad = None
        for i in range(min(rows, cols) - 1):
            d1, d2 = a[i][i], a[i + 1][i + 1]
            if (d1 == 0 and d2 != 0) or (d1 != 0 and d2 % d1 != 0):
                bad = i
                break
        if bad is None:
            break
        add_col(bad, bad + 1, 1)
        diagonalize_from(bad)
    diag = tuple(a[i][i] for i in range(min(rows, cols)))
    left = IntMatrix.from_rows(u) if rows else IntMatrix(0, 0, ())
    right = IntMatrix.from_rows(v) if cols else IntMatrix(0, 0, ())
    dec = SmithDecomposition(left, diag, right)
    _check_smith(m, dec)
    return dec


def _check_smith(m: IntMatrix, dec: SmithDecomposition) -> None:
    prod = dec.left.matmul(m).matmul(dec.right) if m.rows and m.cols else None
    if prod is not None and prod != dec.diagonal_matrix(m.rows, m.cols):
        raise InternalError("smith_normal_form: U*M*V is not the claimed diagonal")
    for d1, d2 in zip(dec.diag, dec.diag[1:]):
        if d1 == 0 and d2 != 0:
            raise InternalError("smith_normal_form: divisibility chain broken")
        if d1 != 0 and d2 % d1 != 0:
            raise InternalError("smith_normal_form: divisibility chain broken")
    if m.rows and abs(det(dec.left)) != 1:
        raise InternalError("smith_normal_form: left transform not unimodular")
    if m.cols and abs(det(dec.right)) != 1:
        raise InternalError("smith_normal_form: right transform not unimodular")


@dataclass(frozen=True)
class DifferenceLattice:
    """The lattice generated by the differences a - a_0 of a point configuration."""

    ambient_dim: int
    rank: int
    basis: tuple[tuple[int, ...], ...]
    elementary_divisors: tuple[int, ...]
    base_point: tuple[int, ...]


def difference_lattice(points: Sequence[Sequence[int]]) -> DifferenceLattice:
    """Canonical basis (HNF rows) and elementary divisors of the difference lattice."""
    pts = [tuple(int(x) for x in p) for p in points]
    if not pts:
        raise DomainError("points: must be nonempty")
    n = len(pts[0])
    base = pts[0]
    diffs = [[a - b for a, b in zip(p, base)] for p in pts[1:]]
    if not diffs:
        return DifferenceLattice(n, 0, (), (), base)
    h, _ = hermite_normal_form(IntMatrix.from_rows(diffs))
    basis_rows = [tuple(r) for r in h.to_rows() if any(r)]
    rank = len(basis_rows)
    if rank == 0:
        return DifferenceLattice(n, 0, (), (), base)
    snf = smith_normal_form(IntMatrix.from_rows(basis_rows))
    divisors = tuple(d for d in snf.diag if d != 0)
    if len(divisors) != rank:
        raise InternalError("difference_lattice: rank/divisor mismatch")
    return DifferenceLattice(n, rank, tuple(basis_rows), divisors, base)


def _solve_integer_coords(basis: Sequence[Sequence[int]], vector: Sequence[int]) -> tuple[int, ...]:
    """Coordinates of ``vector`` in the given independent integer basis.

    Solves the (possibly overdetermined) rational system exactly; non-integral
    or inconsistent results are impossible for lattice members by construction.
    """
    r = len(basis)
    n = len(vector)
    aug = [[Fraction(basis[j][i]) for j in range(r)] + [Fraction(vector[i])] for i in range(n)]
    col = 0
    pivots = []
    for j in range(r):
        piv = next((i for i in range(col, n) if aug[i][j] != 0), None)
        if piv is None:
            raise InternalError("lattice basis is not independent")
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][j]
        aug[col] = [x / pv for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][j] != 0:
                f = aug[i][j]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
        pivots.append(j)
        col += 1
    for i in range(col, n):
        if aug[i][r] != 0:
            raise InternalError("vector is outside the span of the lattice basis")
    coords = []
    for i in range(r):
        c = aug[i][r]
        if c.denominator != 1:
            raise InternalError("vector has non-integral lattice coordinates")
        coords.append(int(c))
    return tuple(coords)


def lattice_coordinates(points: Sequence[Sequence[int]]) -> tuple[tuple[tuple[int, ...], ...], DifferenceLattice]:
    """Rewrite points as integer coordinates in the basis of their difference lattice.

    Returns (B, lattice) where B is order-preserving and bijective with the
    input, lives in Z^rank, and has difference lattice equal to all of Z^rank.
    """
    lat = difference_lattice(points)
    base = lat.base_point
    if lat.rank == 0:
        return tuple(() for _ in points), lat
    coords = tuple(
        _solve_integer_coords(lat.basis, [a - b for a, b in zip(p, base)]) for p in points
    )
    return coords, lat


def lattice_index(points: Sequence[Sequence[int]]) -> int | None:
    """Index of the difference lattice in Z^n; None means infinite (rank < n)."""
    lat = difference_lattice(points)
    if lat.rank < lat.ambient_dim:
        return None
    return math.prod(lat.elementary_divisors)
