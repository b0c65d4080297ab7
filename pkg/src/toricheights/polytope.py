"""Exact polyhedral combinatorics of integer point configurations.

Convex hulls, face lattices, face-restricted point counts, lattice points,
Minkowski sums and (normalized) volumes are all computed over exact rational
arithmetic: extreme points by exact phase-I simplex certificates, facets by
enumeration of affinely independent vertex subsets with supporting-hyperplane
tests, faces by closure of facet intersections.  Dimensions up to ~6 and a
few dozen vertices are the intended scale.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import DomainError, InternalError
from .lattice import (
    DifferenceLattice,
    IntMatrix,
    det,
    difference_lattice,
    hermite_normal_form,
    lattice_coordinates,
)

__all__ = [
    "ExponentSet",
    "LatticePolytope",
    "Face",
    "FaceLattice",
    "FaceCounts",
    "convex_hull",
    "face_lattice",
    "face_counts",
    "face_members",
    "FaceMembers",
    "lattice_points",
    "minkowski_sum",
    "euclidean_volume",
    "normalized_volume",
    "newton_polytope",
]


@dataclass(frozen=True)
class ExponentSet:
    """A finite ordered set of distinct integer vectors in Z^n."""

    ambient_dim: int
    points: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        pts = tuple(tuple(int(x) for x in p) for p in self.points)
        if not pts:
            raise DomainError("points: must be nonempty")
        if any(len(p) != self.ambient_dim for p in pts):
            raise DomainError(f"points: every vector must have length {self.ambient_dim}")
        if len(set(pts)) != len(pts):
            raise DomainError("points: must be pairwise distinct")
        object.__setattr__(self, "points", pts)

    @classmethod
    def of(cls, points: Sequence[Sequence[int]]) -> "ExponentSet":
        pts = [tuple(int(x) for x in p) for p in points]
        if not pts:
            raise DomainError("points: must be nonempty")
        return cls(len(pts[0]), tuple(pts))

    def __len__(self) -> int:
        return len(self.points)

    def to_json(self) -> dict:
        return {"ambient_dim": self.ambient_dim, "points": [list(p) for p in self.points]}


@dataclass(frozen=True)
class LatticePolytope:
    """Convex hull of integer points, stored by its extreme points only."""

    ambient_dim: int
    intrinsic_dim: int
    vertices: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Face:
    dim: int
    vertex_indices: tuple[int, ...]


@dataclass(frozen=True)
class FaceLattice:
    """All nonempty faces of a polytope, the polytope itself included."""

    faces: tuple[Face, ...]

    def of_dim(self, d: int) -> tuple[Face, ...]:
        return tuple(f for f in self.faces if f.dim == d)

    def f_vector(self) -> tuple[int, ...]:
        top = max(f.dim for f in self.faces)
        return tuple(len(self.of_dim(d)) for d in range(top + 1))


@dataclass(frozen=True)
class FaceCounts:
    """counts[i] = minimum number of configuration points on an i-dimensional face."""

    counts: tuple[int, ...]

    def __post_init__(self):
        c = self.counts
        if c[0] != 1:
            raise InternalError("face counts must start at 1")
        if any(c[i] > c[i + 1] for i in range(len(c) - 1)):
            raise InternalError("face counts must be nondecreasing")
        if any(c[i] < i + 1 for i in range(len(c))):
            raise InternalError("an i-face carries at least i+1 points")

    def __getitem__(self, i: int) -> int:
        return self.counts[i]


# ---------------------------------------------------------------------------
# exact feasibility: is a point inside a convex hull?
# ---------------------------------------------------------------------------


def _in_convex_hull(target: Sequence[Fraction], points: Sequence[Sequence[int]]) -> bool:
    """Phase-I simplex (Bland's rule) deciding target in conv(points), exactly."""
    if not points:
        return False
    m = len(target) + 1  # coordinate rows plus the convexity row
    n = len(points)
    rows = [[Fraction(p[i]) for p in points] + [Fraction(target[i])] for i in range(len(target))]
    rows.append([Fraction(1)] * n + [Fraction(1)])
    for r in rows:
        if r[-1] < 0:
            for k in range(len(r)):
                r[k] = -r[k]
    # tableau columns: n lambda vars, m artificials, rhs
    tab = [r[:-1] + [Fraction(1) if k == i else Fraction(0) for k in range(m)] + [r[-1]] for i, r in enumerate(rows)]
    basis = [n + i for i in range(m)]
    total_cols = n + m
    while True:
        obj = [Fraction(0)] * total_cols
        w = Fraction(0)
        for i in range(m):
            if basis[i] >= n:
                for j in range(total_cols):
                    obj[j] += tab[i][j]
                w += tab[i][-1]
        enter = next((j for j in range(n) if j not in basis and obj[j] > 0), None)
        if enter is None:
            return w == 0
        ratios = [
            (tab[i][-1] / tab[i][enter], basis[i], i) for i in range(m) if tab[i][enter] > 0
        ]
        if not ratios:
            raise InternalError("phase-I simplex: unbounded artificial objective")
        _, _, leave = min(ratios)
        piv = tab[leave][enter]
        tab[leave] = [x / piv for x in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[leave])]
        basis[leave] = enter


# ---------------------------------------------------------------------------
# hull data: vertices, facets and the face lattice in lattice coordinates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Facet:
    normal: tuple[int, ...]  # outward: <normal, y> <= offset on the hull
    offset: int
    vertex_set: frozenset[int]


@dataclass(frozen=True)
class _FaceData:
    dim: int
    vertex_set: frozenset[int]
    active_facets: frozenset[int]


@dataclass(frozen=True)
class _HullData:
    exponents: ExponentSet
    lat: DifferenceLattice
    coords: tuple[tuple[int, ...], ...]  # all configuration points, in Z^rank
    vertex_point_indices: tuple[int, ...]  # into exponents.points, lex-sorted by point
    facets: tuple[_Facet, ...]
    faces: tuple[_FaceData, ...]

    @property
    def rank(self) -> int:
        return self.lat.rank

    def vertex_points(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.exponents.points[i] for i in self.vertex_point_indices)

    def vertex_coords(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.coords[i] for i in self.vertex_point_indices)


def _affine_rank(coords: Sequence[Sequence[int]]) -> int:
    if len(coords) <= 1:
        return 0
    base = coords[0]
    diffs = [[a - b for a, b in zip(p, base)] for p in coords[1:]]
    h, _ = hermite_normal_form(IntMatrix.from_rows(diffs))
    return sum(1 for r in h.to_rows() if any(r))


def _reduce_against(vec: list[int], rows: list[list[int]]) -> list[int] | None:
    """Fraction-free elimination of vec against echelon rows; None if dependent."""
    v = list(vec)
    for row in rows:
        lead = next(i for i, x in enumerate(row) if x)
        if v[lead]:
            a, b = row[lead], v[lead]
            v = [b_i * a - r_i * b for b_i, r_i in zip(v, row)]
    if not any(v):
        return None
    g = math.gcd(*v)
    return [x // g for x in v]


def _normal_from_echelon(rows: list[list[int]], r: int) -> tuple[int, ...]:
    """Primitive integer normal to the span of r-1 independent echelon rows in Z^r.

    The rows have pairwise distinct leading positions, so one column is free;
    fixing the free coordinate to the pivot product makes every
    back-substitution step an exact integer division (Cramer's rule).
    """
    pivot_rows: dict[int, list[int]] = {}
    for row in rows:
        pivot_rows[next(i for i, x in enumerate(row) if x)] = row
    free = next(j for j in range(r) if j not in pivot_rows)
    w = [0] * r
    scale = 1
    for col, row in pivot_rows.items():
        scale *= row[col]
    w[free] = scale
    for col in sorted(pivot_rows, reverse=True):
        row = pivot_rows[col]
        s = sum(row[j] * w[j] for j in range(col + 1, r) if row[j])
        if s % row[col]:
            raise InternalError("echelon back-substitution was not exact")
        w[col] = -(s // row[col])
    g = math.gcd(*w)
    w = [x // g for x in w]
    first = next(x for x in w if x)
    if first < 0:
        w = [-x for x in w]
    return tuple(w)


def _enumerate_facets(vcoords: Sequence[tuple[int, ...]], r: int) -> list[_Facet]:
    """All facets of the full-dimensional hull of vcoords in Z^r, by DFS over
    affinely independent r-subsets with exact supporting-hyperplane tests."""
    nv = len(vcoords)
    seen: set[tuple] = set()
    facets: list[_Facet] = []
    # bitmask per point of the facets already found through it; a full subset
    # inside a known facet can only re-derive that facet's hyperplane
    membership = [0] * nv

    def handle(chosen: list[int], rows: list[list[int]]) -> None:
        common = membership[chosen[0]]
        for i in chosen[1:]:
            common &= membership[i]
            if not common:
                break
        if common:
            return
        w = _normal_from_echelon(rows, r)
        c = sum(a * b for a, b in zip(w, vcoords[chosen[0]]))
        key = (w, c)
        if key in seen:
            return
        seen.add(key)
        above = below = False
        on_set = []
        for i, p in enumerate(vcoords):
            s = sum(a * b for a, b in zip(w, p)) - c
            if s > 0:
                above = True
            elif s < 0:
                below = True
            else:
                on_set.append(i)
            if above and below:
                return
        if above:
            w, c = tuple(-x for x in w), -c
        bit = 1 << len(facets)
        for i in on_set:
            membership[i] |= bit
        facets.append(_Facet(w, c, frozenset(on_set)))

    def dfs(start: int, chosen: list[int], rows: list[list[int]]) -> None:
        if len(chosen) == r:
            handle(chosen, rows)
            return
        need = r - len(chosen)
        for idx in range(start, nv - need + 1):
            if not chosen:
                dfs(idx + 1, [idx], [])
            else:
                diff = [a - b for a, b in zip(vcoords[idx], vcoords[chosen[0]])]
                red = _reduce_against(diff, rows)
                if red is not None:
                    dfs(idx + 1, chosen + [idx], rows + [red])

    dfs(0, [], [])
    return facets


def _close_faces(nv: int, vcoords: Sequence[tuple[int, ...]], facets: Sequence[_Facet], r: int) -> list[_FaceData]:
    full = frozenset(range(nv))
    sets = {full}
    queue = [full]
    while queue:
        current = queue.pop()
        for f in facets:
            s = current & f.vertex_set
            if s and s not in sets:
                sets.add(s)
                queue.append(s)
    faces = []
    for s in sets:
        active = frozenset(i for i, f in enumerate(facets) if s <= f.vertex_set)
        dim = _affine_rank([vcoords[i] for i in sorted(s)])
        faces.append(_FaceData(dim, s, active))
    faces.sort(key=lambda f: (f.dim, tuple(sorted(f.vertex_set))))
    return faces


def _certify_extremality(coords: Sequence[tuple[int, ...]], r: int) -> list[bool]:
    """Exact extreme-point flags, using cheap certificates before the LP.

    A point that is the unique optimizer of some linear functional is extreme;
    a point that is the midpoint of two other configuration points is not.
    Points certified neither way fall back to the exact phase-I simplex.
    """
    m = len(coords)
    decided: dict[int, bool] = {}
    battery: list[tuple[int, ...]]
    if 3**r <= 800:
        battery = [w for w in itertools.product((-1, 0, 1), repeat=r) if any(w)]
    else:
        battery = []
        for i in range(r):
            battery.append(tuple(1 if j == i else 0 for j in range(r)))
            battery.append(tuple(-1 if j == i else 0 for j in range(r)))
        battery.append(tuple(1 for _ in range(r)))
        battery.append(tuple(-1 for _ in range(r)))
    for w in battery:
        values = [sum(a * b for a, b in zip(w, y)) for y in coords]
        top = max(values)
        if values.count(top) == 1:
            decided[values.index(top)] = True
    point_set = set(coords)
    for i, y in enumerate(coords):
        if i in decided:
            continue
        for a in coords:
            if a == y:
                continue
            mirror = tuple(2 * p - q for p, q in zip(y, a))
            if mirror != a and mirror in point_set:
                decided[i] = False
                break
    flags = []
    for i, y in enumerate(coords):
        if i in decided:
            flags.append(decided[i])
        else:
            others = [coords[j] for j in range(m) if j != i]
            flags.append(not _in_convex_hull([Fraction(x) for x in y], others))
    return flags


@lru_cache(maxsize=None)
def _hull_data(exponents: ExponentSet) -> _HullData:
    coords, lat = lattice_coordinates(exponents.points)
    r = lat.rank
    if r == 0:
        return _HullData(
            exponents,
            lat,
            coords,
            (0,),
            (),
            (_FaceData(0, frozenset({0}), frozenset()),),
        )
    flags = _certify_extremality(coords, r)
    extreme = [i for i, is_vertex in enumerate(flags) if is_vertex]
    extreme.sort(key=lambda i: exponents.points[i])
    vcoords = [coords[i] for i in extreme]
    facets = _enumerate_facets(vcoords, r)
    faces = _close_faces(len(vcoords), vcoords, facets, r)
    return _HullData(exponents, lat, coords, tuple(extreme), tuple(facets), tuple(faces))


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------


def convex_hull(exponents: ExponentSet) -> LatticePolytope:
    """Extreme points of the configuration, in lexicographic order."""
    data = _hull_data(exponents)
    return LatticePolytope(exponents.ambient_dim, data.rank, data.vertex_points())


def _polytope_data(poly: LatticePolytope) -> _HullData:
    return _hull_data(ExponentSet(poly.ambient_dim, poly.vertices))


def face_lattice(poly: LatticePolytope) -> FaceLattice:
    """Every face of every dimension, identified by vertex index sets."""
    data = _polytope_data(poly)
    faces = tuple(Face(f.dim, tuple(sorted(f.vertex_set))) for f in data.faces)
    return FaceLattice(faces)


@dataclass(frozen=True)
class FaceMembers:
    """A face together with the indices of all configuration points lying on it."""

    dim: int
    point_indices: tuple[int, ...]


def face_members(exponents: ExponentSet) -> tuple[FaceMembers, ...]:
    """Every face of the hull with the configuration points it carries.

    A point lies on a face iff it satisfies, with equality, every facet
    inequality active on that face (all tested in exact lattice coordinates).
    """
    data = _hull_data(exponents)
    out = []
    for f in data.faces:
        members = []
        for i, y in enumerate(data.coords):
            if all(
                sum(a * b for a, b in zip(data.facets[h].normal, y)) == data.facets[h].offset
                for h in f.active_facets
            ):
                members.append(i)
        out.append(FaceMembers(f.dim, tuple(members)))
    return tuple(out)


def face_counts(exponents: ExponentSet) -> FaceCounts:
    """For each i, the minimum number of configuration points on an i-face."""
    r = _hull_data(exponents).rank
    minima: list[int | None] = [None] * (r + 1)
    for f in face_members(exponents):
        cnt = len(f.point_indices)
        if minima[f.dim] is None or cnt < minima[f.dim]:
            minima[f.dim] = cnt
    if any(v is None for v in minima):
        raise InternalError("face lattice is missing a dimension")
    return FaceCounts(tuple(v for v in minima if v is not None))


def _rational_coords_in_lattice(lat: DifferenceLattice, vec: Sequence[int]) -> tuple[Fraction, ...] | None:
    """Rational coordinates of vec in the lattice basis, or None if outside the span."""
    r = lat.rank
    basis = lat.basis
    n = lat.ambient_dim
    aug = [[Fraction(basis[j][i]) for j in range(r)] + [Fraction(vec[i])] for i in range(n)]
    row = 0
    for j in range(r):
        piv = next((i for i in range(row, n) if aug[i][j] != 0), None)
        if piv is None:
            raise InternalError("lattice basis is not independent")
        aug[row], aug[piv] = aug[piv], aug[row]
        pv = aug[row][j]
        aug[row] = [x / pv for x in aug[row]]
        for i in range(n):
            if i != row and aug[i][j] != 0:
                f = aug[i][j]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[row])]
        row += 1
    for i in range(row, n):
        if aug[i][r] != 0:
            return None
    return tuple(aug[i][r] for i in range(r))


def _ambient_membership_tests(data: _HullData) -> tuple[list[tuple[tuple[int, ...], int]], list[tuple[int, ...]]]:
    """Integer inequalities and affine-hull equations for membership in ambient space.

    Returns (inequalities, equations): a translated point z = x - base lies in
    the polytope iff every <v, z> = 0 holds and every <w, z> <= c holds.
    """
    lat = data.lat
    r, n = lat.rank, lat.ambient_dim
    basis = lat.basis
    # rational left inverse: coords(z) = P z with P = (B B^T)^-1 B
    gram = [[sum(a * b for a, b in zip(basis[i], basis[j])) for j in range(r)] for i in range(r)]
    aug = [[Fraction(gram[i][j]) for j in range(r)] + [Fraction(x) for x in basis[i]] for i in range(r)]
    for k in range(r):
        piv = next(i for i in range(k, r) if aug[i][k] != 0)
        aug[k], aug[piv] = aug[piv], aug[k]
        pv = aug[k][k]
        aug[k] = [x / pv for x in aug[k]]
        for i in range(r):
            if i != k and aug[i][k] != 0:
                f = aug[i][k]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[k])]
    pseudo = [row[r:] for row in aug]  # r x n rational rows of P
    inequalities = []
    for facet in data.facets:
        row = [sum(Fraction(facet.normal[i]) * pseudo[i][j] for i in range(r)) for j in range(n)]
        den = math.lcm(*(x.denominator for x in row)) if row else 1
        inequalities.append((tuple(int(x * den) for x in row), facet.offset * den))
    equations = []
    if r < n:
        # integer kernel of the basis rows: RREF free columns, cleared to integers
        rref = [[Fraction(x) for x in b] for b in basis]
        pivots = []
        row = 0
        for col in range(n):
            piv = next((i for i in range(row, len(rref)) if rref[i][col] != 0), None)
            if piv is None:
                continue
            rref[row], rref[piv] = rref[piv], rref[row]
            pv = rref[row][col]
            rref[row] = [x / pv for x in rref[row]]
            for i in range(len(rref)):
                if i != row and rref[i][col] != 0:
                    f = rref[i][col]
                    rref[i] = [x - f * y for x, y in zip(rref[i], rref[row])]
            pivots.append(col)
            row += 1
        free = [c for c in range(n) if c not in pivots]
        for fc in free:
            vec = [Fraction(0)] * n
            vec[fc] = Fraction(1)
            for i, pc in enumerate(pivots):
                vec[pc] = -rref[i][fc]
            den = math.lcm(*(x.denominator for x in vec))
            equations.append(tuple(int(x * den) for x in vec))
    return inequalities, equations


def lattice_points(poly: LatticePolytope) -> ExponentSet:
    """All integer vectors inside the polytope, by bounding-box scan with exact tests."""
    data = _polytope_data(poly)
    if data.rank == 0:
        return ExponentSet(poly.ambient_dim, poly.vertices)
    base = data.lat.base_point
    inequalities, equations = _ambient_membership_tests(data)
    ranges = [
        range(min(v[i] for v in poly.vertices), max(v[i] for v in poly.vertices) + 1)
        for i in range(poly.ambient_dim)
    ]
    members = []
    for candidate in itertools.product(*ranges):
        z = tuple(a - b for a, b in zip(candidate, base))
        if any(sum(a * b for a, b in zip(v, z)) != 0 for v in equations):
            continue
        if all(sum(a * b for a, b in zip(w, z)) <= c for w, c in inequalities):
            members.append(candidate)
    members.sort()
    return ExponentSet(poly.ambient_dim, tuple(members))


def minkowski_sum(p: LatticePolytope, q: LatticePolytope) -> LatticePolytope:
    """Convex hull of all pairwise vertex sums."""
    if p.ambient_dim != q.ambient_dim:
        raise DomainError("minkowski_sum: ambient dimensions differ")
    sums = sorted({tuple(a + b for a, b in zip(u, v)) for u in p.vertices for v in q.vertices})
    return convex_hull(ExponentSet(p.ambient_dim, tuple(sums)))


def _pulling_triangulation(data: _HullData) -> list[tuple[int, ...]]:
    """Deterministic triangulation: cone from each face's smallest vertex."""
    by_set = {f.vertex_set: f for f in data.faces}
    memo: dict[frozenset[int], list[tuple[int, ...]]] = {}

    def pull(face: _FaceData) -> list[tuple[int, ...]]:
        if face.vertex_set in memo:
            return memo[face.vertex_set]
        if face.dim == 0:
            result = [tuple(face.vertex_set)]
        else:
            apex = min(face.vertex_set)
            result = []
            for g in data.faces:
                if g.dim == face.dim - 1 and g.vertex_set < face.vertex_set and apex not in g.vertex_set:
                    for s in pull(g):
                        result.append(s + (apex,))
        memo[face.vertex_set] = result
        return result

    top = by_set[frozenset(range(len(data.vertex_point_indices)))]
    return pull(top)


def euclidean_volume(poly: LatticePolytope) -> Fraction:
    """Exact volume in R^n; zero when the polytope is lower-dimensional."""
    n = poly.ambient_dim
    if poly.intrinsic_dim < n:
        return Fraction(0)
    data = _polytope_data(poly)
    verts = data.vertex_points()
    total = Fraction(0)
    for simplex in _pulling_triangulation(data):
        base = verts[simplex[-1]]
        rows = [[a - b for a, b in zip(verts[i], base)] for i in simplex[:-1]]
        total += Fraction(abs(det(IntMatrix.from_rows(rows))), math.factorial(n))
    return total


def normalized_volume(exponents: ExponentSet) -> int:
    """Volume of the hull normalized so an elementary lattice simplex has volume 1.

    Computed as r! times the Euclidean volume of the hull rewritten in the
    coordinates of its difference lattice; always a positive integer, and it
    equals the degree of the projective monomial variety attached to A.
    """
    coords, lat = lattice_coordinates(exponents.points)
    r = lat.rank
    if r == 0:
        return 1
    hull = convex_hull(ExponentSet(r, tuple(sorted(set(coords)))))
    vol = euclidean_volume(hull) * math.factorial(r)
    if vol.denominator != 1 or vol <= 0:
        raise InternalError("normalized volume must be a positive integer")
    return int(vol)


def newton_polytope(polys: Sequence) -> LatticePolytope:
    """Convex hull of the union of the supports of nonzero Laurent polynomials."""
    support = set()
    ambient = None
    for f in polys:
        if not f.terms:
            raise DomainError("newton_polytope: zero polynomial has no Newton polytope")
        if ambient is None:
            ambient = f.n
        elif ambient != f.n:
            raise DomainError("newton_polytope: mixed numbers of variables")
        support.update(e for e, _ in f.terms)
    if ambient is None:
        raise DomainError("newton_polytope: empty polynomial family")
    return convex_hull(ExponentSet(ambient, tuple(sorted(support))))
