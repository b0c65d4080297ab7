"""Exact arithmetic for successive minima, degrees and height bounds of
projective monomial (toric) varieties, driven by the combinatorics of a
finite exponent configuration in Z^n."""

from .errors import DomainError, InternalError, PreconditionError
from .numkernel import (
    ExactLog,
    exactlog_combine,
    exactlog_compare,
    exactlog_of_rational,
    exactlog_to_decimal,
    factorize,
)
from .lattice import (
    DifferenceLattice,
    IntMatrix,
    SmithDecomposition,
    difference_lattice,
    hermite_normal_form,
    lattice_coordinates,
    lattice_index,
    smith_normal_form,
)
from .polytope import (
    ExponentSet,
    FaceCounts,
    FaceLattice,
    LatticePolytope,
    convex_hull,
    euclidean_volume,
    face_counts,
    face_lattice,
    face_members,
    lattice_points,
    minkowski_sum,
    newton_polytope,
    normalized_volume,
)
from .heights import (
    AffinePointQ,
    HomogMapQ,
    LaurentPolyQ,
    ProjPointQ,
    Q_height,
    TorsionPoint,
    A_weil_height,
    map_weyl_height,
    monomial_map,
    poly_height,
    proj_height,
    pushforward_height_check,
    torsion_image_height,
    weil_height,
    weyl_norm_sq,
)
from .toric import (
    ClassicalExample,
    MonomialVarietyData,
    SampleConfig,
    ToricReport,
    classical_example,
    height_bounds,
    min_height_lower_check,
    monomial_bounds,
    proj_space_height,
    resultant_height_bound,
    sample_verify_minima,
    successive_minima,
    toric_dim_deg,
    toric_report,
    zhang_bracket_check,
)
from .koushnirenko import (
    DeclaredSolution,
    KoushReport,
    LaurentSystem,
    bkgral_bounds,
    denso_check,
    jacobian_nonsingular,
    koushnirenko_check,
    power_tower_system,
    simplex_shift_check,
    solve_triangular,
    solve_univariate,
    support_lattice_reduction,
    sylvester_resultant_check,
)
from .nssbounds import NssInput, bk_afin_bound, nss_bounds, nss_support

__version__ = "0.1.0"
