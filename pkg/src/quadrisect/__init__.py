"""quadrisect: equal-area perpendicular quadrisections of a triangle.

A quadrisection is a pair of mutually perpendicular segments cutting a
triangle into four regions of equal area.  This package solves the governing
equations for any triangle, counts and classifies the solutions (every
triangle has 1, 2 or 3), verifies them against independent geometric
measurement, renders atlas figures of the triangle space, and reproduces the
classical Bernoulli (1687) and Euler (1779) computations.
"""

from .geometry import (
    CanonicalTriangle,
    DegenerateTriangleError,
    Point2,
    RegionLabel,
    Similarity,
    TriangleAngles,
    TriangleSpec,
    canonicalize,
    classify_region,
    invert_point,
    placements,
    side_placements,
    triangle_angles,
    triangle_from_apex,
    upsilon_contains,
)
from .solver import (
    BaseRoot,
    BaseSolution,
    Quadrisection,
    VerificationReport,
    aeq_residual,
    build_quadrisection,
    enumerate_quadrisections,
    peq_residual,
    solve_base,
    verify_quadrisection,
    y_of_x,
)
from .arcs import (
    ArcData,
    CountReport,
    DomainPoint,
    Membership,
    Sheet,
    TheoremCase,
    arc_data,
    count_via_theorem,
    envelope_point,
    in_FD2,
    j0_point,
    jacobian_F,
    map_F,
    s2_point,
    special_triangles,
)
from .historical import (
    BernoulliParams,
    Degree8Poly,
    EulerParams,
    HistoricalResult,
    bernoulli_compare,
    bernoulli_polynomial,
    euler_residual,
    euler_solve,
)
from .atlas import (
    AtlasCell,
    AtlasGrid,
    RenderSpec,
    classify_grid,
    grid_to_csv,
    grid_to_json,
    render_quadrisection_svg,
    render_space_svg,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
