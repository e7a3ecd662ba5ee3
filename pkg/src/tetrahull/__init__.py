"""Minimal enclosing regular tetrahedra for the Platonic solids."""

from .constructions import (
    CONSTRUCTIONS,
    Scene,
    cross_section_argument_check,
    dodeca_dual_tetra,
    dodeca_rotated_tetra,
    icosa_golden_tetra,
    icosa_insphere_tetra,
    right_corner_cube,
    standard_position_cube,
    sxsxs_volume,
    tetra_around_octahedron,
)
from .geom import (
    ConvexPolyhedron,
    Polygon2,
    Rotation,
    contains_point,
    cross_section_z,
    min_triangle_about_unit_square,
    polyhedron_volume,
    transform,
)
from .optimizer import (
    EnclosureResult,
    SearchConfig,
    lp_oracle_min_edge,
    min_enclosing_regular_tetra,
    optimality_report,
)
from .platonic import PHI, SolidKind, SolidMetrics, dual, metrics, unit_solid
from .regtetra import OrientedFit, RegularTetra, min_edge_for_orientation, tetra_volume

__version__ = "0.1.0"
