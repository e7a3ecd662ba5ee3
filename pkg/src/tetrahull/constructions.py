"""Analytic enclosing constructions, one function per arrangement.

Each returns a :class:`Scene`: the unit solid, the enclosing tetrahedron
as an explicit mesh, the claimed volume and a trace of the named
intermediate quantities that lead to it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from types import MappingProxyType
from typing import Mapping

import numpy as np

from .geom import (
    GEOM_TOL,
    ConvexPolyhedron,
    InvalidInputError,
    Polygon2,
    Rotation,
    contains_all,
    cross_section_z,
    hull_polyhedron,
    min_triangle_about_unit_square,
    polyhedron_volume,
    transform,
)
from .platonic import ON_POINT, PHI, SolidKind, dual, golden_rectangle_points, metrics, unit_solid
from .regtetra import RegularTetra, edge_from_inradius, tetra_volume

SQRT2, SQRT3, SQRT5, SQRT6 = (math.sqrt(k) for k in (2, 3, 5, 6))

# Reference value for the dodecahedron, quoted from prior computational work.
DODECA_REFERENCE_VOLUME = 27.39802

TRACE_NAMES: Mapping[str, str] = MappingProxyType({
    "t": "edge of the enclosing tetrahedron",
    "h": "height (of the edge-3 tetrahedron, or of the right tetrahedron)",
    "m": "slope of a slant face over the base",
    "RS": "side of the z=1 section of the edge-3 tetrahedron",
    "gap": "overhang of the cube's top corners past that section",
    "sideNeeded": "side of the z=1 section needed to hold the top square",
    "sideNeededQuoted": "decimal quoted for sideNeeded (inconsistent with the formula)",
    "offset": "horizontal inset of a slant face per unit height",
    "a": "base side of the axa base triangle",
    "sliceLeg": "leg of the right-triangle section at z=1",
    "sliceArea": "area of the section at z=1",
    "R": "circumradius of the solid whose circumsphere is matched",
    "r": "insphere radius of the enclosing tetrahedron",
    "icosaEdge": "edge of the intermediate icosahedron",
    "octaEdge": "edge of the intermediate octahedron (icosahedron edge 2 frame)",
    "tetraEdgeFrame2": "edge of the golden tetrahedron (icosahedron edge 2 frame)",
    "scale": "factor from the edge-2 golden frame to this scene",
    "rotationDeg": "rotation of the dodecahedron about the vertical axis, degrees",
    "constructedVolume": "measured volume of the constructed enclosure",
    "referenceVolume": "externally reported optimum for comparison",
})


def make_trace(**values: float) -> dict[str, float]:
    for name, value in values.items():
        if name not in TRACE_NAMES:
            raise InvalidInputError(f"unknown trace name {name!r}")
        if not math.isfinite(value):
            raise InvalidInputError(f"trace value {name} is not finite")
    return {k: float(v) for k, v in values.items()}


@dataclass(frozen=True, eq=False)
class Scene:
    label: str
    solid: ConvexPolyhedron
    enclosure: ConvexPolyhedron
    enclosure_edge: float | None
    claimed_volume: float
    trace: dict[str, float]
    shells: dict[str, ConvexPolyhedron] = field(default_factory=dict)
    notes: tuple[str, ...] = ()

    @property
    def measured_volume(self) -> float:
        return polyhedron_volume(self.enclosure)

    def contains_solid(self, tol: float = GEOM_TOL) -> bool:
        return contains_all(self.enclosure, self.solid.vertices, tol)


def _golden_tetra(scale: float = 1.0) -> RegularTetra:
    """Tetrahedron with vertices ``scale * (±φ², ±φ², ±φ²)`` (even minus count).

    Its six edge midpoints are the octahedron ``scale * (±φ², 0, 0)`` etc.
    """
    a = PHI**2 * scale
    # a quarter turn about z swaps the reference normals for their negatives
    return RegularTetra(np.zeros(3), Rotation.about_axis((0.0, 0.0, 1.0), math.pi / 2), 2 * SQRT2 * a)


def _axis_octahedron(half_diagonal: float) -> ConvexPolyhedron:
    eye = np.eye(3) * half_diagonal
    return hull_polyhedron(np.vstack([eye, -eye]))


def right_corner_cube() -> Scene:
    """Right tetrahedron with legs 3 on the axes around the unit cube at the origin corner."""
    enclosure = hull_polyhedron([(3, 0, 0), (0, 3, 0), (0, 0, 3), (0, 0, 0)])
    cube = transform(unit_solid(SolidKind.CUBE), Rotation.identity(), (0.5, 0.5, 0.5))
    section = cross_section_z(enclosure, 1.0)
    legs = sorted(section.side_lengths())[:2]
    return Scene(
        label="right-corner-cube",
        solid=cube,
        enclosure=enclosure,
        enclosure_edge=None,
        claimed_volume=4.5,
        trace=make_trace(a=3.0, h=3.0, sliceLeg=legs[0], sliceArea=section.area),
    )


def standard_position_cube() -> Scene:
    """Smallest regular tetrahedron holding the unit cube flat on its base.

    The z=1 section is an equilateral triangle that must hold the cube's
    top face with one edge on the section side belonging to a slant face
    and the opposite corners on the other two sides, which needs side
    ``1 + 2/sqrt(3)``.  Each slant face leans in by ``sqrt(2)/4`` per unit
    height, so the base side is that plus ``sqrt(6)/2``.
    """
    h3 = SQRT6  # height of the edge-3 tetrahedron
    slope = h3 / (SQRT3 / 2)
    offset = 1 / slope
    rs = 2 * (SQRT3 / 2 - SQRT2 / 4) * SQRT3
    overhang = (rs - 1) * SQRT3 / 2
    side_needed = 1 + 2 * SQRT3 / 3
    edge = side_needed + 2 * SQRT3 * offset

    # base triangle centred on the z axis, apex up; vertex A, B at the front
    base_inr = edge / (2 * SQRT3)
    base_cir = edge / SQRT3
    apex_h = edge * math.sqrt(2 / 3)
    a = (-edge / 2, -base_inr, 0.0)
    b = (edge / 2, -base_inr, 0.0)
    c = (0.0, base_cir, 0.0)
    d = (0.0, 0.0, apex_h)
    enclosure = hull_polyhedron([a, b, c, d])

    # cube top edge KL lies on face ABD: at z=1 that face sits at y = -section inradius
    y0 = -side_needed / (2 * SQRT3)
    cube = transform(unit_solid(SolidKind.CUBE), Rotation.identity(), (0.0, y0 + 0.5, 0.5))

    return Scene(
        label="standard-cube",
        solid=cube,
        enclosure=enclosure,
        enclosure_edge=edge,
        claimed_volume=tetra_volume(edge),
        trace=make_trace(
            h=h3, m=slope, offset=offset, RS=rs, gap=overhang,
            sideNeeded=side_needed, sideNeededQuoted=2.135, t=edge,
        ),
        notes=(
            "sideNeeded = 1 + 2*sqrt(3)/3 = 2.1547; the quoted decimal 2.135 does not match "
            "the formula, while the quoted edge 3.37945 does",
        ),
    )


def tetra_around_octahedron() -> Scene:
    """Regular tetrahedron of edge 2 whose edge midpoints are the unit octahedron."""
    octa = unit_solid(SolidKind.OCTAHEDRON)
    tetra = RegularTetra.canonical(2.0)
    return Scene(
        label="octa",
        solid=octa,
        enclosure=tetra.as_polyhedron(),
        enclosure_edge=2.0,
        claimed_volume=2 * SQRT2 / 3,
        trace=make_trace(t=2.0),
    )


def _insphere_scene(label: str, solid: ConvexPolyhedron, circumradius: float, **extra) -> Scene:
    edge = edge_from_inradius(circumradius)
    tetra = RegularTetra.canonical(edge)
    return Scene(
        label=label,
        solid=solid,
        enclosure=tetra.as_polyhedron(),
        enclosure_edge=edge,
        claimed_volume=tetra_volume(edge),
        trace=make_trace(R=circumradius, r=tetra.inradius, t=edge, **extra),
    )


def icosa_insphere_tetra() -> Scene:
    """Tetrahedron whose insphere is the unit icosahedron's circumsphere."""
    return _insphere_scene(
        "icosa-insphere", unit_solid(SolidKind.ICOSAHEDRON), metrics(SolidKind.ICOSAHEDRON).circumradius
    )


def icosa_golden_tetra() -> Scene:
    """Tetrahedron built on the octahedron of squares around the golden rectangles.

    In the edge-2 frame the rectangles' corners ``(0, ±1, ±φ)`` lie on the
    faces of the octahedron with vertices ``(±φ², 0, 0)`` and permutations,
    which is the midpoint octahedron of the tetrahedron ``(±φ², ±φ², ±φ²)``.
    Everything is then halved for the unit icosahedron.
    """
    icosa2 = hull_polyhedron(golden_rectangle_points())
    octa2 = _axis_octahedron(PHI**2)
    octa_edge2 = SQRT2 * PHI**2
    tetra = _golden_tetra(0.5)
    return Scene(
        label="icosa-golden",
        solid=unit_solid(SolidKind.ICOSAHEDRON),
        enclosure=tetra.as_polyhedron(),
        enclosure_edge=tetra.edge,
        claimed_volume=tetra_volume(tetra.edge),
        trace=make_trace(
            octaEdge=octa_edge2, tetraEdgeFrame2=2 * octa_edge2, scale=0.5, t=tetra.edge,
        ),
        shells={
            "octahedron": transform(octa2, Rotation.identity(), s=0.5),
            "icosahedronFrame2": icosa2,
            "octahedronFrame2": octa2,
        },
    )


def _icosa_about_dodeca() -> tuple[ConvexPolyhedron, float]:
    """Icosahedron whose face centroids are the unit dodecahedron's vertices."""
    icosa = unit_solid(SolidKind.ICOSAHEDRON)
    edge = 1 / dual(icosa).edge_lengths().mean()
    return transform(icosa, Rotation.identity(), s=edge), edge


def dodeca_dual_tetra() -> Scene:
    """Dual icosahedron around the unit dodecahedron, then the insphere tetrahedron."""
    dodeca = unit_solid(SolidKind.DODECAHEDRON)
    icosa, icosa_edge = _icosa_about_dodeca()
    radius = icosa_edge * metrics(SolidKind.ICOSAHEDRON).circumradius
    scene = _insphere_scene("dodeca-dual", dodeca, radius, icosaEdge=icosa_edge)
    return replace(scene, shells={"icosahedron": icosa})


def dodeca_rotated_tetra(turn_deg: float = 36.0) -> Scene:
    """Dodecahedron turned 36° inside an on-point icosahedron, then the golden tetrahedron.

    The surrounding icosahedron edge is taken as ``(15 + sqrt(5))/10``;
    containment is checked by callers, not assumed.
    """
    turn = Rotation.about_axis((0.0, 0.0, 1.0), math.radians(turn_deg))
    dodeca = transform(unit_solid(SolidKind.DODECAHEDRON), turn @ ON_POINT)
    icosa_edge = (15 + SQRT5) / 10
    icosa = transform(unit_solid(SolidKind.ICOSAHEDRON), ON_POINT, s=icosa_edge)
    golden = _golden_tetra(icosa_edge / 2)
    tetra = RegularTetra(ON_POINT.apply(golden.centroid), ON_POINT @ golden.rotation, golden.edge)
    enclosure = tetra.as_polyhedron()
    measured = polyhedron_volume(enclosure)
    return Scene(
        label="dodeca-rotated",
        solid=dodeca,
        enclosure=enclosure,
        enclosure_edge=tetra.edge,
        claimed_volume=measured,
        trace=make_trace(
            icosaEdge=icosa_edge,
            scale=icosa_edge / 2,
            rotationDeg=turn_deg,
            t=tetra.edge,
            constructedVolume=measured,
            referenceVolume=DODECA_REFERENCE_VOLUME,
        ),
        shells={
            "icosahedron": icosa,
            "octahedron": transform(_axis_octahedron(PHI**2), ON_POINT, s=icosa_edge / 2),
        },
        notes=(
            "constructed volume is measured from the enclosure; the reference 27.39802 is the "
            "searched optimum, not this construction's volume",
        ),
    )


def sxsxs_volume(s: float) -> float:
    """Volume of a tetrahedron on an s-by-s (base, height) triangle with height s."""
    if not s > 0:
        raise InvalidInputError(f"s must be positive, got {s}")
    return s**3 / 6


def corner_tetra_volume(height: float) -> float:
    """Least right-corner tetrahedron of the given height around the unit cube.

    Its z=1 section must be the 2x2 triangle, so by similarity the base is
    an axa triangle with ``a = 2h/(h-1)``.
    """
    if not height > 1:
        raise InvalidInputError("height must exceed the cube's height 1")
    a = 2 * height / (height - 1)
    return a * a * height / 6


@dataclass(frozen=True)
class CrossSectionReport:
    slice_area: float
    slice_legs: tuple[float, float]
    slice_hypotenuse: float
    contains_square: bool
    oracle_area: float
    best_height: float
    best_height_volume: float
    passed: bool

    def lines(self) -> list[str]:
        status = "PASS" if self.passed else "FAIL"
        return [
            f"slice area at z=1: {self.slice_area:.12g}",
            f"slice legs: {self.slice_legs[0]:.12g}, {self.slice_legs[1]:.12g}; hypotenuse {self.slice_hypotenuse:.12g}",
            f"slice contains unit square: {self.contains_square}",
            f"searched minimal triangle about the unit square: {self.oracle_area:.12g}",
            f"least corner-tetrahedron volume over heights: {self.best_height_volume:.12g} at h={self.best_height:.6g}",
            f"result: {status}",
        ]


def cross_section_argument_check(heights: np.ndarray | None = None) -> CrossSectionReport:
    """Numerically replay the cube minimality chain.

    Slices the 3x3x3 right tetrahedron at z=1, checks the slice is a 2x2
    right triangle holding the cube's top face with area equal to the
    searched minimum, and scans heights to confirm the corner tetrahedron
    volume bottoms out at h = 3.
    """
    scene = right_corner_cube()
    section: Polygon2 = cross_section_z(scene.enclosure, 1.0)
    sides = sorted(section.side_lengths())
    top = scene.solid.vertices[scene.solid.vertices[:, 2] > 0.5][:, :2]
    inside = section.contains_all(top, 1e-9)
    oracle = min_triangle_about_unit_square()

    if heights is None:
        heights = np.linspace(1.05, 12.0, 21901)
    vols = np.array([corner_tetra_volume(h) for h in heights])
    k = int(np.argmin(vols))

    ok = (
        abs(section.area - 2.0) <= 1e-9
        and inside
        and abs(oracle - section.area) <= 1e-4
        and abs(sides[0] - 2) <= 1e-9 and abs(sides[1] - 2) <= 1e-9
        and abs(heights[k] - 3.0) <= 2 * float(np.max(np.diff(heights)))
    )
    return CrossSectionReport(
        slice_area=section.area,
        slice_legs=(float(sides[0]), float(sides[1])),
        slice_hypotenuse=float(sides[2]),
        contains_square=inside,
        oracle_area=oracle,
        best_height=float(heights[k]),
        best_height_volume=float(vols[k]),
        passed=bool(ok),
    )


CONSTRUCTIONS = {
    "right-corner-cube": right_corner_cube,
    "standard-cube": standard_position_cube,
    "octa": tetra_around_octahedron,
    "icosa-insphere": icosa_insphere_tetra,
    "icosa-golden": icosa_golden_tetra,
    "dodeca-dual": dodeca_dual_tetra,
    "dodeca-rotated": dodeca_rotated_tetra,
}
