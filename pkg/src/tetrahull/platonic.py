"""Unit-edge Platonic solids from exact coordinates, their metrics and duals.

Canonical frames (all centred at the origin):

* tetrahedron: vertices ``(-1,-1,-1), (-1,1,1), (1,-1,1), (1,1,-1)`` over
  ``2*sqrt(2)``, so its outward face normals are the reference normals of
  :mod:`tetrahull.regtetra`;
* cube: axis aligned, vertices ``(±1/2, ±1/2, ±1/2)``;
* octahedron: vertices on the axes at ``±1/sqrt(2)``;
* icosahedron: the three golden rectangles ``(0, ±1, ±φ)``, ``(±1, ±φ, 0)``,
  ``(±φ, 0, ±1)`` halved;
* dodecahedron: face centroids of the icosahedron, rescaled to unit edge.
  Its face normals therefore point along icosahedron vertices.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .geom import ConvexPolyhedron, MalformedInputError, Rotation, hull_polyhedron

PHI = (1 + math.sqrt(5)) / 2

SQRT2 = math.sqrt(2)
SQRT3 = math.sqrt(3)
SQRT5 = math.sqrt(5)


class SolidKind(str, enum.Enum):
    TETRAHEDRON = "tetrahedron"
    CUBE = "cube"
    OCTAHEDRON = "octahedron"
    ICOSAHEDRON = "icosahedron"
    DODECAHEDRON = "dodecahedron"


@dataclass(frozen=True)
class SolidMetrics:
    edge: float
    volume: float
    circumradius: float
    inradius: float


def golden_rectangle_points() -> np.ndarray:
    """The 12 corners of the three mutually perpendicular ``2 x 2φ`` rectangles."""
    pts = []
    for a, b in itertools.product((1.0, -1.0), repeat=2):
        pts += [(0.0, a, b * PHI), (a, b * PHI, 0.0), (b * PHI, 0.0, a)]
    return np.array(pts)


def _tetrahedron() -> np.ndarray:
    return np.array([(-1, -1, -1), (-1, 1, 1), (1, -1, 1), (1, 1, -1)], dtype=float) / (2 * SQRT2)


def _cube() -> np.ndarray:
    return np.array(list(itertools.product((-0.5, 0.5), repeat=3)))


def _octahedron() -> np.ndarray:
    eye = np.eye(3) / SQRT2
    return np.vstack([eye, -eye])


def _icosahedron() -> np.ndarray:
    return golden_rectangle_points() / 2


_BUILDERS = {
    SolidKind.TETRAHEDRON: _tetrahedron,
    SolidKind.CUBE: _cube,
    SolidKind.OCTAHEDRON: _octahedron,
    SolidKind.ICOSAHEDRON: _icosahedron,
}


def unit_solid(kind: SolidKind | str) -> ConvexPolyhedron:
    """The unit-edge solid of ``kind`` in its canonical frame."""
    kind = SolidKind(kind)
    if kind is SolidKind.DODECAHEDRON:
        d = dual(unit_solid(SolidKind.ICOSAHEDRON))
        return ConvexPolyhedron(d.vertices / d.edge_lengths().mean(), d.faces)
    return hull_polyhedron(_BUILDERS[kind]())


def dual(p: ConvexPolyhedron) -> ConvexPolyhedron:
    """Face-centroid dual, at natural scale.

    Dual faces are the cycles of face centroids around each vertex of ``p``,
    ordered counterclockwise about the direction from the centre of ``p`` to
    that vertex (valid for vertex-transitive solids centred on their
    vertex mean).
    """
    centre = p.centroid
    centroids = np.empty((len(p.faces), 3))
    for k, f in enumerate(p.faces):
        pts = p.vertices[list(f)]
        if np.linalg.norm(np.cross(pts[1] - pts[0], pts[2] - pts[0])) < 1e-12:
            raise MalformedInputError(f"face {k} is degenerate")
        centroids[k] = pts.mean(axis=0)

    faces = []
    for vi in range(len(p.vertices)):
        ring = [k for k, f in enumerate(p.faces) if vi in f]
        axis = p.vertices[vi] - centre
        axis /= np.linalg.norm(axis)
        pts = centroids[ring]
        c = pts.mean(axis=0)
        u = pts[0] - c
        u -= axis * np.dot(u, axis)
        u /= np.linalg.norm(u)
        w = np.cross(axis, u)
        ang = np.arctan2((pts - c) @ w, (pts - c) @ u)
        faces.append(tuple(ring[k] for k in np.argsort(ang, kind="stable")))
    return ConvexPolyhedron(centroids, faces)


def metrics(kind: SolidKind | str) -> SolidMetrics:
    """Closed-form volume and radii for the unit-edge solid."""
    kind = SolidKind(kind)
    if kind is SolidKind.TETRAHEDRON:
        return SolidMetrics(1.0, SQRT2 / 12, math.sqrt(6) / 4, math.sqrt(6) / 12)
    if kind is SolidKind.CUBE:
        return SolidMetrics(1.0, 1.0, SQRT3 / 2, 0.5)
    if kind is SolidKind.OCTAHEDRON:
        return SolidMetrics(1.0, SQRT2 / 3, SQRT2 / 2, math.sqrt(6) / 6)
    if kind is SolidKind.ICOSAHEDRON:
        return SolidMetrics(
            1.0,
            5 * (3 + SQRT5) / 12,
            math.sqrt(10 + 2 * SQRT5) / 4,
            PHI**2 / (2 * SQRT3),
        )
    return SolidMetrics(
        1.0,
        (15 + 7 * SQRT5) / 4,
        SQRT3 * PHI / 2,
        math.sqrt(25 + 11 * SQRT5) / (2 * math.sqrt(10)),
    )


# Takes the icosahedron vertex direction (0, 1, φ) to +z: the "on point" frame.
ON_POINT = Rotation.aligning((0.0, 1.0, PHI), (0.0, 0.0, 1.0))
