"""Regular tetrahedra as poses, and the per-orientation minimal enclosure.

A regular tetrahedron with centroid ``c``, rotation ``r`` and edge ``t`` is
the set ``{x : n_i . (x - c) <= t*sqrt(6)/12}`` where ``n_i = r(REFERENCE_NORMALS[i])``.

For a fixed orientation the smallest enclosing tetrahedron has a closed
form.  With support values ``M_i = max_j n_i . p_j`` and the fact that the
four normals sum to zero, the inradius must be at least ``mean(M_i)``;
that bound is attained by the unique centroid making all four face gaps
equal, ``c = 3/4 * sum_i (M_i - mean(M)) n_i``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .geom import GEOM_TOL, ConvexPolyhedron, InvalidInputError, Rotation, as_points

SQRT6 = math.sqrt(6)

REFERENCE_NORMALS = np.array(
    [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)], dtype=float
) / math.sqrt(3)
REFERENCE_NORMALS.setflags(write=False)

# Face k is opposite vertex k; each cycle is counterclockwise seen from outside.
TETRA_FACES = ((1, 2, 3), (0, 3, 2), (0, 1, 3), (0, 2, 1))


def inradius_of(edge: float) -> float:
    return edge * SQRT6 / 12


def edge_from_inradius(inradius: float) -> float:
    return 12 * inradius / SQRT6


def tetra_volume(edge: float) -> float:
    if not edge > 0:
        raise InvalidInputError(f"edge must be positive, got {edge}")
    return math.sqrt(2) * edge**3 / 12


@dataclass(frozen=True, eq=False)
class RegularTetra:
    centroid: np.ndarray
    rotation: Rotation
    edge: float

    def __post_init__(self):
        if not self.edge > 0:
            raise InvalidInputError(f"edge must be positive, got {self.edge}")
        c = np.asarray(self.centroid, dtype=float).reshape(3)
        c.setflags(write=False)
        object.__setattr__(self, "centroid", c)

    @classmethod
    def canonical(cls, edge: float = 1.0) -> RegularTetra:
        return cls(np.zeros(3), Rotation.identity(), edge)

    @classmethod
    def standing(cls, edge: float) -> RegularTetra:
        """Base face on ``z = 0``, apex straight up on the z axis."""
        up = Rotation.aligning(-REFERENCE_NORMALS[0], (0.0, 0.0, 1.0))
        return cls(np.array([0.0, 0.0, inradius_of(edge)]), up, edge)

    @property
    def normals(self) -> np.ndarray:
        return self.rotation.apply(REFERENCE_NORMALS)

    @property
    def inradius(self) -> float:
        return inradius_of(self.edge)

    @property
    def circumradius(self) -> float:
        return self.edge * SQRT6 / 4

    @property
    def volume(self) -> float:
        return tetra_volume(self.edge)

    def vertices(self) -> np.ndarray:
        """Vertex ``k`` lies opposite face ``k``, along ``-n_k``."""
        return self.centroid - self.circumradius * self.normals

    def contains(self, points, tol: float = GEOM_TOL) -> bool:
        if tol < 0:
            raise InvalidInputError("tol must be non-negative")
        d = (as_points(points) - self.centroid) @ self.normals.T
        return bool(np.all(d <= self.inradius + tol))

    def as_polyhedron(self) -> ConvexPolyhedron:
        return ConvexPolyhedron(self.vertices(), TETRA_FACES)


@dataclass(frozen=True, eq=False)
class OrientedFit:
    """Smallest regular tetrahedron around a point set at one orientation."""

    edge: float
    centroid: np.ndarray
    support_values: np.ndarray
    rotation: Rotation = field(default_factory=Rotation.identity)

    @property
    def volume(self) -> float:
        return math.sqrt(2) * self.edge**3 / 12

    def tetra(self) -> RegularTetra:
        return RegularTetra(self.centroid, self.rotation, self.edge)

    def gaps(self, points) -> np.ndarray:
        """Per face, inradius minus the farthest point's signed distance."""
        normals = self.rotation.apply(REFERENCE_NORMALS)
        d = (as_points(points) - self.centroid) @ normals.T
        return inradius_of(self.edge) - d.max(axis=0)


def min_edge_for_orientation(points, r: Rotation | None = None) -> OrientedFit:
    """Closed-form minimal enclosing regular tetrahedron with face normals ``r(n̂_i)``."""
    pts = as_points(points)
    if len(pts) == 0:
        raise InvalidInputError("empty point set")
    r = r or Rotation.identity()
    normals = r.apply(REFERENCE_NORMALS)
    support = (pts @ normals.T).max(axis=0)
    d_star = float(support.mean())
    centroid = 0.75 * ((support - d_star) @ normals)
    # clamp rounding noise: sum(M_i) >= 0 holds exactly in exact arithmetic
    edge = max(edge_from_inradius(d_star), 0.0)
    return OrientedFit(edge, centroid, support, r)


def min_edges(points, matrices: np.ndarray) -> np.ndarray:
    """Vectorised minimal edges for a stack of rotation matrices ``(k, 3, 3)``."""
    pts = as_points(points)
    normals = np.einsum("kij,mj->kmi", matrices, REFERENCE_NORMALS)
    support = np.einsum("kmi,pi->kmp", normals, pts).max(axis=2)
    return np.maximum(edge_from_inradius(support.mean(axis=1)), 0.0)
