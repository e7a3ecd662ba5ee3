"""Coordinate-level primitives: rotations, convex polyhedra, slicing.

Points are plain ``numpy`` arrays of shape ``(3,)`` (or ``(n, 3)`` for
point sets).  Everything here is a pure function on immutable values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Sequence

import numpy as np
from scipy.spatial import ConvexHull
from scipy.spatial.transform import Rotation as _ScipyRotation

GEOM_TOL = 1e-9
ORTHO_TOL = 1e-12


class GeometryError(ValueError):
    """Base class for invalid geometric input."""


class MalformedInputError(GeometryError):
    pass


class InvalidScaleError(GeometryError):
    pass


class NoSectionError(GeometryError):
    pass


class InvalidInputError(GeometryError):
    pass


def vec3(x: float, y: float, z: float) -> np.ndarray:
    v = np.array([x, y, z], dtype=float)
    if not np.all(np.isfinite(v)):
        raise InvalidInputError(f"non-finite coordinate in {v!r}")
    return v


def as_points(points) -> np.ndarray:
    """Coerce a point or point list to a finite ``(n, 3)`` float array."""
    arr = np.asarray(points, dtype=float)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2 or arr.shape[1] != 3:
        raise InvalidInputError(f"expected (n, 3) points, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError("non-finite coordinates")
    return arr


@dataclass(frozen=True, eq=False)
class Rotation:
    """A proper rotation stored as a 3x3 matrix.

    The optimizer works in the rotation-vector chart (axis * angle), see
    :meth:`from_rotvec` and :meth:`as_rotvec`.
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        if m.shape != (3, 3):
            raise InvalidInputError(f"rotation matrix must be 3x3, got {m.shape}")
        if not np.allclose(m.T @ m, np.eye(3), atol=1e-10, rtol=0.0):
            raise InvalidInputError("matrix is not orthogonal")
        if np.linalg.det(m) < 0:
            raise InvalidInputError("matrix is a reflection, not a rotation")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def identity(cls) -> Rotation:
        return cls(np.eye(3))

    @classmethod
    def from_rotvec(cls, rotvec) -> Rotation:
        return cls(_ScipyRotation.from_rotvec(np.asarray(rotvec, dtype=float)).as_matrix())

    @classmethod
    def about_axis(cls, axis, angle: float) -> Rotation:
        """Rotation by ``angle`` radians about ``axis`` (right-hand rule)."""
        axis = np.asarray(axis, dtype=float)
        norm = np.linalg.norm(axis)
        if norm == 0:
            raise InvalidInputError("zero rotation axis")
        return cls.from_rotvec(axis / norm * angle)

    @classmethod
    def from_quaternion(cls, quat) -> Rotation:
        """From a scalar-last quaternion ``(x, y, z, w)``."""
        return cls(_ScipyRotation.from_quat(np.asarray(quat, dtype=float)).as_matrix())

    @classmethod
    def aligning(cls, src, dst) -> Rotation:
        """The minimal-angle rotation taking direction ``src`` to ``dst``."""
        a = np.asarray(src, dtype=float)
        b = np.asarray(dst, dtype=float)
        a = a / np.linalg.norm(a)
        b = b / np.linalg.norm(b)
        axis = np.cross(a, b)
        s = np.linalg.norm(axis)
        c = float(np.dot(a, b))
        if s < ORTHO_TOL:
            if c > 0:
                return cls.identity()
            # antiparallel: any perpendicular axis works
            perp = np.cross(a, [1.0, 0.0, 0.0])
            if np.linalg.norm(perp) < 1e-6:
                perp = np.cross(a, [0.0, 1.0, 0.0])
            return cls.about_axis(perp, math.pi)
        return cls.about_axis(axis, math.atan2(s, c))

    def as_rotvec(self) -> np.ndarray:
        return _ScipyRotation.from_matrix(self.matrix).as_rotvec()

    def apply(self, points) -> np.ndarray:
        pts = np.asarray(points, dtype=float)
        return pts @ self.matrix.T

    def inv(self) -> Rotation:
        return Rotation(self.matrix.T)

    def __matmul__(self, other: Rotation) -> Rotation:
        """``(a @ b).apply(v) == a.apply(b.apply(v))``."""
        return Rotation(self.matrix @ other.matrix)

    def __repr__(self):
        return f"Rotation(rotvec={np.round(self.as_rotvec(), 12).tolist()})"


@dataclass(frozen=True, eq=False)
class ConvexPolyhedron:
    """Vertex array plus face index cycles, counterclockwise seen from outside."""

    vertices: np.ndarray
    faces: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        v = as_points(self.vertices).copy()
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)
        object.__setattr__(self, "faces", tuple(tuple(int(i) for i in f) for f in self.faces))

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        seen = set()
        for f in self.faces:
            for a, b in zip(f, f[1:] + f[:1]):
                seen.add((min(a, b), max(a, b)))
        return tuple(sorted(seen))

    @cached_property
    def face_planes(self) -> tuple[np.ndarray, np.ndarray]:
        """Unit outward normals ``(F, 3)`` and offsets ``(F,)`` with ``n.x <= d`` inside.

        Normals come from Newell's method so they average out small
        non-planarity rather than trusting any single vertex triple.
        """
        normals = np.empty((len(self.faces), 3))
        offsets = np.empty(len(self.faces))
        for k, f in enumerate(self.faces):
            pts = self.vertices[list(f)]
            nxt = np.roll(pts, -1, axis=0)
            n = np.array([
                np.sum((pts[:, 1] - nxt[:, 1]) * (pts[:, 2] + nxt[:, 2])),
                np.sum((pts[:, 2] - nxt[:, 2]) * (pts[:, 0] + nxt[:, 0])),
                np.sum((pts[:, 0] - nxt[:, 0]) * (pts[:, 1] + nxt[:, 1])),
            ])
            norm = np.linalg.norm(n)
            if norm == 0:
                raise MalformedInputError(f"face {k} has zero area")
            n /= norm
            normals[k] = n
            offsets[k] = float(np.mean(pts @ n))
        return normals, offsets

    @property
    def centroid(self) -> np.ndarray:
        """Mean of the vertices (not the volume centroid)."""
        return self.vertices.mean(axis=0)

    def edge_lengths(self) -> np.ndarray:
        e = np.array(self.edges)
        return np.linalg.norm(self.vertices[e[:, 0]] - self.vertices[e[:, 1]], axis=1)

    def planarity_error(self) -> float:
        normals, offsets = self.face_planes
        worst = 0.0
        for f, n, d in zip(self.faces, normals, offsets):
            worst = max(worst, float(np.max(np.abs(self.vertices[list(f)] @ n - d))))
        return worst

    def convexity_error(self) -> float:
        """Largest distance of any vertex outside any face plane."""
        normals, offsets = self.face_planes
        return max(0.0, float(np.max(self.vertices @ normals.T - offsets)))

    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.faces)

    def validate(self, tol: float = GEOM_TOL) -> None:
        """Raise :class:`MalformedInputError` unless every mesh invariant holds."""
        counts = np.zeros(len(self.vertices), dtype=int)
        for f in self.faces:
            if len(f) < 3:
                raise MalformedInputError(f"face {f} has fewer than 3 vertices")
            counts[list(f)] += 1
        if np.any(counts < 3):
            raise MalformedInputError("vertex referenced by fewer than 3 faces")
        if self.planarity_error() > tol:
            raise MalformedInputError(f"non-planar face (error {self.planarity_error():.3g})")
        if self.convexity_error() > tol:
            raise MalformedInputError("polyhedron is not convex")
        if self.euler_characteristic() != 2:
            raise MalformedInputError("Euler characteristic is not 2")


def polyhedron_volume(p: ConvexPolyhedron, tol: float = GEOM_TOL) -> float:
    """Signed volume by the divergence theorem over fan-triangulated faces.

    Positive when faces are oriented outward.  Raises
    :class:`MalformedInputError` if a face is non-planar beyond ``tol``.
    """
    err = p.planarity_error()
    if err > tol:
        raise MalformedInputError(f"non-planar face (error {err:.3g})")
    v = p.vertices
    total = 0.0
    for f in p.faces:
        a = v[f[0]]
        for i in range(1, len(f) - 1):
            total += float(np.dot(a, np.cross(v[f[i]], v[f[i + 1]])))
    return total / 6.0


def contains_point(p: ConvexPolyhedron, q, tol: float = GEOM_TOL) -> bool:
    if tol < 0:
        raise InvalidInputError("tol must be non-negative")
    normals, offsets = p.face_planes
    return bool(np.all(normals @ np.asarray(q, dtype=float) - offsets <= tol))


def contains_all(p: ConvexPolyhedron, points, tol: float = GEOM_TOL) -> bool:
    normals, offsets = p.face_planes
    return bool(np.all(as_points(points) @ normals.T - offsets <= tol))


def support_gaps(p: ConvexPolyhedron, points) -> np.ndarray:
    """Per face, the smallest distance from the face plane to ``points`` (inside positive)."""
    normals, offsets = p.face_planes
    return np.min(offsets - as_points(points) @ normals.T, axis=0)


def transform(p: ConvexPolyhedron, r: Rotation, t=(0.0, 0.0, 0.0), s: float = 1.0) -> ConvexPolyhedron:
    """Map every vertex ``v`` to ``s * r(v) + t``."""
    if not s > 0:
        raise InvalidScaleError(f"scale must be positive, got {s}")
    return ConvexPolyhedron(s * r.apply(p.vertices) + np.asarray(t, dtype=float), p.faces)


def hull_polyhedron(points, tol: float = 1e-9) -> ConvexPolyhedron:
    """Convex hull with coplanar hull triangles merged into polygonal faces."""
    pts = as_points(points)
    hull = ConvexHull(pts)
    groups: list[tuple[np.ndarray, float, set[int]]] = []
    for simplex, eq in zip(hull.simplices, hull.equations):
        n, d = eq[:3], -eq[3]
        for gn, gd, members in groups:
            if np.dot(gn, n) > 1 - tol and abs(gd - d) < tol * max(1.0, abs(d)):
                members.update(int(i) for i in simplex)
                break
        else:
            groups.append((n, d, {int(i) for i in simplex}))

    used = sorted({i for _, _, members in groups for i in members})
    remap = {old: new for new, old in enumerate(used)}
    faces = []
    for n, _, members in groups:
        idx = sorted(members)
        faces.append(tuple(remap[i] for i in _ccw_cycle(pts, idx, n)))
    return ConvexPolyhedron(pts[used], faces)


def _ccw_cycle(pts: np.ndarray, idx: Sequence[int], normal: np.ndarray) -> list[int]:
    """Order coplanar points counterclockwise about ``normal``."""
    sub = pts[list(idx)]
    c = sub.mean(axis=0)
    u = sub[0] - c
    u /= np.linalg.norm(u)
    w = np.cross(normal, u)
    ang = np.arctan2((sub - c) @ w, (sub - c) @ u)
    return [idx[k] for k in np.argsort(ang, kind="stable")]


@dataclass(frozen=True, eq=False)
class Polygon2:
    """Counterclockwise convex polygon in the plane, points shape ``(n, 2)``."""

    points: np.ndarray

    @property
    def area(self) -> float:
        x, y = self.points[:, 0], self.points[:, 1]
        return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))

    def side_lengths(self) -> np.ndarray:
        return np.linalg.norm(np.roll(self.points, -1, axis=0) - self.points, axis=1)

    def contains(self, q, tol: float = GEOM_TOL) -> bool:
        q = np.asarray(q, dtype=float)
        a = self.points
        b = np.roll(a, -1, axis=0)
        edge = b - a
        lengths = np.linalg.norm(edge, axis=1)
        cross = edge[:, 0] * (q[1] - a[:, 1]) - edge[:, 1] * (q[0] - a[:, 0])
        return bool(np.all(cross / lengths >= -tol))

    def contains_all(self, points, tol: float = GEOM_TOL) -> bool:
        return all(self.contains(q, tol) for q in np.asarray(points, dtype=float))


def cross_section_z(p: ConvexPolyhedron, z: float, tol: float = GEOM_TOL) -> Polygon2:
    """The polygon ``p ∩ {z = const}`` projected to the xy-plane, counterclockwise."""
    v = p.vertices
    found = [v[i, :2] for i in range(len(v)) if abs(v[i, 2] - z) <= tol]
    for a, b in p.edges:
        za, zb = v[a, 2] - z, v[b, 2] - z
        if (za < -tol and zb > tol) or (za > tol and zb < -tol):
            s = za / (za - zb)
            found.append(v[a, :2] + s * (v[b, :2] - v[a, :2]))

    pts: list[np.ndarray] = []
    for q in found:
        if all(np.linalg.norm(q - r) > tol for r in pts):
            pts.append(q)
    if len(pts) < 3:
        raise NoSectionError(f"plane z={z} does not cut the interior")
    arr = np.array(pts)
    c = arr.mean(axis=0)
    order = np.argsort(np.arctan2(arr[:, 1] - c[1], arr[:, 0] - c[0]), kind="stable")
    poly = Polygon2(arr[order])
    if poly.area <= tol:
        raise NoSectionError(f"plane z={z} meets p in a degenerate set")
    return poly


# --- minimal triangle about the unit square -------------------------------

UNIT_SQUARE = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])


@dataclass(frozen=True)
class TriangleSearch:
    area: float
    triangle: Polygon2
    normal_angles: tuple[float, float, float]
    min_candidate_area: float
    evaluations: int


def _triangle_areas(theta: np.ndarray, corners: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Areas and vertices of triangles bounded by supporting lines of ``corners``.

    ``theta`` has shape ``(k, 3)``: outward normal angles of the three sides.
    Unbounded configurations (some gap >= pi) get area ``inf``.
    """
    u = np.stack([np.cos(theta), np.sin(theta)], axis=-1)  # (k, 3, 2)
    h = np.max(u @ corners.T, axis=-1)  # (k, 3)
    verts = np.empty(theta.shape + (2,))
    for k, (i, j) in enumerate([(0, 1), (1, 2), (2, 0)]):
        det = u[:, i, 0] * u[:, j, 1] - u[:, i, 1] * u[:, j, 0]
        with np.errstate(divide="ignore", invalid="ignore"):
            verts[:, k, 0] = (h[:, i] * u[:, j, 1] - h[:, j] * u[:, i, 1]) / det
            verts[:, k, 1] = (u[:, i, 0] * h[:, j] - u[:, j, 0] * h[:, i]) / det
    x, y = verts[..., 0], verts[..., 1]
    area = 0.5 * np.sum(x * np.roll(y, -1, axis=1) - np.roll(x, -1, axis=1) * y, axis=1)

    srt = np.sort(np.mod(theta, 2 * np.pi), axis=1)
    gaps = np.diff(np.concatenate([srt, srt[:, :1] + 2 * np.pi], axis=1), axis=1)
    bounded = np.all(gaps < np.pi - 1e-12, axis=1) & np.isfinite(area)
    return np.where(bounded, np.abs(area), np.inf), verts


def _grid_areas(idx: np.ndarray, cos: np.ndarray, sin: np.ndarray, h: np.ndarray) -> np.ndarray:
    """Triangle areas for normal-angle index triples into precomputed tables."""
    c, s, d = cos[idx], sin[idx], h[idx]
    xs, ys = [], []
    for i, j in ((0, 1), (1, 2), (2, 0)):
        det = c[:, i] * s[:, j] - s[:, i] * c[:, j]
        xs.append((d[:, i] * s[:, j] - d[:, j] * s[:, i]) / det)
        ys.append((c[:, i] * d[:, j] - c[:, j] * d[:, i]) / det)
    return 0.5 * np.abs((xs[1] - xs[0]) * (ys[2] - ys[0]) - (xs[2] - xs[0]) * (ys[1] - ys[0]))


def _golden_section(f: Callable[[float], float], a: float, b: float, tol: float = 1e-10) -> tuple[float, float]:
    invphi = (math.sqrt(5) - 1) / 2
    c, d = b - invphi * (b - a), a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    x = (a + b) / 2
    return x, f(x)


def minimal_triangle_about_square(
    right_isoceles: bool = False,
    step_deg: float = 1.0,
    sweeps: int = 4,
    corners: np.ndarray = UNIT_SQUARE,
) -> TriangleSearch:
    """Brute-force the least-area triangle containing a unit square.

    A minimal triangle has each side on a supporting line of the square,
    so a candidate is fixed by three outward normal angles.  The angles
    are swept on a ``step_deg`` grid (the first angle only over a quarter
    turn, by the square's symmetry), then the best candidates are polished
    by cyclic golden-section line searches within one grid step.

    With ``right_isoceles`` the candidates are restricted to normals
    ``(a, a + 90°, a + 225°)``.
    """
    corners = np.asarray(corners, dtype=float)
    n = int(round(360 / step_deg))
    rad = np.deg2rad(step_deg)
    evaluations = 0

    calls = 0

    def area_of(theta: np.ndarray) -> float:
        nonlocal calls
        calls += 1
        return float(_triangle_areas(theta[None, :], corners)[0][0])

    if right_isoceles:
        base = np.arange(int(round(90 / step_deg))) * rad
        theta = np.stack([base, base + np.pi / 2, base + 5 * np.pi / 4], axis=1)
        areas, _ = _triangle_areas(theta, corners)
        evaluations += len(theta)
        min_seen = float(areas.min())
        a0 = float(base[int(np.argmin(areas))])
        shape = np.array([0.0, np.pi / 2, 5 * np.pi / 4])
        a_best, val = _golden_section(lambda a: area_of(a + shape), a0 - rad, a0 + rad)
        min_seen = min(min_seen, val)
        best_theta = a_best + shape
    else:
        # integer gaps (g1, g2, g3), each in [1, n/2), summing to n
        g1, g2 = np.meshgrid(np.arange(1, n), np.arange(1, n), indexing="ij")
        g3 = n - g1 - g2
        keep = (g3 >= 1) & (2 * g1 < n) & (2 * g2 < n) & (2 * g3 < n)
        g1, g2 = g1[keep], g2[keep]
        grid = np.arange(n) * rad
        cos, sin = np.cos(grid), np.sin(grid)
        h = np.max(np.stack([cos, sin], axis=1) @ corners.T, axis=1)
        min_seen = np.inf
        tops: list[tuple[float, np.ndarray]] = []
        for start in range(int(round(90 / step_deg))):
            idx = np.stack([np.full(g1.shape, start), start + g1, start + g1 + g2], axis=1)
            areas = _grid_areas(idx % n, cos, sin, h)
            evaluations += len(idx)
            k = int(np.argmin(areas))
            min_seen = min(min_seen, float(areas[k]))
            tops.append((float(areas[k]), idx[k] * rad))
        tops.sort(key=lambda item: (item[0], tuple(item[1])))

        best_theta, best_val = tops[0][1].copy(), tops[0][0]
        for start_val, start_theta in tops[:4]:
            th, val = start_theta.copy(), start_val
            for _ in range(sweeps):
                for i in range(3):
                    def along(a, i=i):
                        trial = th.copy()
                        trial[i] = a
                        return area_of(trial)
                    ai, vi = _golden_section(along, th[i] - rad, th[i] + rad)
                    min_seen = min(min_seen, vi)
                    if vi < val:
                        th[i], val = ai, vi
            if val < best_val:
                best_theta, best_val = th, val

    evaluations += calls
    areas, verts = _triangle_areas(best_theta[None, :], corners)
    tri = verts[0]
    if 0.5 * ((tri[1, 0] - tri[0, 0]) * (tri[2, 1] - tri[0, 1]) - (tri[2, 0] - tri[0, 0]) * (tri[1, 1] - tri[0, 1])) < 0:
        tri = tri[::-1]
    area = float(areas[0])
    return TriangleSearch(
        area=area,
        triangle=Polygon2(tri),
        normal_angles=tuple(float(t) for t in best_theta),
        min_candidate_area=min(min_seen, area),
        evaluations=evaluations,
    )


def min_triangle_about_unit_square() -> float:
    """Least area of a triangle containing the unit square, found by search."""
    return minimal_triangle_about_square().area

