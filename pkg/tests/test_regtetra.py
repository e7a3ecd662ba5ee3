import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tetrahull.geom import InvalidInputError, Rotation, hull_polyhedron, polyhedron_volume
from tetrahull.optimizer import lp_oracle_min_edge
from tetrahull.platonic import SolidKind
from tetrahull.regtetra import (
    REFERENCE_NORMALS,
    RegularTetra,
    min_edge_for_orientation,
    min_edges,
    tetra_volume,
)

rotvecs = st.tuples(*[st.floats(-math.pi, math.pi) for _ in range(3)])


def random_cloud(rng, n, radius=1.0):
    d = rng.normal(size=(n, 3))
    d /= np.linalg.norm(d, axis=1, keepdims=True)
    return radius * d * rng.random((n, 1)) ** (1 / 3) + rng.normal(size=3)


def random_rotation(rng):
    return Rotation.from_quaternion(rng.normal(size=4))


class TestPose:
    @given(rotvecs, st.floats(0.1, 10))
    def test_normals(self, w, edge):
        t = RegularTetra(np.zeros(3), Rotation.from_rotvec(w), edge)
        n = t.normals
        assert np.allclose(n.sum(axis=0), 0, atol=1e-12)
        g = n @ n.T
        assert np.allclose(g[~np.eye(4, dtype=bool)], -1 / 3, atol=1e-12)
        assert t.inradius == pytest.approx(edge * math.sqrt(6) / 12)

    @given(rotvecs, st.floats(0.1, 10))
    def test_vertices(self, w, edge):
        t = RegularTetra(np.array([1.0, -2.0, 0.5]), Rotation.from_rotvec(w), edge)
        v = t.vertices()
        assert np.linalg.norm(v - t.centroid, axis=1) == pytest.approx([edge * math.sqrt(6) / 4] * 4)
        d = np.linalg.norm(v[:, None] - v[None], axis=2)[np.triu_indices(4, 1)]
        assert np.allclose(d, edge, rtol=0, atol=1e-12 * max(1, edge))

    def test_edge3_volume(self):
        p = RegularTetra.canonical(3.0).as_polyhedron()
        p.validate()
        assert polyhedron_volume(p) == pytest.approx(9 * math.sqrt(2) / 4)
        assert polyhedron_volume(hull_polyhedron(p.vertices)) == pytest.approx(3.182, abs=5e-4)

    def test_edge2_volume(self):
        assert polyhedron_volume(RegularTetra.canonical(2.0).as_polyhedron()) == pytest.approx(0.94281, abs=5e-6)

    def test_edge1_distances(self):
        v = RegularTetra.canonical(1.0).vertices()
        d = np.linalg.norm(v[:, None] - v[None], axis=2)[np.triu_indices(4, 1)]
        assert d == pytest.approx([1.0] * 6, abs=1e-12)

    def test_rejects_bad_edge(self):
        with pytest.raises(InvalidInputError):
            RegularTetra.canonical(0.0)

    def test_standing(self):
        v = RegularTetra.standing(3.0).vertices()
        assert np.sort(v[:, 2])[:3] == pytest.approx([0, 0, 0], abs=1e-12)
        assert v[:, 2].max() == pytest.approx(math.sqrt(6))


class TestContains:
    @given(rotvecs, st.floats(0.1, 10))
    def test_own_vertices(self, w, edge):
        t = RegularTetra(np.array([0.3, 0.2, 0.1]), Rotation.from_rotvec(w), edge)
        assert t.contains(t.vertices(), 1e-9)

    def test_octahedron_at_midpoints(self, solids):
        assert RegularTetra.canonical(2.0).contains(solids[SolidKind.OCTAHEDRON].vertices, 1e-9)

    def test_outside(self):
        t = RegularTetra.canonical(1.0)
        assert not t.contains(2 * t.vertices()[:1], 1e-9)


class TestTetraVolume:
    def test_values(self):
        assert tetra_volume(3) == pytest.approx(3.18198, abs=5e-6)
        assert tetra_volume(3.37945) == pytest.approx(4.5487, abs=1e-3)
        assert tetra_volume(3.37945) == pytest.approx(4.5485, abs=1e-3)
        assert tetra_volume(1) == pytest.approx(math.sqrt(2) / 12)

    @pytest.mark.parametrize("edge", [0.0, -2.0])
    def test_rejects(self, edge):
        with pytest.raises(InvalidInputError):
            tetra_volume(edge)


class TestOrientedFit:
    def test_self_fit(self):
        fit = min_edge_for_orientation(RegularTetra.canonical(1.0).vertices(), Rotation.identity())
        assert fit.edge == pytest.approx(1.0, abs=1e-12)
        assert np.allclose(fit.centroid, 0, atol=1e-12)

    def test_octahedron_face_flush(self, solids):
        fit = min_edge_for_orientation(solids[SolidKind.OCTAHEDRON].vertices, Rotation.identity())
        assert fit.edge == pytest.approx(2.0, abs=1e-12)

    def test_random_cloud_against_oracle(self, rng):
        pts = random_cloud(rng, 20)
        r = random_rotation(rng)
        assert min_edge_for_orientation(pts, r).edge == pytest.approx(lp_oracle_min_edge(pts, r), abs=1e-7)

    def test_empty(self):
        with pytest.raises(InvalidInputError):
            min_edge_for_orientation(np.empty((0, 3)))

    def test_single_point(self):
        fit = min_edge_for_orientation([[1.0, 2.0, 3.0]], Rotation.from_rotvec((0.1, 0.2, 0.3)))
        assert fit.edge == pytest.approx(0.0, abs=1e-12)
        assert np.allclose(fit.centroid, [1, 2, 3])
        assert min_edge_for_orientation([[1.0, 2.0, 3.0], [1.0, 2.0, 3.5]]).edge > 0

    def test_monotone(self, rng):
        for _ in range(100):
            pts = random_cloud(rng, rng.integers(1, 15))
            extra = rng.normal(size=(1, 3)) * 2
            r = random_rotation(rng)
            base = min_edge_for_orientation(pts, r).edge
            assert min_edge_for_orientation(np.vstack([pts, extra]), r).edge >= base - 1e-12

    @settings(max_examples=50)
    @given(rotvecs, st.integers(0, 2**32 - 1))
    def test_rotation_equivariance(self, w, seed):
        pts = random_cloud(np.random.default_rng(seed), 12)
        r = Rotation.from_rotvec(w)
        a = min_edge_for_orientation(r.apply(pts), Rotation.identity()).edge
        b = min_edge_for_orientation(pts, r.inv()).edge
        assert a == pytest.approx(b, abs=1e-10)

    def test_equal_gaps_and_containment(self, rng):
        for _ in range(100):
            pts = random_cloud(rng, rng.integers(2, 30), radius=3.0)
            fit = min_edge_for_orientation(pts, random_rotation(rng))
            gaps = fit.gaps(pts)
            assert np.ptp(gaps) <= 1e-9
            assert np.abs(gaps).max() <= 1e-9
            assert fit.tetra().contains(pts, 1e-9)

    def test_degenerate_sets_allowed(self):
        line = np.outer(np.linspace(0, 1, 5), [1.0, 2.0, 0.5])
        plane = np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0]], dtype=float)
        for pts in (line, plane):
            fit = min_edge_for_orientation(pts, Rotation.from_rotvec((0.2, 0.4, 0.1)))
            assert fit.edge > 0
            assert fit.tetra().contains(pts, 1e-9)

    def test_batched_matches_single(self, rng):
        pts = random_cloud(rng, 17)
        rots = [random_rotation(rng) for _ in range(20)]
        batched = min_edges(pts, np.stack([r.matrix for r in rots]))
        single = [min_edge_for_orientation(pts, r).edge for r in rots]
        assert batched == pytest.approx(single, rel=1e-14, abs=1e-14)

    def test_reference_normals(self):
        assert np.allclose(np.linalg.norm(REFERENCE_NORMALS, axis=1), 1)
