import numpy as np
import pytest

from bruteforce import kruskal_mst, kruskal_total_length
from dpdiv.emst import add_jitter, build_mst, mst_total_length


def edge_pairs(mst):
    return list(zip(mst.i.tolist(), mst.j.tolist()))


class TestSmallCases:
    def test_three_collinear_points(self):
        mst = build_mst(np.array([[0.0], [1.0], [3.0]]))
        assert mst.edges == [(0, 1, 1.0), (1, 2, 2.0)]
        assert mst_total_length(mst) == 3.0

    def test_single_edge(self):
        mst = build_mst(np.array([[0.0], [5.0]]))
        assert mst.edges == [(0, 1, 5.0)]
        assert mst_total_length(mst) == 5.0

    def test_unit_square_tie_rule(self):
        # all four sides tie at length 1; the canonical-pair rule picks
        # (0,1), then (0,3), then keeps (1,2) over the tied (2,3)
        corners = np.array([[0.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, 0.0]])
        mst = build_mst(corners)
        assert edge_pairs(mst) == [(0, 1), (0, 3), (1, 2)]
        np.testing.assert_allclose(mst.length, 1.0)

    def test_duplicate_points(self):
        mst = build_mst(np.array([[1.0, 2.0], [1.0, 2.0], [4.0, 6.0]]))
        assert mst.length[0] == 0.0
        assert len(mst.edges) == 2

    def test_errors(self):
        with pytest.raises(ValueError, match="at least 2"):
            build_mst(np.array([[0.0]]))
        with pytest.raises(ValueError, match="non-finite"):
            build_mst(np.array([[0.0], [np.inf]]))
        with pytest.raises(ValueError, match="2-D"):
            build_mst(np.zeros(4))


class TestAgainstBruteForce:
    def test_random_instance_64_points_d5(self):
        rng = np.random.default_rng(64)
        pts = rng.normal(size=(64, 5))
        mst = build_mst(pts)
        reference = kruskal_mst(pts)
        assert [(i, j) for i, j, _ in mst.edges] == [(i, j) for i, j, _ in reference]
        total = mst_total_length(mst)
        assert abs(total - kruskal_total_length(pts)) <= 1e-9 * total

    def test_exact_edge_sets_on_distinct_distances(self):
        rng = np.random.default_rng(17)
        for _ in range(25):
            n = int(rng.integers(2, 60))
            d = int(rng.integers(1, 7))
            pts = rng.normal(size=(n, d))
            mst = build_mst(pts)
            assert edge_pairs(mst) == [(i, j) for i, j, _ in kruskal_mst(pts)]


class TestStructuralProperties:
    def test_spanning_and_acyclic(self):
        rng = np.random.default_rng(3)
        pts = rng.normal(size=(120, 3))
        mst = build_mst(pts)
        parent = list(range(120))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i, j, _ in mst.edges:
            ri, rj = find(i), find(j)
            assert ri != rj, "cycle detected"
            parent[ri] = rj
        assert len({find(v) for v in range(120)}) == 1

    def test_canonical_orientation_and_order(self):
        rng = np.random.default_rng(4)
        mst = build_mst(rng.normal(size=(50, 2)))
        assert np.all(mst.i < mst.j)
        pairs = edge_pairs(mst)
        assert pairs == sorted(pairs)

    def test_permutation_equivariance(self):
        rng = np.random.default_rng(5)
        pts = rng.normal(size=(80, 4))
        perm = rng.permutation(80)
        total = mst_total_length(build_mst(pts))
        total_perm = mst_total_length(build_mst(pts[perm]))
        assert abs(total - total_perm) <= 1e-9 * total

    def test_translation_rotation_invariance(self):
        rng = np.random.default_rng(6)
        pts = rng.normal(size=(70, 3))
        rot = np.linalg.qr(rng.normal(size=(3, 3)))[0]
        moved = pts @ rot.T + np.array([5.0, -3.0, 11.0])
        t0 = mst_total_length(build_mst(pts))
        t1 = mst_total_length(build_mst(moved))
        assert abs(t0 - t1) <= 1e-9 * t0

    def test_deterministic_rebuild(self):
        rng = np.random.default_rng(7)
        pts = rng.normal(size=(40, 2))
        a, b = build_mst(pts), build_mst(pts)
        np.testing.assert_array_equal(a.i, b.i)
        np.testing.assert_array_equal(a.j, b.j)
        np.testing.assert_array_equal(a.length, b.length)


class TestJitter:
    def test_seeded_and_small(self):
        pts = np.array([[0.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, 0.0]])
        j1 = add_jitter(pts, seed=9)
        j2 = add_jitter(pts, seed=9)
        np.testing.assert_array_equal(j1, j2)
        assert np.max(np.abs(j1 - pts)) <= 1e-9
        assert not np.array_equal(add_jitter(pts, seed=10), j1)

    def test_breaks_ties(self):
        pts = np.array([[0.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, 0.0]])
        jittered = add_jitter(pts, seed=2)
        d2 = []
        for a in range(4):
            for b in range(a + 1, 4):
                d2.append(((jittered[a] - jittered[b]) ** 2).sum())
        assert len(set(d2)) == len(d2)
