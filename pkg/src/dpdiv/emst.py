"""Exact Euclidean minimum spanning trees over dense point sets.

Dense Prim construction: O(n^2) time, O(n) memory, comparisons on squared
distances (square roots only when edge lengths are reported). Exactness
matters because downstream statistics count specific edges; approximate or
k-NN-graph trees can silently drop a true edge and bias those counts.

Tie rule: whenever two candidate edges have equal squared length, the one
with the smaller canonical (i, j) pair (i < j, lexicographic) wins. Real
data can contain exact ties, so determinism has to be imposed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import derive_rng


@dataclass(frozen=True)
class MstResult:
    """Spanning tree edge list: arrays i, j (i < j), edge lengths, point count."""

    i: np.ndarray
    j: np.ndarray
    length: np.ndarray
    n_points: int

    def __post_init__(self):
        i = np.asarray(self.i, dtype=np.int64)
        j = np.asarray(self.j, dtype=np.int64)
        length = np.asarray(self.length, dtype=np.float64)
        if not (i.shape == j.shape == length.shape == (self.n_points - 1,)):
            raise ValueError(
                f"expected {self.n_points - 1} edges, got shapes "
                f"{i.shape}, {j.shape}, {length.shape}"
            )
        for a in (i, j, length):
            a.flags.writeable = False
        object.__setattr__(self, "i", i)
        object.__setattr__(self, "j", j)
        object.__setattr__(self, "length", length)

    @property
    def edges(self) -> list[tuple[int, int, float]]:
        return [
            (int(a), int(b), float(l))
            for a, b, l in zip(self.i, self.j, self.length)
        ]


def build_mst(points) -> MstResult:
    """Exact Euclidean MST of an (n, d) point matrix, n >= 2.

    Output edges are canonically oriented (i < j) and sorted by (i, j).
    Duplicate points are allowed; the tie rule resolves their zero-length
    edges deterministically.
    """
    pts = np.ascontiguousarray(points, dtype=np.float64)
    if pts.ndim != 2:
        raise ValueError(f"points must be a 2-D matrix, got shape {pts.shape}")
    n = pts.shape[0]
    if n < 2:
        raise ValueError(f"need at least 2 points, got {n}")
    if not np.all(np.isfinite(pts)):
        bad = np.argwhere(~np.isfinite(pts))[0]
        raise ValueError(f"non-finite coordinate at row {bad[0]}, column {bad[1]}")

    idx = np.arange(n)
    in_tree = np.zeros(n, dtype=bool)
    in_tree[0] = True
    dist2 = ((pts - pts[0]) ** 2).sum(axis=1)
    dist2[0] = np.inf
    parent = np.zeros(n, dtype=np.int64)

    out_i = np.empty(n - 1, dtype=np.int64)
    out_j = np.empty(n - 1, dtype=np.int64)
    out_d2 = np.empty(n - 1, dtype=np.float64)
    for step in range(n - 1):
        active = ~in_tree
        best = dist2[active].min()
        cand = idx[active & (dist2 == best)]
        if cand.size > 1:
            a = np.minimum(parent[cand], cand)
            b = np.maximum(parent[cand], cand)
            v = int(cand[np.lexsort((b, a))[0]])
        else:
            v = int(cand[0])
        u = int(parent[v])
        out_i[step], out_j[step] = (u, v) if u < v else (v, u)
        out_d2[step] = dist2[v]

        in_tree[v] = True
        dist2[v] = np.inf
        nd2 = ((pts - pts[v]) ** 2).sum(axis=1)
        act = ~in_tree
        better = act & (nd2 < dist2)
        parent[better] = v
        dist2[better] = nd2[better]
        tied = act & (nd2 == dist2) & ~better
        if tied.any():
            t = idx[tied]
            a_new = np.minimum(v, t)
            b_new = np.maximum(v, t)
            a_old = np.minimum(parent[t], t)
            b_old = np.maximum(parent[t], t)
            switch = (a_new < a_old) | ((a_new == a_old) & (b_new < b_old))
            parent[t[switch]] = v

    order = np.lexsort((out_j, out_i))
    return MstResult(
        i=out_i[order], j=out_j[order], length=np.sqrt(out_d2[order]), n_points=n
    )


def mst_total_length(mst: MstResult) -> float:
    """Sum of edge lengths."""
    return float(mst.length.sum())


def add_jitter(points, seed, magnitude=1e-9) -> np.ndarray:
    """Perturb coordinates by uniform noise of `magnitude` times the coordinate scale.

    Breaks exact inter-point distance ties so the spanning tree is unique,
    at the cost of no longer being a function of the input points alone.
    """
    pts = np.asarray(points, dtype=np.float64)
    span = float(pts.max() - pts.min()) if pts.size else 0.0
    scale = span if span > 0 else 1.0
    rng = derive_rng(seed)
    return pts + rng.uniform(-1.0, 1.0, size=pts.shape) * (magnitude * scale)
