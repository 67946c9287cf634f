"""Labeled two-class samples: CSV ingestion, projection, and seeded Gaussian synthesis.

All container types are immutable after construction (their arrays are marked
read-only), so they are safe to share across threads. Randomness always flows
through :func:`derive_rng`, which hashes a master seed together with integer
sub-keys; trials seeded this way are independent and order-insensitive.
"""

from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass

import numpy as np


class DatasetError(ValueError):
    """Malformed input data: bad CSV cells, labels, shapes, or model parameters."""


def derive_rng(*key: int) -> np.random.Generator:
    """Return a generator keyed by a tuple of non-negative integers.

    Equal keys yield bit-identical streams across calls and across process
    restarts; distinct keys yield independent streams.
    """
    flat = []
    for k in key:
        k = int(k)
        if k < 0:
            raise DatasetError(f"seed components must be non-negative, got {k}")
        flat.append(k)
    return np.random.default_rng(np.random.SeedSequence(flat))


def _as_seed_key(seed) -> tuple[int, ...]:
    if isinstance(seed, (tuple, list)):
        return tuple(int(s) for s in seed)
    return (int(seed),)


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class LabeledSample:
    """An (n, d) feature matrix with binary labels.

    points: real coordinates, one row per observation, all finite.
    labels: length-n vector with values in {0, 1}.
    feature_names: optional d unique column names (from the CSV header).
    """

    points: np.ndarray
    labels: np.ndarray
    feature_names: tuple[str, ...] | None = None

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.ndim != 2 or pts.shape[0] < 1 or pts.shape[1] < 1:
            raise DatasetError(f"points must be a non-empty 2-D matrix, got shape {pts.shape}")
        if not np.all(np.isfinite(pts)):
            bad = np.argwhere(~np.isfinite(pts))[0]
            raise DatasetError(f"non-finite coordinate at row {bad[0]}, column {bad[1]}")
        labels = np.asarray(self.labels, dtype=np.int64)
        if labels.shape != (pts.shape[0],):
            raise DatasetError(f"labels shape {labels.shape} does not match {pts.shape[0]} rows")
        if not np.all((labels == 0) | (labels == 1)):
            bad = int(np.argwhere((labels != 0) & (labels != 1))[0][0])
            raise DatasetError(f"label at row {bad} is {labels[bad]}, expected 0 or 1")
        if self.feature_names is not None:
            names = tuple(str(s) for s in self.feature_names)
            if len(names) != pts.shape[1]:
                raise DatasetError(f"{len(names)} feature names for {pts.shape[1]} columns")
            if len(set(names)) != len(names):
                raise DatasetError("feature names must be unique")
            object.__setattr__(self, "feature_names", names)
        object.__setattr__(self, "points", _readonly(pts))
        object.__setattr__(self, "labels", _readonly(labels))

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.points.shape[1]

    def points_for_label(self, label: int) -> np.ndarray:
        return self.points[self.labels == label]


@dataclass(frozen=True)
class GaussianModel:
    """A two-class Gaussian mixture: per-class mean/covariance plus the class-0 prior."""

    mean0: np.ndarray
    mean1: np.ndarray
    cov0: np.ndarray
    cov1: np.ndarray
    prior_p: float = 0.5

    def __post_init__(self):
        m0 = np.asarray(self.mean0, dtype=np.float64).reshape(-1)
        m1 = np.asarray(self.mean1, dtype=np.float64).reshape(-1)
        if m0.shape != m1.shape or m0.size < 1:
            raise DatasetError(f"mean shapes differ: {m0.shape} vs {m1.shape}")
        d = m0.size
        covs = []
        for name, c in (("cov0", self.cov0), ("cov1", self.cov1)):
            c = np.asarray(c, dtype=np.float64)
            if c.shape != (d, d):
                raise DatasetError(f"{name} has shape {c.shape}, expected ({d}, {d})")
            scale = max(float(np.max(np.abs(c))), 1.0)
            if np.max(np.abs(c - c.T)) > 1e-12 * scale:
                raise DatasetError(f"{name} is not symmetric within 1e-12 relative tolerance")
            smallest = float(np.linalg.eigvalsh(c)[0])
            if smallest <= 0.0:
                raise DatasetError(
                    f"{name} is not positive definite: smallest eigenvalue {smallest:.6e}"
                )
            covs.append(c)
        if not (0.0 < float(self.prior_p) < 1.0):
            raise DatasetError(f"prior_p must lie strictly in (0, 1), got {self.prior_p}")
        object.__setattr__(self, "mean0", _readonly(m0))
        object.__setattr__(self, "mean1", _readonly(m1))
        object.__setattr__(self, "cov0", _readonly(covs[0]))
        object.__setattr__(self, "cov1", _readonly(covs[1]))
        object.__setattr__(self, "prior_p", float(self.prior_p))

    @property
    def d(self) -> int:
        return self.mean0.size


def diagonal_gaussian_model(mean0, var0, mean1, var1, prior_p=0.5) -> GaussianModel:
    """Build a GaussianModel from per-coordinate means and variances."""
    return GaussianModel(
        mean0=np.asarray(mean0, dtype=np.float64),
        mean1=np.asarray(mean1, dtype=np.float64),
        cov0=np.diag(np.asarray(var0, dtype=np.float64)),
        cov1=np.diag(np.asarray(var1, dtype=np.float64)),
        prior_p=prior_p,
    )


def sample_gaussian(model: GaussianModel, n0: int, n1: int, seed) -> LabeledSample:
    """Draw n0 class-0 rows followed by n1 class-1 rows from the model.

    Sampling multiplies standard-normal draws by the Cholesky factor of each
    covariance. The two classes use independent sub-streams of `seed`, so
    identical (model, n0, n1, seed) inputs give bit-identical output.
    """
    if n0 < 1 or n1 < 1:
        raise DatasetError(f"need at least one point per class, got n0={n0}, n1={n1}")
    key = _as_seed_key(seed)
    blocks = []
    for cls, (mean, cov, n) in enumerate(
        ((model.mean0, model.cov0, n0), (model.mean1, model.cov1, n1))
    ):
        try:
            chol = np.linalg.cholesky(cov)
        except np.linalg.LinAlgError:
            smallest = float(np.linalg.eigvalsh(cov)[0])
            raise DatasetError(
                f"covariance of class {cls} is not positive definite "
                f"(smallest eigenvalue {smallest:.6e})"
            ) from None
        rng = derive_rng(*key, cls)
        blocks.append(rng.standard_normal((n, model.d)) @ chol.T + mean)
    labels = np.concatenate([np.zeros(n0, dtype=np.int64), np.ones(n1, dtype=np.int64)])
    return LabeledSample(points=np.vstack(blocks), labels=labels)


def project(sample: LabeledSample, features) -> LabeledSample:
    """Restrict a sample to the given feature columns, in the given order."""
    idx = [int(f) for f in features]
    if len(idx) == 0:
        raise DatasetError("feature index set must be non-empty")
    if len(set(idx)) != len(idx):
        raise DatasetError(f"feature indices must be distinct, got {idx}")
    for f in idx:
        if not (0 <= f < sample.d):
            raise DatasetError(f"feature index {f} out of range for d={sample.d}")
    names = None
    if sample.feature_names is not None:
        names = tuple(sample.feature_names[f] for f in idx)
    return LabeledSample(points=sample.points[:, idx], labels=sample.labels, feature_names=names)


# CSV format: UTF-8, header line, comma separator, '.' decimal point.
# Serialization writes 17 significant digits so values round-trip exactly.

def load_csv(path, label_column="label") -> LabeledSample:
    """Load a labeled sample from CSV. `label_column` is a header name or index."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise DatasetError(f"{path}: empty file")
    header = [h.strip() for h in rows[0]]
    if isinstance(label_column, int) or (
        isinstance(label_column, str) and label_column.lstrip("-").isdigit()
    ):
        label_idx = int(label_column)
        if not (0 <= label_idx < len(header)):
            raise DatasetError(f"{path}: label column index {label_idx} out of range")
    else:
        if label_column not in header:
            raise DatasetError(f"{path}: no column named {label_column!r} in header {header}")
        label_idx = header.index(label_column)
    feature_names = tuple(h for i, h in enumerate(header) if i != label_idx)
    if not feature_names:
        raise DatasetError(f"{path}: no feature columns besides the label")

    points, labels = [], []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise DatasetError(
                f"{path}:{lineno}: ragged row with {len(row)} cells, expected {len(header)}"
            )
        feat = []
        for i, cell in enumerate(row):
            try:
                value = float(cell)
            except ValueError:
                raise DatasetError(
                    f"{path}:{lineno}: non-numeric cell {cell!r} in column {header[i]!r}"
                ) from None
            if i == label_idx:
                if value not in (0.0, 1.0):
                    raise DatasetError(f"{path}:{lineno}: label {cell!r} is not 0 or 1")
                labels.append(int(value))
            else:
                feat.append(value)
        points.append(feat)
    if not points:
        raise DatasetError(f"{path}: no data rows")
    pts = np.asarray(points, dtype=np.float64)
    n_unique = np.unique(pts, axis=0).shape[0]
    if n_unique < pts.shape[0]:
        # Duplicates are permitted, but they create zero-length tie edges in
        # downstream spanning trees; the tie rule keeps results deterministic.
        warnings.warn(
            f"{path}: {pts.shape[0] - n_unique} duplicate feature rows detected",
            stacklevel=2,
        )
    return LabeledSample(points=pts, labels=np.asarray(labels), feature_names=feature_names)


def load_points_csv(path, drop_column=None) -> np.ndarray:
    """Load an unlabeled point matrix from CSV, optionally dropping one named column."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise DatasetError(f"{path}: empty file")
    header = [h.strip() for h in rows[0]]
    keep = [i for i, h in enumerate(header) if h != drop_column]
    if not keep:
        raise DatasetError(f"{path}: no feature columns left after dropping {drop_column!r}")
    points = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise DatasetError(
                f"{path}:{lineno}: ragged row with {len(row)} cells, expected {len(header)}"
            )
        try:
            points.append([float(row[i]) for i in keep])
        except ValueError:
            bad = next(i for i in keep if not _is_float(row[i]))
            raise DatasetError(
                f"{path}:{lineno}: non-numeric cell {row[bad]!r} in column {header[bad]!r}"
            ) from None
    if not points:
        raise DatasetError(f"{path}: no data rows")
    pts = np.asarray(points, dtype=np.float64)
    if not np.all(np.isfinite(pts)):
        raise DatasetError(f"{path}: non-finite value in data")
    return pts


def _is_float(cell: str) -> bool:
    try:
        float(cell)
        return True
    except ValueError:
        return False


def save_csv(sample: LabeledSample, path, label_column="label") -> None:
    """Write a labeled sample as CSV with 17-significant-digit coordinates."""
    names = sample.feature_names or tuple(f"x{i}" for i in range(sample.d))
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(",".join([*names, label_column]) + "\n")
        for row, label in zip(sample.points, sample.labels):
            cells = [format(v, ".17g") for v in row]
            cells.append(str(int(label)))
            fh.write(",".join(cells) + "\n")
