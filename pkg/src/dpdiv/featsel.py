"""Greedy forward feature selection driven by cross-match error criteria.

The per-subset criterion is the pooled-MST cross-edge ratio between the two
source classes (an upper-bound surrogate for classification error); with
shift_weight > 0 it adds a penalty for source/target distribution shift, so
domain-invariant features win even when they separate the classes less.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .divergence import fr_statistic


@dataclass(frozen=True)
class SelectionTrace:
    """Result of a greedy selection run.

    selected: chosen feature indices, in selection order.
    criterion_values: the winning criterion value at each step.
    per_step_candidates: when auditing, one {feature: value} map per step.
    shift_weight: the shift penalty weight the run used.
    """

    selected: tuple[int, ...]
    criterion_values: tuple[float, ...]
    per_step_candidates: tuple[dict, ...] | None
    shift_weight: float

    def __post_init__(self):
        if len(set(self.selected)) != len(self.selected):
            raise ValueError(f"selected features contain duplicates: {self.selected}")
        if len(self.criterion_values) != len(self.selected):
            raise ValueError("criterion_values and selected must have equal length")


def _check_inputs(source0, source1, target, shift_weight):
    s0 = np.asarray(source0, dtype=np.float64)
    s1 = np.asarray(source1, dtype=np.float64)
    if s0.ndim != 2 or s1.ndim != 2 or s0.shape[1] != s1.shape[1]:
        raise ValueError("source matrices must be 2-D with a common number of columns")
    if shift_weight < 0.0:
        raise ValueError(f"shift_weight must be >= 0, got {shift_weight}")
    tgt = None
    if shift_weight > 0.0:
        if target is None:
            raise ValueError("shift_weight > 0 requires a target sample")
        tgt = np.asarray(target, dtype=np.float64)
        if tgt.ndim != 2 or tgt.shape[1] != s0.shape[1]:
            raise ValueError("target must be 2-D with the same number of columns")
    elif target is not None:
        tgt = np.asarray(target, dtype=np.float64)
    return s0, s1, tgt


def criterion_phi(source0, source1, target, features, shift_weight=0.0) -> float:
    """Criterion for one feature subset: cross-edge ratio plus shift penalty.

    Value = C(source0[F], source1[F]) / (n0 + n1); with shift_weight > 0 it
    adds shift_weight * 2 * sqrt(max(0, 1 - 2 C(src[F], tgt[F]) / (ns + nt)))
    computed between the merged source and the target. Lower is better.
    """
    s0, s1, tgt = _check_inputs(source0, source1, target, shift_weight)
    idx = [int(f) for f in features]
    if not idx:
        raise ValueError("feature set must be non-empty")
    value = fr_statistic(s0[:, idx], s1[:, idx]) / (s0.shape[0] + s1.shape[0])
    if shift_weight > 0.0:
        merged = np.vstack([s0[:, idx], s1[:, idx]])
        c = fr_statistic(merged, tgt[:, idx])
        arg = 1.0 - 2.0 * c / (merged.shape[0] + tgt.shape[0])
        value += shift_weight * 2.0 * math.sqrt(min(1.0, max(0.0, arg)))
    return value


def forward_select(source0, source1, target=None, k=None, shift_weight=0.0,
                   audit=False, standardize=False) -> SelectionTrace:
    """Greedily pick k features, each step adding the candidate with minimal criterion.

    Ties break toward the smallest feature index (the cross counts are
    integers, so exact ties are common at small n). standardize z-scores the
    source columns (pooled) and target columns (separately) first; this is
    the domain-normalization pre-pass and is off by default.

    Rescaling every column by one positive constant never changes the
    selection (cross counts are scale-invariant); per-feature rescaling can.
    """
    s0, s1, tgt = _check_inputs(source0, source1, target, shift_weight)
    d = s0.shape[1]
    if s0.shape[0] < 2 or s1.shape[0] < 2:
        raise ValueError("each source class needs at least 2 points")
    if k is None:
        k = min(20, d)
    if not (1 <= k <= d):
        raise ValueError(f"k must lie in [1, {d}], got {k}")
    if standardize:
        pooled = np.vstack([s0, s1])
        mu, sd = pooled.mean(axis=0), pooled.std(axis=0)
        sd = np.where(sd > 0, sd, 1.0)
        s0 = (s0 - mu) / sd
        s1 = (s1 - mu) / sd
        if tgt is not None:
            tmu, tsd = tgt.mean(axis=0), tgt.std(axis=0)
            tsd = np.where(tsd > 0, tsd, 1.0)
            tgt = (tgt - tmu) / tsd

    selected: list[int] = []
    values: list[float] = []
    audits: list[dict] = []
    remaining = list(range(d))
    for _ in range(k):
        step_scores = {}
        for f in remaining:
            step_scores[f] = criterion_phi(s0, s1, tgt, selected + [f], shift_weight)
        best = min(remaining, key=lambda f: (step_scores[f], f))
        selected.append(best)
        values.append(step_scores[best])
        remaining.remove(best)
        if audit:
            audits.append(dict(sorted(step_scores.items())))
    return SelectionTrace(
        selected=tuple(selected),
        criterion_values=tuple(values),
        per_step_candidates=tuple(audits) if audit else None,
        shift_weight=float(shift_weight),
    )
