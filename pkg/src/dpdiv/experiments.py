"""Scripted studies: benchmark bound comparisons, the mean-separation sweep,
and estimator-consistency curves.

Monte Carlo trials derive per-trial seeds from the master seed, so runs are
reproducible, trial-order independent, and safe to parallelize externally.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import bounds, divergence, oracle
from .dataset import GaussianModel, diagonal_gaussian_model, sample_gaussian

# Classic 8-dimensional Gaussian benchmarks (Fukunaga's pair of data sets)
# with analytically known Bayes error. In the original tabulation the spread
# row lists per-coordinate eigenvalues, i.e. variances; that reading
# reproduces the published closed-form bounds (4.74% / 14.13% for D2) and
# the 1.90% true error. The published Monte-Carlo rows for D2, however, are
# reproduced only when sampling applies the same row as standard deviations
# (their per-size means then match within the quoted spreads; under the
# variance reading the estimator converges to 2.68%, above the entire
# published column). Both conventions are exposed: fukunaga_d2 is the
# analytically consistent benchmark, fukunaga_d2_as_sampled mirrors the
# generator behind the published Monte-Carlo column.

_D2_MEAN1 = (3.86, 3.10, 0.84, 0.84, 1.64, 1.08, 0.26, 0.01)
_D2_SPREAD = (8.41, 12.06, 0.12, 0.22, 1.49, 1.77, 0.35, 2.73)


def fukunaga_d1() -> GaussianModel:
    mean1 = np.zeros(8)
    mean1[0] = 2.56
    return diagonal_gaussian_model(np.zeros(8), np.ones(8), mean1, np.ones(8))


def fukunaga_d2() -> GaussianModel:
    """Spread row applied as variances: the analytically consistent benchmark."""
    return diagonal_gaussian_model(np.zeros(8), np.ones(8), _D2_MEAN1, _D2_SPREAD)


def fukunaga_d2_as_sampled() -> GaussianModel:
    """Spread row applied as standard deviations: the reference Monte-Carlo generator."""
    var1 = np.square(_D2_SPREAD)
    return diagonal_gaussian_model(np.zeros(8), np.ones(8), _D2_MEAN1, var1)


FUKUNAGA_DATASETS = {"D1": fukunaga_d1, "D2": fukunaga_d2}

# Sampling models behind the reference Monte-Carlo table (D1 is identical
# under either reading because all its spreads equal 1).
FUKUNAGA_SAMPLING_MODELS = {"D1": fukunaga_d1, "D2": fukunaga_d2_as_sampled}


@dataclass(frozen=True)
class McSummary:
    """Per-trial values with their mean and across-trial standard deviation."""

    mean: float
    std: float
    n_trials: int
    values: tuple[float, ...]

    @classmethod
    def from_values(cls, values) -> "McSummary":
        vals = tuple(float(v) for v in values)
        arr = np.asarray(vals)
        std = float(arr.std(ddof=1)) if len(vals) > 1 else 0.0
        return cls(mean=float(arr.mean()), std=std, n_trials=len(vals), values=vals)


@dataclass(frozen=True)
class SweepRow:
    """One mean-separation setting: true error, analytic bounds, empirical means."""

    separation: float
    ber_true: float
    dp_upper_analytic: float
    dp_lower_analytic: float
    dp_upper_empirical_mean: float
    dp_lower_empirical_mean: float
    bc_upper: float
    bc_lower: float
    n_per_class: int
    n_trials: int


@dataclass(frozen=True)
class SweepResult:
    separations: tuple[float, ...]
    rows: tuple[SweepRow, ...]


def _sweep_model_1d(separation: float) -> GaussianModel:
    return diagonal_gaussian_model([0.0], [1.0], [separation], [1.0])


def _sweep_model_2d(separation: float) -> GaussianModel:
    return diagonal_gaussian_model(
        [0.0, 0.0], [1.0, 1.0], [separation, 0.0], [1.0, 1.0]
    )


def run_sweep(n_steps: int, n_per_class: int, n_trials: int, seed,
              quad_nodes=None) -> SweepResult:
    """Sweep the mean separation of two spherical unit-variance bivariate
    Gaussians across [0, 5] and record true error, analytic bounds, and
    graph-estimated bounds averaged over independent trials.

    The analytic side evaluates the matching one-dimensional pair: with
    equal spherical covariances, every coordinate orthogonal to the mean
    difference contributes an identical factor to both densities, which
    cancels inside each integrand, so the integrals equal their 1-D values.
    """
    if n_steps < 2:
        raise ValueError(f"need at least 2 sweep steps, got {n_steps}")
    separations = np.linspace(0.0, 5.0, n_steps)
    rows = []
    for step, sep in enumerate(separations):
        pair = oracle.gaussian_pair(_sweep_model_1d(float(sep)), quad_nodes=quad_nodes)
        ber = oracle.bayes_error(pair)
        dpt = oracle.dp_tilde_integral(pair)
        analytic = bounds.ber_bounds_from_dp_tilde(dpt)
        bc = bounds.bc_bound_gaussian(_sweep_model_1d(float(sep)))

        model2 = _sweep_model_2d(float(sep))
        uppers, lowers = [], []
        for trial in range(n_trials):
            sample = sample_gaussian(model2, n_per_class, n_per_class, (seed, step, trial))
            est = divergence.estimate_from_labeled(sample)
            emp = bounds.ber_bounds_from_estimate(est)
            uppers.append(emp.upper)
            lowers.append(emp.lower)
        rows.append(SweepRow(
            separation=float(sep),
            ber_true=ber,
            dp_upper_analytic=analytic.upper,
            dp_lower_analytic=analytic.lower,
            dp_upper_empirical_mean=float(np.mean(uppers)),
            dp_lower_empirical_mean=float(np.mean(lowers)),
            bc_upper=bc.upper,
            bc_lower=bc.lower,
            n_per_class=n_per_class,
            n_trials=n_trials,
        ))
    return SweepResult(separations=tuple(float(s) for s in separations), rows=tuple(rows))


def run_fukunaga(dataset: str, n_per_class: int, n_trials: int, seed) -> McSummary:
    """Monte Carlo distribution of the divergence-based Bayes-error upper bound
    on one of the 8-D Gaussian benchmarks; each trial resamples both classes.

    Samples come from FUKUNAGA_SAMPLING_MODELS so the reference Monte-Carlo
    table is reproducible; for D2 that generator applies the spread row as
    standard deviations (see the module-level note). To bound the
    variance-reading benchmark instead, sample fukunaga_d2() directly.
    """
    try:
        model = FUKUNAGA_SAMPLING_MODELS[dataset]()
    except KeyError:
        raise ValueError(
            f"unknown dataset {dataset!r}, expected one of "
            f"{sorted(FUKUNAGA_SAMPLING_MODELS)}"
        ) from None
    values = []
    for trial in range(n_trials):
        sample = sample_gaussian(model, n_per_class, n_per_class, (seed, trial))
        est = divergence.estimate_from_labeled(sample)
        values.append(bounds.ber_bounds_from_estimate(est).upper)
    return McSummary.from_values(values)


def run_consistency(model: GaussianModel, sizes, n_trials: int, seed,
                    quad_nodes=None) -> list[McSummary]:
    """Absolute estimation error |dp_tilde - reference| per sample size.

    The reference is the integration oracle's divergence for the model, so
    the curves measure pure estimator error. sizes must be ascending.
    """
    sizes = [int(s) for s in sizes]
    if sizes != sorted(sizes):
        raise ValueError(f"sizes must be ascending, got {sizes}")
    reference = oracle.dp_tilde_integral(oracle.gaussian_pair(model, quad_nodes=quad_nodes))
    summaries = []
    for size_index, n in enumerate(sizes):
        errors = []
        for trial in range(n_trials):
            sample = sample_gaussian(model, n, n, (seed, size_index, trial))
            est = divergence.estimate_from_labeled(sample)
            errors.append(abs(est.dp_tilde - reference))
        summaries.append(McSummary.from_values(errors))
    return summaries
