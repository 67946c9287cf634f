"""Error-rate bounds: divergence-based Bayes-error brackets, Gaussian closed
forms (Bhattacharyya, Mahalanobis, Chernoff), and the domain-adaptation
target-error bound.

Bayes-error bounds are clamped into [0, 0.5]; the domain-adaptation total is
deliberately not clamped, because a vacuous bound (> 0.5) still carries
information and is flagged instead.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .dataset import GaussianModel
from .divergence import DivergenceEstimate

BER_SOURCES = ("dp_empirical", "dp_analytic", "bhattacharyya", "mahalanobis")


@dataclass(frozen=True)
class BerBounds:
    """A lower/upper bracket on the Bayes error rate, tagged with its source."""

    lower: float
    upper: float
    source: str

    def __post_init__(self):
        if self.source not in BER_SOURCES:
            raise ValueError(f"unknown source {self.source!r}, expected one of {BER_SOURCES}")
        if not (0.0 <= self.lower <= self.upper <= 0.5):
            raise ValueError(
                f"invalid bracket [{self.lower}, {self.upper}], need 0 <= lower <= upper <= 0.5"
            )


@dataclass(frozen=True)
class DaBoundReport:
    """Upper bound on target-domain error: source term + shift term + label drift.

    vacuous is set when the total exceeds 0.5 (a coin flip would beat it);
    the bound is still valid, just uninformative.
    """

    source_term: float
    shift_term: float
    label_drift_term: float
    total: float
    vacuous: bool


def ber_bounds_from_estimate(est: DivergenceEstimate, source="dp_empirical") -> BerBounds:
    """Bracket the Bayes error from a divergence estimate.

    lower = 1/2 - sqrt(dp_tilde)/2, upper = 1/2 - dp_tilde/2. Both collapse
    to 0.5 for indistinguishable samples and to 0 for separable ones.
    """
    d = est.dp_tilde
    if not (0.0 <= d <= 1.0):
        raise ValueError(f"dp_tilde must lie in [0, 1], got {d}")
    lower = 0.5 - 0.5 * math.sqrt(d)
    upper = 0.5 - 0.5 * d
    return BerBounds(lower=max(0.0, lower), upper=min(0.5, upper), source=source)


def ber_bounds_from_dp_tilde(dp_tilde: float, source="dp_analytic") -> BerBounds:
    """Same bracket, from a scalar divergence value (e.g. a quadrature reference)."""
    if not (0.0 <= dp_tilde <= 1.0):
        raise ValueError(f"dp_tilde must lie in [0, 1], got {dp_tilde}")
    return BerBounds(
        lower=max(0.0, 0.5 - 0.5 * math.sqrt(dp_tilde)),
        upper=min(0.5, 0.5 - 0.5 * dp_tilde),
        source=source,
    )


def _solve_spd(mat: np.ndarray, vec: np.ndarray, what: str) -> np.ndarray:
    try:
        chol = np.linalg.cholesky(mat)
    except np.linalg.LinAlgError:
        raise ValueError(f"{what} is singular or not positive definite") from None
    return np.linalg.solve(chol.T, np.linalg.solve(chol, vec))


def _logdet_spd(mat: np.ndarray, what: str) -> float:
    try:
        chol = np.linalg.cholesky(mat)
    except np.linalg.LinAlgError:
        raise ValueError(f"{what} is singular or not positive definite") from None
    return 2.0 * float(np.log(np.diag(chol)).sum())


def bhattacharyya_distance_gaussian(model: GaussianModel) -> float:
    """Closed-form Bhattacharyya distance between the two Gaussian classes.

    Uses the averaged covariance: (1/8) dm' avg^-1 dm
    + (1/2) log(det(avg) / sqrt(det(cov0) det(cov1))).
    """
    avg = (model.cov0 + model.cov1) / 2.0
    dm = model.mean1 - model.mean0
    quad = float(dm @ _solve_spd(avg, dm, "average covariance")) / 8.0
    logdet = 0.5 * (
        _logdet_spd(avg, "average covariance")
        - 0.5 * (_logdet_spd(model.cov0, "cov0") + _logdet_spd(model.cov1, "cov1"))
    )
    return quad + logdet


def bhattacharyya_coefficient_gaussian(model: GaussianModel) -> float:
    """BC = 2 sqrt(pq) exp(-bhattacharyya distance); lies in (0, 1]."""
    p = model.prior_p
    return 2.0 * math.sqrt(p * (1.0 - p)) * math.exp(-bhattacharyya_distance_gaussian(model))


def bc_bound_gaussian(model: GaussianModel) -> BerBounds:
    """Classical Bhattacharyya bracket: 1/2 - sqrt(1 - BC^2)/2 <= BER <= BC/2."""
    bc = bhattacharyya_coefficient_gaussian(model)
    lower = 0.5 - 0.5 * math.sqrt(max(0.0, 1.0 - bc * bc))
    return BerBounds(lower=lower, upper=0.5 * bc, source="bhattacharyya")


def mahalanobis_bound_gaussian(model: GaussianModel) -> BerBounds:
    """Upper bound 2pq / (1 + pq * delta), delta the averaged-covariance
    Mahalanobis distance between class means. Bounds from above only."""
    p = model.prior_p
    q = 1.0 - p
    avg = (model.cov0 + model.cov1) / 2.0
    dm = model.mean1 - model.mean0
    delta = float(dm @ _solve_spd(avg, dm, "average covariance"))
    return BerBounds(lower=0.0, upper=2.0 * p * q / (1.0 + p * q * delta), source="mahalanobis")


def chernoff_upper_gaussian(model: GaussianModel, alpha: float) -> float:
    """Closed-form Chernoff integral p^a q^(1-a) * int f0^a f1^(1-a) for Gaussians.

    The exponent on f0 is alpha; the blended covariance pairs it with weight
    alpha on cov1: blend = alpha*cov1 + (1-alpha)*cov0. At alpha = 1/2 and
    equal priors this is half the Bhattacharyya coefficient.
    """
    if not (0.0 < alpha < 1.0):
        raise ValueError(f"alpha must lie strictly in (0, 1), got {alpha}")
    p = model.prior_p
    q = 1.0 - p
    blend = alpha * model.cov1 + (1.0 - alpha) * model.cov0
    dm = model.mean1 - model.mean0
    quad = 0.5 * alpha * (1.0 - alpha) * float(dm @ _solve_spd(blend, dm, "blended covariance"))
    logdet = 0.5 * (
        _logdet_spd(blend, "blended covariance")
        - (1.0 - alpha) * _logdet_spd(model.cov0, "cov0")
        - alpha * _logdet_spd(model.cov1, "cov1")
    )
    return (p ** alpha) * (q ** (1.0 - alpha)) * math.exp(-(quad + logdet))


def da_bound(
    source_est: DivergenceEstimate,
    shift_est: DivergenceEstimate,
    label_drift: float = 0.0,
    source_error: float | None = None,
) -> DaBoundReport:
    """Bound target-domain error by source error plus a distribution-shift penalty.

    source_est compares the two source classes; shift_est compares all source
    rows against all target rows. The source term defaults to the divergence
    upper bound on the source Bayes error (assuming the decision rule attains
    it); pass source_error to substitute a measured error rate instead.
    label_drift is the expected labeling-function disagreement, 0 under
    covariate shift.
    """
    if label_drift < 0.0:
        raise ValueError(f"label_drift must be >= 0, got {label_drift}")
    if abs(shift_est.p_hat - 0.5) > 0.1:
        warnings.warn(
            "shift divergence assumes equally sized source and target pools; "
            f"got p_hat={shift_est.p_hat:.3f}",
            stacklevel=2,
        )
    if source_error is None:
        source_term = 0.5 - 0.5 * source_est.dp_tilde
    else:
        if not (0.0 <= source_error <= 1.0):
            raise ValueError(f"source_error must lie in [0, 1], got {source_error}")
        source_term = float(source_error)
    shift_term = 2.0 * math.sqrt(shift_est.dp_tilde)
    total = source_term + shift_term + label_drift
    return DaBoundReport(
        source_term=source_term,
        shift_term=shift_term,
        label_drift_term=float(label_drift),
        total=total,
        vacuous=total > 0.5,
    )
