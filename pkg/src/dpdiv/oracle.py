"""Numerical-integration reference for density-level quantities.

Computes the Bayes error, divergence, affinity, Bhattacharyya, total
variation, and Chernoff integrals directly from log-densities, so the
graph-based estimators and every bound can be validated without building a
single spanning tree.

Integration strategy:
  d <= 2  composite tensor Gauss-Legendre over the integration box. Panels
          (16 nodes each) keep the kinked integrands (min, abs) converging;
          smooth integrands converge to machine precision.
  d > 2   stratified importance-sampled Monte Carlo with the mixture
          proposal (f0 + f1) / 2, which keeps every integrand ratio in
          scope bounded. Strata use derived seeds, so results are
          deterministic and independent of evaluation order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .bounds import bhattacharyya_distance_gaussian
from .dataset import GaussianModel, derive_rng

PANEL_NODES = 16
DEFAULT_QUAD_NODES = {1: 4096, 2: 1536}  # per dimension
DEFAULT_MC_POINTS = 1_000_000
MC_STRATA = 100
DEFAULT_MC_SEED = 0x0D1BE5


class OracleError(ValueError):
    """Invalid density pair or an integral outside its provable range."""


class IntegrationBudgetError(OracleError):
    """Monte Carlo error target missed at the configured point budget."""

    def __init__(self, message, value, standard_error):
        super().__init__(message)
        self.value = value
        self.standard_error = standard_error


@dataclass(frozen=True)
class DensityPair:
    """Two log-densities with a class prior and a rectangular integration box.

    log_density_0/1 map an (n, d) array to length-n log-density values.
    integration_box is a (d, 2) array of per-dimension (low, high) limits
    that must capture essentially all mass of both densities. For d > 2,
    sample_0/sample_1 must draw from the respective densities: they feed the
    mixture importance sampler. Construction verifies each density
    integrates to 1 over the box (1e-6 by quadrature for d <= 2, 1e-2 by
    Monte Carlo above).
    """

    log_density_0: Callable[[np.ndarray], np.ndarray]
    log_density_1: Callable[[np.ndarray], np.ndarray]
    prior_p: float
    dimension: int
    integration_box: np.ndarray
    sample_0: Callable[[np.random.Generator, int], np.ndarray] | None = None
    sample_1: Callable[[np.random.Generator, int], np.ndarray] | None = None
    quad_nodes: int | None = None
    mc_points: int = DEFAULT_MC_POINTS
    mc_seed: int = DEFAULT_MC_SEED

    def __post_init__(self):
        if not (0.0 < self.prior_p < 1.0):
            raise OracleError(f"prior_p must lie strictly in (0, 1), got {self.prior_p}")
        if self.dimension < 1:
            raise OracleError(f"dimension must be >= 1, got {self.dimension}")
        box = np.asarray(self.integration_box, dtype=np.float64).reshape(self.dimension, 2)
        if not np.all(box[:, 0] < box[:, 1]):
            raise OracleError("integration box must satisfy low < high in every dimension")
        box.flags.writeable = False
        object.__setattr__(self, "integration_box", box)
        if self.dimension > 2:
            if self.sample_0 is None or self.sample_1 is None:
                raise OracleError("d > 2 integration needs sample_0 and sample_1 callables")
            if self.mc_points < 10 * MC_STRATA:
                raise OracleError(f"mc_points too small: {self.mc_points}")
        for name, mass, se in zip(("density 0", "density 1"), *self._masses()):
            tol = 1e-6 if self.dimension <= 2 else 1e-2
            if abs(mass - 1.0) > tol:
                raise OracleError(
                    f"{name} integrates to {mass:.8f} over the box (|mass-1| > {tol:g}); "
                    "check normalization or widen the box"
                )

    def _masses(self):
        # The 1e-2 Monte Carlo tolerance needs far fewer points than the
        # operations themselves, so the construction check caps its budget.
        vals = _integrate_multi(
            self,
            [lambda lf0, lf1: np.exp(lf0), lambda lf0, lf1: np.exp(lf1)],
            mc_points=min(self.mc_points, 200_000),
        )
        return ([v for v, _ in vals], [s for _, s in vals])


def _composite_leggauss(lo: float, hi: float, n_total: int):
    """Composite Gauss-Legendre rule: ~n_total nodes split into 16-node panels."""
    k = max(1, int(round(n_total / PANEL_NODES)))
    xm, wm = np.polynomial.legendre.leggauss(PANEL_NODES)
    edges = np.linspace(lo, hi, k + 1)
    mid = (edges[1:] + edges[:-1]) / 2.0
    half = (edges[1:] - edges[:-1]) / 2.0
    x = (mid[:, None] + half[:, None] * xm[None, :]).ravel()
    w = (half[:, None] * wm[None, :]).ravel()
    return x, w


def _quad_grid(pair: DensityPair, nodes: int | None):
    n = nodes or pair.quad_nodes or DEFAULT_QUAD_NODES[pair.dimension]
    box = pair.integration_box
    if pair.dimension == 1:
        x, w = _composite_leggauss(box[0, 0], box[0, 1], n)
        return x[:, None], w
    x0, w0 = _composite_leggauss(box[0, 0], box[0, 1], n)
    x1, w1 = _composite_leggauss(box[1, 0], box[1, 1], n)
    grid = np.stack([np.repeat(x0, x1.size), np.tile(x1, x0.size)], axis=1)
    return grid, (w0[:, None] * w1[None, :]).ravel()


def _integrate_multi(pair, integrands, nodes=None, target_se=None, mc_points=None):
    """Evaluate several integrands on shared nodes/samples.

    Returns a list of (value, standard_error) pairs; quadrature reports a
    standard error of 0. Sharing points matters for identity checks: they
    hold pointwise, so shared-sample results agree to rounding even when the
    Monte Carlo values themselves carry noise.
    """
    if pair.dimension <= 2:
        grid, w = _quad_grid(pair, nodes)
        lf0 = np.asarray(pair.log_density_0(grid), dtype=np.float64)
        lf1 = np.asarray(pair.log_density_1(grid), dtype=np.float64)
        return [(float(np.sum(w * fn(lf0, lf1))), 0.0) for fn in integrands]

    per_stratum = (mc_points or pair.mc_points) // MC_STRATA
    half = per_stratum // 2
    means = np.empty((len(integrands), MC_STRATA))
    for s in range(MC_STRATA):
        rng = derive_rng(pair.mc_seed, s)
        x = np.vstack([pair.sample_0(rng, half), pair.sample_1(rng, per_stratum - half)])
        lf0 = np.asarray(pair.log_density_0(x), dtype=np.float64)
        lf1 = np.asarray(pair.log_density_1(x), dtype=np.float64)
        inv_q = np.exp(-(np.logaddexp(lf0, lf1) - math.log(2.0)))
        for k, fn in enumerate(integrands):
            means[k, s] = np.mean(fn(lf0, lf1) * inv_q)
    out = []
    for k in range(len(integrands)):
        value = float(means[k].mean())
        se = float(means[k].std(ddof=1) / math.sqrt(MC_STRATA))
        if target_se is not None and se > target_se:
            raise IntegrationBudgetError(
                f"Monte Carlo budget exhausted: standard error {se:.3e} > target "
                f"{target_se:.3e} at {per_stratum * MC_STRATA} points (value {value:.6e})",
                value=value,
                standard_error=se,
            )
        out.append((value, se))
    return out


def _integrate(pair, integrand, nodes, with_error, target_se):
    (value, se), = _integrate_multi(pair, [integrand], nodes=nodes, target_se=target_se)
    return (value, se) if with_error else value


def bayes_error(pair: DensityPair, nodes=None, with_error=False, target_se=None):
    """Minimum achievable misclassification rate: integral of min(p f0, q f1)."""
    p, q = pair.prior_p, 1.0 - pair.prior_p
    return _integrate(
        pair,
        lambda lf0, lf1: np.minimum(p * np.exp(lf0), q * np.exp(lf1)),
        nodes, with_error, target_se,
    )


def _dp_tilde_integrand(p, q):
    def fn(lf0, lf1):
        a = p * np.exp(lf0)
        b = q * np.exp(lf1)
        s = a + b
        return np.where(s > 0.0, (a - b) ** 2 / np.where(s > 0.0, s, 1.0), 0.0)

    return fn


def dp_tilde_integral(pair: DensityPair, nodes=None, with_error=False, target_se=None):
    """Weighted squared-difference divergence: integral of (pf0-qf1)^2 / (pf0+qf1).

    The raw value provably lies in [0, 1]; the result is clamped there after
    checking the computed value is within numerical noise of that range.
    """
    p, q = pair.prior_p, 1.0 - pair.prior_p
    value, se = _integrate(pair, _dp_tilde_integrand(p, q), nodes, True, target_se)
    slack = max(1e-6, 5.0 * se)
    if value < -slack or value > 1.0 + slack:
        raise OracleError(f"divergence integral {value:.8f} is outside [0, 1] beyond tolerance")
    value = min(1.0, max(0.0, value))
    return (value, se) if with_error else value


def affinity_integral(pair: DensityPair, nodes=None, with_error=False, target_se=None):
    """Harmonic-mean overlap: integral of f0 f1 / (p f0 + q f1).

    Cross-checks the identity (divergence) = (total mass) - 4pq (affinity)
    on the same evaluation points; disagreement beyond 1e-6 means the
    integrator is broken, so it raises.
    """
    p, q = pair.prior_p, 1.0 - pair.prior_p
    lp, lq = math.log(p), math.log(q)

    def aff(lf0, lf1):
        return np.exp(lf0 + lf1 - np.logaddexp(lp + lf0, lq + lf1))

    def mass(lf0, lf1):
        return np.exp(np.logaddexp(lp + lf0, lq + lf1))

    (a, se), (dpt, _), (m, _) = _integrate_multi(
        pair, [aff, _dp_tilde_integrand(p, q), mass], nodes=nodes, target_se=target_se
    )
    if abs(dpt - (m - 4.0 * p * q * a)) > 1e-6:
        raise OracleError(
            f"affinity/divergence identity violated: {dpt:.10f} vs {m - 4 * p * q * a:.10f}"
        )
    return (a, se) if with_error else a


def bc_integral(pair: DensityPair, nodes=None, with_error=False, target_se=None):
    """Bhattacharyya coefficient 2 * integral of sqrt(pq f0 f1)."""
    p, q = pair.prior_p, 1.0 - pair.prior_p
    coef = 2.0 * math.sqrt(p * q)
    return _integrate(
        pair,
        lambda lf0, lf1: coef * np.exp(0.5 * (lf0 + lf1)),
        nodes, with_error, target_se,
    )


def tv_integral(pair: DensityPair, nodes=None, with_error=False, target_se=None):
    """Total variation between the weighted densities: integral of |p f0 - q f1|."""
    p, q = pair.prior_p, 1.0 - pair.prior_p
    return _integrate(
        pair,
        lambda lf0, lf1: np.abs(p * np.exp(lf0) - q * np.exp(lf1)),
        nodes, with_error, target_se,
    )


def chernoff_integral(pair: DensityPair, alpha: float, nodes=None, with_error=False,
                      target_se=None):
    """Chernoff integral: p^a q^(1-a) * integral of f0^a f1^(1-a), a in (0, 1)."""
    if not (0.0 < alpha < 1.0):
        raise OracleError(f"alpha must lie strictly in (0, 1), got {alpha}")
    p, q = pair.prior_p, 1.0 - pair.prior_p
    lead = alpha * math.log(p) + (1.0 - alpha) * math.log(q)
    return _integrate(
        pair,
        lambda lf0, lf1: np.exp(lead + alpha * lf0 + (1.0 - alpha) * lf1),
        nodes, with_error, target_se,
    )


def scaled_chernoff_integral(pair: DensityPair, nodes=None, with_error=False, target_se=None):
    """Integral of f0^q f1^p: the prior-free quantity the affinity never exceeds."""
    p, q = pair.prior_p, 1.0 - pair.prior_p
    return _integrate(
        pair,
        lambda lf0, lf1: np.exp(q * lf0 + p * lf1),
        nodes, with_error, target_se,
    )


def _gaussian_logpdf_fn(mean: np.ndarray, cov: np.ndarray):
    chol = np.linalg.cholesky(cov)
    half_logdet = float(np.log(np.diag(chol)).sum())
    d = mean.size
    const = -0.5 * d * math.log(2.0 * math.pi) - half_logdet

    def logpdf(x):
        x = np.atleast_2d(np.asarray(x, dtype=np.float64))
        y = np.linalg.solve(chol, (x - mean).T)
        return const - 0.5 * np.sum(y * y, axis=0)

    return logpdf


def _gaussian_sampler_fn(mean: np.ndarray, cov: np.ndarray):
    chol = np.linalg.cholesky(cov)

    def sample(rng, n):
        return rng.standard_normal((n, mean.size)) @ chol.T + mean

    return sample


def gaussian_pair(model: GaussianModel, quad_nodes=None, mc_points=DEFAULT_MC_POINTS,
                  mc_seed=DEFAULT_MC_SEED, box_sigmas=8.0) -> DensityPair:
    """DensityPair for a two-class Gaussian model.

    The box spans mean +- box_sigmas marginal standard deviations of each
    component (Gaussian mass outside 8 sigma is below 1e-15).
    """
    s0 = np.sqrt(np.diag(model.cov0))
    s1 = np.sqrt(np.diag(model.cov1))
    lo = np.minimum(model.mean0 - box_sigmas * s0, model.mean1 - box_sigmas * s1)
    hi = np.maximum(model.mean0 + box_sigmas * s0, model.mean1 + box_sigmas * s1)
    return DensityPair(
        log_density_0=_gaussian_logpdf_fn(model.mean0, model.cov0),
        log_density_1=_gaussian_logpdf_fn(model.mean1, model.cov1),
        prior_p=model.prior_p,
        dimension=model.d,
        integration_box=np.stack([lo, hi], axis=1),
        sample_0=_gaussian_sampler_fn(model.mean0, model.cov0),
        sample_1=_gaussian_sampler_fn(model.mean1, model.cov1),
        quad_nodes=quad_nodes,
        mc_points=mc_points,
        mc_seed=mc_seed,
    )


def random_gaussian_model(rng: np.random.Generator, dimension=None, equal_priors=False,
                          min_bhattacharyya=0.02, max_bhattacharyya=2.5) -> GaussianModel:
    """Random well-conditioned Gaussian model for validation suites.

    Rejection-samples until the closed-form Bhattacharyya distance lands in
    [min_bhattacharyya, max_bhattacharyya], which keeps the classes neither
    nearly identical nor nearly separated; inequality checks then carry
    slack far above integration noise.
    """
    for _ in range(1000):
        d = int(dimension) if dimension is not None else int(rng.integers(1, 5))
        mean0 = rng.normal(0.0, 0.8, d)
        mean1 = mean0 + rng.normal(0.0, 0.7, d)

        def rand_cov():
            basis = np.linalg.qr(rng.normal(size=(d, d)))[0]
            eig = rng.uniform(0.4, 2.2, d)
            c = (basis * eig) @ basis.T
            return (c + c.T) / 2.0

        prior = 0.5 if equal_priors else float(rng.uniform(0.2, 0.8))
        model = GaussianModel(mean0=mean0, mean1=mean1, cov0=rand_cov(), cov1=rand_cov(),
                              prior_p=prior)
        if min_bhattacharyya <= bhattacharyya_distance_gaussian(model) <= max_bhattacharyya:
            return model
    raise RuntimeError("failed to draw a model inside the separation window")
