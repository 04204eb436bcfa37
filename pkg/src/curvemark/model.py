"""Priors, marginal likelihood, and log-posterior evaluation.

All densities are computed in log space: the Gamma function arguments grow
with N*M and overflow otherwise.  The precision of the SRVF noise model is
marginalized analytically against its Gamma prior; an optional Gibbs draw
of it is available for users who want precision inference.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .curves import CLOSED, OPEN, CurveError, EvaluationGrid, PlanarCurve, Srvf, compute_srvf
from .reconstruct import (
    LandmarkConfig,
    SpacingVector,
    reconstruction_error_sq_values,
    spacing_from_theta,
    theta_is_valid,
)

NEG_INF = float("-inf")


def k_min_for(topology: str) -> int:
    """Smallest admissible landmark count: 1 for open curves, 3 for closed
    (a closed reconstruction needs three vertices)."""
    return 3 if topology == CLOSED else 1


@dataclass(frozen=True)
class ModelSpec:
    """Hyperparameters of the landmark model.

    ``a``, ``b`` parameterize the Gamma prior on the marginalized noise
    precision; ``alpha`` is the Dirichlet concentration on spacings; ``lam``
    is the shifted-Poisson rate on the landmark count (variable-k mode
    only).  ``k_max`` caps dimension growth in trans-dimensional runs.
    """

    n_eval: int
    topology: str = OPEN
    a: float = 1.0
    b: float = 0.01
    alpha: float = 1.0
    lam: float | None = None
    k_max: int = 50

    def __post_init__(self):
        if self.n_eval < 16:
            raise ValueError("n_eval must be at least 16")
        if self.a <= 0 or self.b <= 0 or self.alpha <= 0:
            raise ValueError("a, b, alpha must be positive")
        if self.lam is not None and self.lam <= 0:
            raise ValueError("lam must be positive")
        if self.k_max < k_min_for(self.topology):
            raise ValueError("k_max below the minimum landmark count")

    @property
    def min_spacing(self) -> float:
        # below grid resolution the reconstruction is ill-defined
        return 1.0 / (4.0 * self.n_eval)

    def grid(self) -> EvaluationGrid:
        return EvaluationGrid(self.n_eval, self.topology)


@dataclass
class CurveSample:
    """Preprocessed curves with cached SRVFs on a shared grid."""

    curves: list
    srvfs: list
    grid: EvaluationGrid

    @classmethod
    def build(cls, curves, grid: EvaluationGrid) -> "CurveSample":
        curves = list(curves)
        if not curves:
            raise CurveError("need at least one curve")
        for c in curves:
            if c.topology != grid.topology:
                raise CurveError("all curves must share the grid topology")
        return cls(curves, [compute_srvf(c, grid) for c in curves], grid)

    @property
    def m(self) -> int:
        return len(self.curves)


def log_prior_spacing(s, spec: ModelSpec) -> float:
    """Log density of the symmetric Dirichlet at a spacing vector."""
    arr = s.s if isinstance(s, SpacingVector) else np.asarray(s, dtype=float)
    if np.any(arr <= 0.0):
        return NEG_INF
    p = arr.size
    a = spec.alpha
    return float(gammaln(p * a) - p * gammaln(a) + (a - 1.0) * np.log(arr).sum())


def log_prior_k(k: int, spec: ModelSpec) -> float:
    """Shifted Poisson log-pmf on the landmark count."""
    if spec.lam is None:
        raise ValueError("ModelSpec.lam is required for variable-k inference")
    nu = k - k_min_for(spec.topology)
    if nu < 0 or k > spec.k_max:
        return NEG_INF
    return float(nu * np.log(spec.lam) - spec.lam - gammaln(nu + 1.0))


def total_reconstruction_error_sq(sample: CurveSample, theta: np.ndarray) -> float:
    """Sum of squared reconstruction errors over the sample's curves."""
    return sum(
        reconstruction_error_sq_values(c, theta, sample.grid, q.values)
        for c, q in zip(sample.curves, sample.srvfs)
    )


def _log_marginal_from_error(total_sq: float, spec: ModelSpec, m: int) -> float:
    nm = spec.n_eval * m
    a, b = spec.a, spec.b
    return float(
        -nm * np.log(np.pi)
        + gammaln(a + nm)
        + a * np.log(b)
        - gammaln(a)
        - (a + nm) * np.log(b + total_sq)
    )


def log_marginal_likelihood(
    sample: CurveSample, cfg: LandmarkConfig, spec: ModelSpec
) -> float:
    """Likelihood of the sample with the noise precision integrated out.

    Configurations with any spacing below the grid-resolution guard are
    assigned -inf.
    """
    s = spacing_from_theta(cfg.theta, cfg.topology)
    if s.min() < spec.min_spacing:
        return NEG_INF
    return _log_marginal_from_error(
        total_reconstruction_error_sq(sample, cfg.theta), spec, sample.m
    )


def log_posterior(
    sample: CurveSample,
    cfg: LandmarkConfig,
    spec: ModelSpec,
    variable_k: bool = False,
) -> float:
    """Unnormalized log posterior of a landmark configuration."""
    return log_posterior_theta(sample, cfg.theta, spec, variable_k=variable_k)


def log_posterior_theta(
    sample: CurveSample,
    theta: np.ndarray,
    spec: ModelSpec,
    variable_k: bool = False,
    include_likelihood: bool = True,
) -> float:
    """Log posterior evaluated on a raw landmark array.

    Invalid orderings return -inf rather than raising, which is what the
    samplers rely on to auto-reject.  ``include_likelihood=False`` gives the
    prior alone (validation mode).
    """
    theta = np.asarray(theta, dtype=float)
    if not theta_is_valid(theta, spec.topology):
        return NEG_INF
    s = spacing_from_theta(theta, spec.topology)
    lp = log_prior_spacing(s, spec)
    if variable_k:
        lp += log_prior_k(theta.size, spec)
    if lp == NEG_INF:
        return NEG_INF
    if include_likelihood:
        if s.min() < spec.min_spacing:
            return NEG_INF
        lp += _log_marginal_from_error(
            total_reconstruction_error_sq(sample, theta), spec, sample.m
        )
    return lp


def sample_precision(
    rng: np.random.Generator,
    sample: CurveSample,
    cfg: LandmarkConfig,
    spec: ModelSpec,
) -> float:
    """Gibbs draw of the noise precision from its full conditional,
    Gamma(a + NM, b + total squared error).  Optional; the default
    inference path never samples it."""
    total = total_reconstruction_error_sq(sample, cfg.theta)
    shape = spec.a + spec.n_eval * sample.m
    return float(rng.gamma(shape, 1.0 / (spec.b + total)))
