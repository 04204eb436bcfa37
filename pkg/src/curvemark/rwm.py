"""Random-walk Metropolis sampler over landmark locations for fixed k."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .curves import CLOSED
from .model import CurveSample, ModelSpec, NEG_INF, log_posterior_theta


@dataclass(frozen=True)
class RwmConfig:
    """Chain settings.  Defaults follow the usual recipe: 10% burn-in,
    thin by 100, normal proposal variance 0.02."""

    n_iter: int = 100_000
    burn_in_frac: float = 0.1
    thin: int = 100
    proposal_var: float = 0.02
    seed: int = 0

    def __post_init__(self):
        if self.n_iter < 1000:
            raise ValueError("n_iter must be at least 1000")
        if not 0.0 <= self.burn_in_frac < 1.0:
            raise ValueError("burn_in_frac must be in [0, 1)")
        if self.thin < 1:
            raise ValueError("thin must be at least 1")
        if self.proposal_var <= 0.0:
            raise ValueError("proposal_var must be positive")


@dataclass
class PosteriorSampleSet:
    """Retained chain output: landmark vectors, per-sample log posterior,
    and the overall acceptance rate."""

    thetas: list
    ks: np.ndarray
    log_post: np.ndarray
    accept_rate: float
    topology: str

    @property
    def n(self) -> int:
        return len(self.thetas)

    def theta_matrix(self, k: int | None = None) -> np.ndarray:
        """Samples stacked as an (n, k) array.

        With ``k=None`` all samples must share one dimension; otherwise the
        chain is filtered to the requested landmark count first.
        """
        if k is None:
            uniq = np.unique(self.ks)
            if uniq.size != 1:
                raise ValueError(
                    "mixed landmark counts; pass k to select a stratum"
                )
            return np.array(self.thetas)
        rows = [th for th, kk in zip(self.thetas, self.ks) if kk == k]
        if not rows:
            raise ValueError(f"no retained samples with k={k}")
        return np.array(rows)

    def select_k(self, k: int) -> "PosteriorSampleSet":
        mask = self.ks == k
        thetas = [th for th, keep in zip(self.thetas, mask) if keep]
        return PosteriorSampleSet(
            thetas,
            self.ks[mask],
            self.log_post[mask],
            self.accept_rate,
            self.topology,
        )

    def k_counts(self) -> dict[int, int]:
        uniq, counts = np.unique(self.ks, return_counts=True)
        return {int(k): int(c) for k, c in zip(uniq, counts)}


def draw_initial_theta(rng: np.random.Generator, spec: ModelSpec, k: int) -> np.ndarray:
    """Draw a landmark vector from the prior: spacings from the symmetric
    Dirichlet, plus a uniform anchor point on closed curves."""
    if spec.topology == CLOSED:
        s = rng.dirichlet(np.full(k, spec.alpha))
        start = rng.uniform()
        return np.sort(np.mod(start + np.concatenate([[0.0], np.cumsum(s[:-1])]), 1.0))
    s = rng.dirichlet(np.full(k + 1, spec.alpha))
    return np.cumsum(s)[:-1]


def rwm_step(
    theta: np.ndarray,
    logp: float,
    sample: CurveSample,
    spec: ModelSpec,
    proposal_var: float,
    rng: np.random.Generator,
    variable_k: bool = False,
    prior_only: bool = False,
):
    """One Metropolis update of a uniformly chosen landmark component.

    The proposal is normal with the given variance; closed-curve proposals
    wrap mod 1 (and the vector is re-sorted), open-curve proposals that
    break the ordering carry prior support 0 and are auto-rejected.
    Returns ``(theta, logp, accepted)``.
    """
    j = int(rng.integers(theta.size))
    eps = rng.normal(0.0, np.sqrt(proposal_var))
    prop = theta.copy()
    prop[j] += eps
    if spec.topology == CLOSED:
        prop[j] = np.mod(prop[j], 1.0)
        prop = np.sort(prop)
    logp_new = log_posterior_theta(
        sample,
        prop,
        spec,
        variable_k=variable_k,
        include_likelihood=not prior_only,
    )
    u = rng.uniform()
    if logp_new > NEG_INF and np.log(u) < logp_new - logp:
        return prop, logp_new, True
    return theta, logp, False


def run_chain(
    sample: CurveSample,
    spec: ModelSpec,
    cfg: RwmConfig,
    k: int | None = None,
    init=None,
    prior_only: bool = False,
) -> PosteriorSampleSet:
    """Run the fixed-k random-walk Metropolis chain.

    If ``init`` is None the state is drawn from the prior (``k`` required).
    Burn-in and thinning are applied to the returned sample set; the raw
    acceptance rate covers all iterations.
    """
    rng = np.random.default_rng(cfg.seed)
    if init is not None:
        theta = np.asarray(init.theta, dtype=float)
        k = theta.size
        logp = log_posterior_theta(
            sample, theta, spec, include_likelihood=not prior_only
        )
    else:
        if k is None:
            raise ValueError("k is required when init is not given")
        logp = NEG_INF
        for _ in range(100):
            theta = draw_initial_theta(rng, spec, k)
            logp = log_posterior_theta(
                sample, theta, spec, include_likelihood=not prior_only
            )
            if logp > NEG_INF:
                break
    if logp == NEG_INF:
        raise RuntimeError("could not find an initial state with finite posterior")

    burn_in = int(round(cfg.n_iter * cfg.burn_in_frac))
    kept_theta: list[np.ndarray] = []
    kept_logp: list[float] = []
    accepted = 0
    for t in range(cfg.n_iter):
        theta, logp, acc = rwm_step(
            theta, logp, sample, spec, cfg.proposal_var, rng, prior_only=prior_only
        )
        accepted += acc
        if t >= burn_in and (t - burn_in) % cfg.thin == 0:
            kept_theta.append(theta.copy())
            kept_logp.append(logp)
    rate = accepted / cfg.n_iter
    if accepted == 0:
        warnings.warn("chain accepted no proposals; check the proposal variance")
    return PosteriorSampleSet(
        kept_theta,
        np.full(len(kept_theta), k, dtype=int),
        np.asarray(kept_logp),
        rate,
        spec.topology,
    )
