import numpy as np
import pytest

import curvemark as cm
import oracles
from curvemark.model import NEG_INF, log_posterior_theta
from curvemark.rwm import draw_initial_theta


def polyline_sample(n_eval=25):
    pts = oracles.three_segment_polyline(60)
    curve = cm.rescale_unit_length(cm.PlanarCurve(pts), n_eval)
    return cm.CurveSample.build([curve], cm.EvaluationGrid(n_eval, cm.OPEN))


class TestRwmConfig:
    def test_validation(self):
        with pytest.raises(ValueError):
            cm.RwmConfig(n_iter=100)
        with pytest.raises(ValueError):
            cm.RwmConfig(burn_in_frac=1.0)
        with pytest.raises(ValueError):
            cm.RwmConfig(thin=0)
        with pytest.raises(ValueError):
            cm.RwmConfig(proposal_var=0.0)

    def test_defaults(self):
        cfg = cm.RwmConfig()
        assert cfg.n_iter == 100_000
        assert cfg.burn_in_frac == 0.1
        assert cfg.thin == 100
        assert cfg.proposal_var == 0.02


class TestPosteriorSampleSet:
    def _mixed(self):
        thetas = [np.array([0.5]), np.array([0.2, 0.8]), np.array([0.3])]
        return cm.PosteriorSampleSet(
            thetas, np.array([1, 2, 1]), np.zeros(3), 0.5, cm.OPEN
        )

    def test_theta_matrix_requires_common_k(self):
        mixed = self._mixed()
        with pytest.raises(ValueError):
            mixed.theta_matrix()
        np.testing.assert_allclose(mixed.theta_matrix(k=1), [[0.5], [0.3]])
        with pytest.raises(ValueError):
            mixed.theta_matrix(k=5)

    def test_select_k_and_counts(self):
        mixed = self._mixed()
        assert mixed.k_counts() == {1: 2, 2: 1}
        sub = mixed.select_k(1)
        assert sub.n == 2 and set(sub.ks) == {1}


class TestRwmStep:
    def test_flat_target_always_accepts(self):
        # uniform prior on a closed domain: every proposal is valid and the
        # acceptance ratio is exactly 1
        sample = polyline_sample()
        spec = cm.ModelSpec(n_eval=25, topology=cm.CLOSED, alpha=1.0)
        rng = np.random.default_rng(3)
        theta = np.array([0.1, 0.4, 0.7])
        logp = log_posterior_theta(sample, theta, spec, include_likelihood=False)
        n_acc = 0
        for _ in range(200):
            theta, logp, acc = rwm_step_closed(sample, spec, theta, logp, rng)
            n_acc += acc
        assert n_acc == 200

    def test_ordering_violation_always_rejected(self):
        sample = polyline_sample()
        spec = cm.ModelSpec(n_eval=25)
        theta = np.array([0.3, 0.31])
        logp = log_posterior_theta(sample, theta, spec)
        rng = np.random.default_rng(0)
        # with a huge proposal variance almost every move breaks the
        # ordering or leaves [0, 1]; every retained state must stay valid
        for _ in range(300):
            theta, logp, _ = cm.rwm_step(theta, logp, sample, spec, 4.0, rng)
            assert cm.reconstruct.theta_is_valid(theta, cm.OPEN)
            assert np.isfinite(logp)

    def test_acceptance_decision_matches_hand_computation(self):
        sample = polyline_sample()
        spec = cm.ModelSpec(n_eval=25)
        theta0 = np.array([0.25, 0.55, 0.85])
        logp0 = log_posterior_theta(sample, theta0, spec)
        for seed in range(20):
            rng = np.random.default_rng(seed)
            shadow = np.random.default_rng(seed)
            j = int(shadow.integers(3))
            eps = shadow.normal(0.0, np.sqrt(0.02))
            prop = theta0.copy()
            prop[j] += eps
            logp_prop = log_posterior_theta(sample, prop, spec)
            u = shadow.uniform()
            want_accept = logp_prop > NEG_INF and np.log(u) < logp_prop - logp0
            theta1, logp1, acc = cm.rwm_step(theta0, logp0, sample, spec, 0.02, rng)
            assert acc == want_accept
            if acc:
                np.testing.assert_allclose(theta1, prop, atol=1e-15)
                assert logp1 == pytest.approx(logp_prop, abs=1e-12)
            else:
                assert theta1 is theta0 and logp1 == logp0


def rwm_step_closed(sample, spec, theta, logp, rng):
    return cm.rwm_step(
        theta, logp, sample, spec, 0.02, rng, prior_only=True
    )


class TestRunChain:
    def test_deterministic_under_seed(self):
        sample = polyline_sample()
        spec = cm.ModelSpec(n_eval=25)
        cfg = cm.RwmConfig(n_iter=2000, thin=10, seed=11)
        a = cm.run_chain(sample, spec, cfg, k=2)
        b = cm.run_chain(sample, spec, cfg, k=2)
        assert a.accept_rate == b.accept_rate
        for ta, tb in zip(a.thetas, b.thetas):
            assert np.array_equal(ta, tb)
        assert np.array_equal(a.log_post, b.log_post)

    def test_burn_in_and_thinning_counts(self):
        sample = polyline_sample()
        spec = cm.ModelSpec(n_eval=25)
        cfg = cm.RwmConfig(n_iter=5000, burn_in_frac=0.2, thin=50, seed=1)
        res = cm.run_chain(sample, spec, cfg, k=2)
        assert res.n == 80  # (5000 - 1000) / 50
        assert np.all(res.ks == 2)

    def test_requires_k_without_init(self):
        sample = polyline_sample()
        with pytest.raises(ValueError):
            cm.run_chain(sample, cm.ModelSpec(n_eval=25), cm.RwmConfig(n_iter=1000))

    def test_explicit_init_is_respected(self):
        sample = polyline_sample()
        spec = cm.ModelSpec(n_eval=25)
        cfg = cm.RwmConfig(n_iter=1000, burn_in_frac=0.0, thin=1000, seed=5)
        init = cm.LandmarkConfig(np.array([0.4, 0.6]))
        res = cm.run_chain(sample, spec, cfg, init=init)
        assert res.n >= 1 and np.all(res.ks == 2)

    def test_prior_recovery_dirichlet_means(self):
        # constant likelihood: retained spacings must match the symmetric
        # Dirichlet, whose component means are 1/p
        sample = polyline_sample()
        spec = cm.ModelSpec(n_eval=25, alpha=1.0)
        cfg = cm.RwmConfig(n_iter=100_000, thin=10, proposal_var=0.02, seed=5)
        res = cm.run_chain(sample, spec, cfg, k=3, prior_only=True)
        s = np.array(
            [cm.reconstruct.spacing_from_theta(th, cm.OPEN) for th in res.thetas]
        )
        means = s.mean(axis=0)
        # Dirichlet(1) component sd is sqrt(p-1)/(p sqrt(p+1)); allow 3
        # Monte-Carlo standard errors with a conservative effective sample
        # size of n/20
        p = 4
        sd = np.sqrt(p - 1.0) / (p * np.sqrt(p + 1.0))
        tol = 3.0 * sd / np.sqrt(res.n / 20.0)
        np.testing.assert_allclose(means, 1.0 / p, atol=tol)

    def test_prior_recovery_closed_anchor_uniform(self):
        # closed-curve prior draws: each landmark is marginally uniform
        rng = np.random.default_rng(17)
        spec = cm.ModelSpec(n_eval=25, topology=cm.CLOSED, alpha=1.0)
        draws = np.array([draw_initial_theta(rng, spec, 3) for _ in range(4000)])
        pooled = draws.ravel()
        hist, _ = np.histogram(pooled, bins=10, range=(0.0, 1.0))
        assert hist.min() > 0.8 * pooled.size / 10
        assert hist.max() < 1.2 * pooled.size / 10

    def test_sine_posterior_quick(self, sine_sample_100):
        spec = cm.ModelSpec(n_eval=100)
        cfg = cm.RwmConfig(n_iter=30_000, thin=30, seed=2)
        res = cm.run_chain(sine_sample_100, spec, cfg, k=4)
        means = res.theta_matrix().mean(axis=0)
        np.testing.assert_allclose(means, [0.125, 0.375, 0.625, 0.875], atol=0.01)

    def test_k1_histogram_matches_grid_posterior(self):
        sample = polyline_sample()
        spec = cm.ModelSpec(n_eval=25)

        def logpost(th):
            return log_posterior_theta(sample, th, spec)

        centers, probs = oracles.grid_posterior_k1(logpost, n_grid=2000)
        cfg = cm.RwmConfig(n_iter=200_000, thin=10, seed=4)
        res = cm.run_chain(sample, spec, cfg, k=1)
        draws = res.theta_matrix()[:, 0]
        bins = np.linspace(0.0, 1.0, 41)
        chain_hist, _ = np.histogram(draws, bins=bins)
        chain_p = chain_hist / chain_hist.sum()
        grid_p = np.array(
            [
                probs[(centers >= lo) & (centers < hi)].sum()
                for lo, hi in zip(bins[:-1], bins[1:])
            ]
        )
        tv = 0.5 * np.abs(chain_p - grid_p).sum()
        assert tv <= 0.05
