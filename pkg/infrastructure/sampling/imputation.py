"""
Imputation algorithm: impute the missing potential outcomes, then update the
means, the standard deviations and the correlations (separation Σ = QRQ)
"""
import logging
from typing import Optional

import numpy as np

from core.exceptions import ChainDiverged
from domain.entities.model_spec import ModelSpec
from domain.entities.prior import ChainConfig, PriorSet
from domain.services.mvn import cholesky, gaussian_scatter_loglik, regression_operator

from .base import (
    OPEN_UNIT,
    BaseSampler,
    ChainState,
    correlation_support,
    correlation_target,
    draw_sd,
    trivariate_bounds,
)
from .conjugate import draw_regression_coefs
from .griddy import griddy_gibbs_draw
from .model_frame import ModelFrame

logger = logging.getLogger(__name__)

# missing / observed outcome indices per arm, order (S1, T0, T1)
CONTROL_PATTERN = ([0, 2], [1])
TREATED_PATTERN = ([1], [0, 2])


class ImputationSampler(BaseSampler):
    """
    Full-data Gibbs sampler

    Each cycle imputes S(1), T(1) for control subjects and T(0) for treated
    subjects from their conditional normal, draws the mean coefficients from
    their conjugate posterior and each sd and correlation by griddy Gibbs on
    the completed-data likelihood.
    """

    name = "imputation"

    def _prepare(self, frame: ModelFrame, state: ChainState, priors: PriorSet,
                 ci_assumed: bool, spec_template: ModelSpec) -> None:
        self._w = np.vstack([frame.w0, frame.w1])
        self._y = np.full((frame.n0 + frame.n1, 3), np.nan)
        self._y[: frame.n0, 1] = frame.t0
        self._y[frame.n0:, 0] = frame.s1
        self._y[frame.n0:, 2] = frame.t1
        self._n0 = frame.n0
        self._sd_upper = frame.sd_upper_bounds(spec_template.sds)

    def _impute_block(self, rows: slice, pattern, state: ChainState, sigma: np.ndarray,
                      rng: np.random.Generator) -> None:
        missing, observed = pattern
        y = self._y[rows]
        if y.shape[0] == 0:
            return
        mu = self._w[rows] @ state.coefs.T
        coefs, cond_cov = regression_operator(sigma, missing, observed)
        cond_mean = mu[:, missing] + (y[:, observed] - mu[:, observed]) @ coefs.T
        factor = cholesky(cond_cov)
        noise = rng.standard_normal((y.shape[0], len(missing))) @ factor.T
        y[:, missing] = cond_mean + noise
        self._y[rows] = y

    def _step(self, state: ChainState, frame: ModelFrame, priors: PriorSet, ci_assumed: bool,
              cfg: ChainConfig, rng: np.random.Generator) -> Optional[np.ndarray]:
        sigma = state.covariance()
        self._impute_block(slice(0, self._n0), CONTROL_PATTERN, state, sigma, rng)
        self._impute_block(slice(self._n0, None), TREATED_PATTERN, state, sigma, rng)

        prior_mean, prior_sd = priors.mean_prior.params
        state.coefs = draw_regression_coefs(self._w, self._y, sigma, prior_mean, prior_sd, rng)

        residuals = self._y - self._w @ state.coefs.T
        scatter = residuals.T @ residuals
        n = residuals.shape[0]

        corr = state.correlation()
        for j in range(3):
            state.sds[j] = draw_sd(j, state.sds, corr, scatter, n, self._sd_upper[j], cfg, rng)

        if ci_assumed:
            self._draw_constrained(state, scatter, n, priors, cfg, rng)
        else:
            self._draw_free(state, scatter, n, priors, cfg, rng)

        loglik = gaussian_scatter_loglik(state.covariance(), scatter, n)
        if not np.isfinite(loglik):
            raise ChainDiverged("Completed-data log-likelihood is not finite")
        return self._y

    def _draw_constrained(self, state: ChainState, scatter, n, priors: PriorSet,
                          cfg: ChainConfig, rng: np.random.Generator) -> None:
        """thetaT, then theta11; theta10 = thetaT * theta11 inside the likelihood"""
        if not priors.thetaT.is_point_mass:
            target = correlation_target("thetaT", state, scatter, n, priors.thetaT, True)
            state.thetaT = griddy_gibbs_draw(target, correlation_support(priors.thetaT, OPEN_UNIT), cfg, rng)
        target = correlation_target("theta11", state, scatter, n, priors.theta11, True)
        state.theta11 = griddy_gibbs_draw(target, correlation_support(priors.theta11, OPEN_UNIT), cfg, rng)
        state.theta10 = state.thetaT * state.theta11

    def _draw_free(self, state: ChainState, scatter, n, priors: PriorSet,
                   cfg: ChainConfig, rng: np.random.Generator) -> None:
        """Each correlation on the interval that keeps R positive definite"""
        for name in ("theta11", "theta10", "thetaT"):
            prior = priors.correlation(name)
            if prior.is_point_mass:
                continue
            bounds = correlation_support(prior, trivariate_bounds(state, name))
            target = correlation_target(name, state, scatter, n, prior, False)
            setattr(state, name, griddy_gibbs_draw(target, bounds, cfg, rng))
