"""
Observed-data algorithm: identified parameters from the observed arms only,
nonidentified correlations drawn from their priors
"""
import logging
from typing import Optional

import numpy as np

from domain.entities.model_spec import ModelSpec
from domain.entities.prior import ChainConfig, PriorSet
from domain.services.mvn import gaussian_scatter_loglik, pd_bound_third, shrink_interval

from .base import OPEN_UNIT, BaseSampler, ChainState, correlation_support, draw_sd
from .conjugate import draw_regression_coefs
from .griddy import griddy_gibbs_draw
from .model_frame import ModelFrame
from .prior_distributions import draw_prior, draw_truncated, log_prior

logger = logging.getLogger(__name__)


class ObservedDataSampler(BaseSampler):
    """
    Observed-data Gibbs sampler

    Arm 1 gives the bivariate (S(1), T(1) | X) model and theta11; arm 0 gives
    the univariate T(0) | X model. thetaT is drawn from its prior; theta10 is
    thetaT * theta11 under conditional independence, otherwise a prior draw
    restricted to the positive-definite interval. Missing outcome slots are
    never read.
    """

    name = "observed"

    def _prepare(self, frame: ModelFrame, state: ChainState, priors: PriorSet,
                 ci_assumed: bool, spec_template: ModelSpec) -> None:
        upper = frame.sd_upper_bounds(spec_template.sds)
        self._upper_arm1 = upper[[0, 2]]
        self._upper_arm0 = upper[1]
        self._y1 = np.column_stack([frame.s1, frame.t1])
        self._y0 = frame.t0[:, None]

    def _step(self, state: ChainState, frame: ModelFrame, priors: PriorSet, ci_assumed: bool,
              cfg: ChainConfig, rng: np.random.Generator) -> Optional[np.ndarray]:
        prior_mean, prior_sd = priors.mean_prior.params
        self._update_treated_arm(state, frame, priors, prior_mean, prior_sd, cfg, rng)
        self._update_control_arm(state, frame, prior_mean, prior_sd, cfg, rng)

        state.thetaT = float(draw_prior(priors.thetaT, rng))
        if ci_assumed:
            state.theta10 = state.thetaT * state.theta11
        else:
            bounds = shrink_interval(pd_bound_third(state.theta11, state.thetaT))
            state.theta10 = draw_truncated(priors.theta10, bounds, rng)
        return None

    def _update_treated_arm(self, state: ChainState, frame: ModelFrame, priors: PriorSet,
                            prior_mean: float, prior_sd: float, cfg: ChainConfig,
                            rng: np.random.Generator) -> None:
        sds = state.sds[[0, 2]].copy()
        rho = state.theta11
        corr = np.array([[1.0, rho], [rho, 1.0]])
        coefs = draw_regression_coefs(frame.w1, self._y1, corr * np.outer(sds, sds), prior_mean, prior_sd, rng)
        residuals = self._y1 - frame.w1 @ coefs.T
        scatter = residuals.T @ residuals
        n1 = residuals.shape[0]

        for j in range(2):
            sds[j] = draw_sd(j, sds, corr, scatter, n1, self._upper_arm1[j], cfg, rng)

        outer_sd = np.outer(sds, sds)

        def target(grid: np.ndarray) -> np.ndarray:
            covs = np.empty((grid.size, 2, 2))
            covs[:, 0, 0] = outer_sd[0, 0]
            covs[:, 1, 1] = outer_sd[1, 1]
            covs[:, 0, 1] = covs[:, 1, 0] = grid * outer_sd[0, 1]
            return gaussian_scatter_loglik(covs, scatter, n1) + log_prior(priors.theta11, grid)

        state.theta11 = griddy_gibbs_draw(target, correlation_support(priors.theta11, OPEN_UNIT), cfg, rng)
        state.coefs[0] = coefs[0]
        state.coefs[2] = coefs[1]
        state.sds[0] = sds[0]
        state.sds[2] = sds[1]

    def _update_control_arm(self, state: ChainState, frame: ModelFrame, prior_mean: float,
                            prior_sd: float, cfg: ChainConfig, rng: np.random.Generator) -> None:
        variance = np.array([[state.sds[1] ** 2]])
        coefs = draw_regression_coefs(frame.w0, self._y0, variance, prior_mean, prior_sd, rng)
        residuals = self._y0 - frame.w0 @ coefs.T
        scatter = residuals.T @ residuals
        unit = np.ones((1, 1))
        sd = draw_sd(0, state.sds[[1]], unit, scatter, residuals.shape[0], self._upper_arm0, cfg, rng)
        state.coefs[1] = coefs[0]
        state.sds[1] = sd
