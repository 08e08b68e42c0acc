"""
Shared chain machinery: state, initialization, griddy targets and draw assembly
"""
import logging
from abc import abstractmethod
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from core.exceptions import ChainDiverged
from domain.entities.gaussian import CorrelationState
from domain.entities.model_spec import OUTCOMES, ModelSpec
from domain.entities.posterior import PosteriorDraws
from domain.entities.prior import ChainConfig, PriorSet, PriorSpec
from domain.entities.trial import TrialDataset
from domain.interfaces.sampler import ISampler
from domain.services.mvn import gaussian_scatter_loglik, pd_bound_third, shrink_interval

from .derived import derive
from .griddy import griddy_gibbs_draw
from .model_frame import MIN_SD, ModelFrame, build_frame, initial_coefs
from .prior_distributions import log_prior, support

logger = logging.getLogger(__name__)

CORRELATION_NAMES = ("theta11", "theta10", "thetaT")
OPEN_UNIT = shrink_interval((-1.0, 1.0))
START_CORRELATION_LIMIT = 0.9


@dataclass
class ChainState:
    """Current values of every model parameter"""
    coefs: np.ndarray
    sds: np.ndarray
    theta11: float
    theta10: float
    thetaT: float

    def correlation(self) -> np.ndarray:
        return correlation_stack(self.theta11, self.theta10, self.thetaT)[0]

    def covariance(self) -> np.ndarray:
        return self.correlation() * np.outer(self.sds, self.sds)

    def check(self) -> CorrelationState:
        return CorrelationState(theta11=self.theta11, theta10=self.theta10, thetaT=self.thetaT)


def correlation_stack(theta11, theta10, thetaT) -> np.ndarray:
    """(G, 3, 3) correlation matrices in the order (S1, T0, T1)"""
    t11, t10, tt = np.broadcast_arrays(
        np.atleast_1d(np.asarray(theta11, dtype=np.float64)),
        np.atleast_1d(np.asarray(theta10, dtype=np.float64)),
        np.atleast_1d(np.asarray(thetaT, dtype=np.float64)),
    )
    out = np.empty(t11.shape + (3, 3))
    out[..., 0, 0] = out[..., 1, 1] = out[..., 2, 2] = 1.0
    out[..., 0, 1] = out[..., 1, 0] = t10
    out[..., 0, 2] = out[..., 2, 0] = t11
    out[..., 1, 2] = out[..., 2, 1] = tt
    return out


def sd_stack(sds: np.ndarray, index: int, grid: np.ndarray) -> np.ndarray:
    """(G, k) copies of `sds` with entry `index` replaced by the grid"""
    out = np.tile(np.asarray(sds, dtype=np.float64), (grid.size, 1))
    out[:, index] = grid
    return out


def draw_sd(
    index: int,
    sds: np.ndarray,
    corr: np.ndarray,
    scatter: np.ndarray,
    n: int,
    upper: float,
    cfg: ChainConfig,
    rng: np.random.Generator,
) -> float:
    """Griddy draw of one sd under a flat prior on (1e-4, upper)"""
    def target(grid: np.ndarray) -> np.ndarray:
        stack = sd_stack(sds, index, grid)
        covs = corr[None, :, :] * stack[:, :, None] * stack[:, None, :]
        return gaussian_scatter_loglik(covs, scatter, n)

    return griddy_gibbs_draw(target, (MIN_SD, upper), cfg, rng)


def correlation_support(prior: PriorSpec, bounds: Tuple[float, float]) -> Tuple[float, float]:
    """Positive-definite interval intersected with the prior support"""
    return support(prior, shrink_interval(bounds))


def trivariate_bounds(state: ChainState, name: str) -> Tuple[float, float]:
    """pd_bound_third for one correlation given the other two"""
    if name == "theta11":
        return pd_bound_third(state.theta10, state.thetaT)
    if name == "theta10":
        return pd_bound_third(state.theta11, state.thetaT)
    return pd_bound_third(state.theta10, state.theta11)


def _clip(value: float, limit: float = START_CORRELATION_LIMIT) -> float:
    return float(np.clip(value, -limit, limit))


def _residual_correlation(a: np.ndarray, b: np.ndarray) -> float:
    if a.size < 3 or np.std(a) == 0 or np.std(b) == 0:
        return 0.0
    return float(np.corrcoef(a, b)[0, 1])


def initial_state(frame: ModelFrame, priors: PriorSet, ci_assumed: bool, fallback_sds: Sequence[float]) -> ChainState:
    """Least-squares means, observed sds and a positive-definite correlation start"""
    b_s1 = initial_coefs(frame.w1, frame.s1)
    b_t0 = initial_coefs(frame.w0, frame.t0)
    b_t1 = initial_coefs(frame.w1, frame.t1)
    coefs = np.vstack([b_s1, b_t0, b_t1])

    sds = np.empty(3)
    residuals = (frame.s1 - frame.w1 @ b_s1, frame.t0 - frame.w0 @ b_t0, frame.t1 - frame.w1 @ b_t1)
    for j, res in enumerate(residuals):
        sd = float(np.std(res, ddof=1)) if res.size > frame.n_coefs + 1 else 0.0
        sds[j] = sd if sd > MIN_SD else float(fallback_sds[j])

    theta11 = _clip(_residual_correlation(residuals[0], residuals[2]))
    if priors.thetaT.is_point_mass:
        theta_t = priors.thetaT.params[0]
    else:
        theta_t = _clip(priors.thetaT.mean())
    if ci_assumed:
        theta10 = theta_t * theta11
    elif priors.theta10.is_point_mass:
        theta10 = priors.theta10.params[0]
    else:
        theta10 = theta_t * theta11
    state = ChainState(coefs=coefs, sds=sds, theta11=theta11, theta10=theta10, thetaT=theta_t)
    state.check()
    return state


class BaseSampler(ISampler):
    """
    Template for both algorithms: the subclass supplies one Gibbs cycle,
    the base class handles seeding, recording and derived quantities.
    """

    name = "base"

    def run(
        self,
        data: TrialDataset,
        spec_template: ModelSpec,
        priors: PriorSet,
        cfg: ChainConfig,
        x_points: Optional[Sequence[Sequence[float]]] = None,
    ) -> PosteriorDraws:
        frame = build_frame(data, spec_template)
        rng = np.random.Generator(np.random.PCG64(cfg.seed))
        ci = spec_template.ci_assumed
        logger.info(
            f"Starting {self.name} chain: design={frame.design.label}, ci={ci}, "
            f"n0={frame.n0}, n1={frame.n1}, n_iter={cfg.n_iter}, seed={cfg.seed}"
        )
        state = initial_state(frame, priors, ci, spec_template.sds)
        self._prepare(frame, state, priors, ci, spec_template)

        retained = cfg.n_retained
        q = frame.n_coefs
        coefs = np.empty((retained, 3, q))
        sds = np.empty((retained, 3))
        corr = np.empty((retained, 3))
        imputed: List[np.ndarray] = []

        for iteration in range(cfg.n_iter):
            snapshot = self._step(state, frame, priors, ci, cfg, rng)
            if not (np.all(np.isfinite(state.coefs)) and np.all(np.isfinite(state.sds))):
                raise ChainDiverged(f"Non-finite parameters at iteration {iteration}")
            if iteration % 500 == 0:
                logger.debug(
                    f"[{self.name}] iter {iteration}: theta11={state.theta11:.3f} "
                    f"theta10={state.theta10:.3f} thetaT={state.thetaT:.3f}"
                )
            k = iteration - cfg.burn_in
            if k < 0:
                continue
            coefs[k] = state.coefs
            sds[k] = state.sds
            corr[k] = (state.theta11, state.theta10, state.thetaT)
            if snapshot is not None and cfg.thin_imputed and k % cfg.thin_imputed == 0:
                imputed.append(snapshot.copy())

        derived_names, derived = derive(frame, coefs, sds, corr, x_points)
        names = frame.mean_names() + tuple(f"sd_{o}" for o in OUTCOMES) + CORRELATION_NAMES + derived_names
        values = np.column_stack([coefs.reshape(retained, -1), sds, corr, derived])
        logger.info(f"Finished {self.name} chain: {retained} retained draws")
        return PosteriorDraws(
            names=names,
            values=values,
            design=frame.design,
            covariate_names=frame.covariate_names,
            ci_assumed=ci,
            algorithm=self.name,
            seed=cfg.seed,
            imputed=tuple(imputed) if imputed else None,
        )

    def _prepare(self, frame: ModelFrame, state: ChainState, priors: PriorSet,
                 ci_assumed: bool, spec_template: ModelSpec) -> None:
        """Hook for per-run precomputation"""

    @abstractmethod
    def _step(self, state: ChainState, frame: ModelFrame, priors: PriorSet, ci_assumed: bool,
              cfg: ChainConfig, rng: np.random.Generator) -> Optional[np.ndarray]:
        """One Gibbs cycle updating `state` in place; may return the completed data"""


def correlation_target(
    name: str,
    state: ChainState,
    scatter: np.ndarray,
    n: int,
    prior: PriorSpec,
    ci_assumed: bool,
) -> Callable[[np.ndarray], np.ndarray]:
    """Completed-data log-likelihood x prior for one correlation on a grid"""
    outer_sd = np.outer(state.sds, state.sds)

    def target(grid: np.ndarray) -> np.ndarray:
        values = {"theta11": state.theta11, "theta10": state.theta10, "thetaT": state.thetaT}
        values[name] = grid
        if ci_assumed:
            values["theta10"] = values["thetaT"] * values["theta11"]
        covs = correlation_stack(values["theta11"], values["theta10"], values["thetaT"]) * outer_sd
        return gaussian_scatter_loglik(covs, scatter, n) + log_prior(prior, grid)

    return target
