"""
Prior distributions backed by scipy.stats frozen distributions
"""
from typing import Optional, Tuple

import numpy as np
from scipy import stats

from core.exceptions import RejectionStarvation
from domain.entities.prior import PriorKind, PriorSpec

MAX_REJECTIONS = 10_000


def frozen(prior: PriorSpec):
    """scipy frozen distribution for a continuous prior"""
    if prior.kind is PriorKind.UNIFORM:
        lo, hi = prior.params
        return stats.uniform(loc=lo, scale=hi - lo)
    if prior.kind is PriorKind.SCALED_BETA:
        a, b, lo, hi = prior.params
        return stats.beta(a, b, loc=lo, scale=hi - lo)
    if prior.kind is PriorKind.VAGUE_NORMAL:
        mean, sd = prior.params
        return stats.norm(loc=mean, scale=sd)
    raise ValueError(f"{prior.label()} has no density")


def log_prior(prior: PriorSpec, values) -> np.ndarray:
    """Log-density of the prior (0 for a point mass at its value, -inf elsewhere)"""
    values = np.asarray(values, dtype=np.float64)
    if prior.is_point_mass:
        return np.where(values == prior.params[0], 0.0, -np.inf)
    return frozen(prior).logpdf(values)


def draw_prior(prior: PriorSpec, rng: np.random.Generator, size: Optional[int] = None):
    """Draw from the prior"""
    if prior.is_point_mass:
        return prior.params[0] if size is None else np.full(size, prior.params[0])
    return frozen(prior).rvs(size=size, random_state=rng)


def support(prior: PriorSpec, bounds: Tuple[float, float]) -> Tuple[float, float]:
    """Intersection of the prior support with an interval"""
    lo, hi = prior.bounds()
    return max(lo, bounds[0]), min(hi, bounds[1])


def draw_truncated(
    prior: PriorSpec,
    bounds: Tuple[float, float],
    rng: np.random.Generator,
    max_rejections: int = MAX_REJECTIONS,
) -> float:
    """
    Draw from the prior restricted to the open interval `bounds` by rejection

    Raises:
        RejectionStarvation: after `max_rejections` consecutive rejections
    """
    lo, hi = bounds
    if prior.is_point_mass:
        value = prior.params[0]
        if lo < value < hi:
            return value
        raise RejectionStarvation(
            f"Fixed value {value} for {prior.target} lies outside the positive-definite interval ({lo:.4f}, {hi:.4f})"
        )
    for _ in range(max_rejections):
        value = float(draw_prior(prior, rng))
        if lo < value < hi:
            return value
    raise RejectionStarvation(
        f"{max_rejections} consecutive draws of {prior.target} fell outside ({lo:.4f}, {hi:.4f})"
    )
