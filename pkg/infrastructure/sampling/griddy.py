"""
Griddy Gibbs draw for a scalar full conditional

The log-target is evaluated on a coarse grid, the highest-mass region is
re-evaluated on a fine grid, and a value is drawn by inverting the
piecewise-constant CDF with uniform jitter inside the chosen cell.
"""
import logging
from typing import Callable, Tuple

import numpy as np
from scipy.special import logsumexp

from core.exceptions import AllMassAtBoundary, NonFiniteTarget
from domain.entities.prior import ChainConfig

logger = logging.getLogger(__name__)

BOUNDARY_MASS = 0.99

LogTarget = Callable[[np.ndarray], np.ndarray]


def _evaluate(log_target: LogTarget, points: np.ndarray) -> np.ndarray:
    values = np.asarray(log_target(points), dtype=np.float64).reshape(points.shape)
    if np.any(np.isnan(values)) or np.any(values == np.inf):
        raise NonFiniteTarget(f"Log-target returned NaN or +inf on [{points[0]:.4g}, {points[-1]:.4g}]")
    return values


def _cells(lo: float, hi: float, n: int) -> Tuple[np.ndarray, np.ndarray]:
    edges = np.linspace(lo, hi, n + 1)
    return edges, 0.5 * (edges[:-1] + edges[1:])


def high_mass_interval(probs: np.ndarray, fraction: float) -> Tuple[int, int]:
    """
    Smallest prefix of probability-sorted cells reaching `fraction`, expanded
    to the contiguous index range it spans
    """
    order = np.argsort(-probs, kind="stable")
    cumulative = np.cumsum(probs[order])
    k = int(np.searchsorted(cumulative, fraction * cumulative[-1], side="left"))
    chosen = order[: min(k, order.size - 1) + 1]
    return int(chosen.min()), int(chosen.max())


def griddy_gibbs_draw(
    log_target: LogTarget,
    support: Tuple[float, float],
    cfg: ChainConfig,
    rng: np.random.Generator,
) -> float:
    """
    Draw one value from exp(log_target) restricted to `support`

    Args:
        log_target: vectorized unnormalized log-density
        support: open interval (lo, hi)
        cfg: grid sizes and refinement fraction
        rng: random generator

    Raises:
        NonFiniteTarget: NaN/+inf values, or no finite value on the coarse grid
        AllMassAtBoundary: more than 99% of the coarse mass in the two outermost cells
    """
    lo, hi = float(support[0]), float(support[1])
    if not lo < hi:
        raise ValueError(f"Empty support ({lo}, {hi})")

    edges, mids = _cells(lo, hi, cfg.grid_coarse)
    coarse = _evaluate(log_target, mids)
    total = logsumexp(coarse)
    if not np.isfinite(total):
        raise NonFiniteTarget(f"Log-target is -inf on the whole grid over ({lo:.4g}, {hi:.4g})")
    probs = np.exp(coarse - total)
    if probs[0] + probs[-1] > BOUNDARY_MASS:
        raise AllMassAtBoundary(f"{probs[0] + probs[-1]:.3f} of the mass sits in the end cells of ({lo:.4g}, {hi:.4g})")

    i_lo, i_hi = high_mass_interval(probs, cfg.fine_fraction)
    fine_edges, fine_mids = _cells(edges[i_lo], edges[i_hi + 1], cfg.grid_fine)
    fine = _evaluate(log_target, fine_mids)

    # piecewise-constant density: outer coarse cells + refined interval
    left = np.concatenate([edges[:i_lo], fine_edges[:-1], edges[i_hi + 1:-1]])
    width = np.concatenate([np.diff(edges)[:i_lo], np.diff(fine_edges), np.diff(edges)[i_hi + 1:]])
    log_mass = np.concatenate([coarse[:i_lo], fine, coarse[i_hi + 1:]]) + np.log(width)
    norm = logsumexp(log_mass)
    if not np.isfinite(norm):
        raise NonFiniteTarget("Refined grid carries no finite mass")
    mass = np.exp(log_mass - norm)
    cdf = np.cumsum(mass)

    cell = int(np.searchsorted(cdf, rng.random() * cdf[-1], side="right"))
    cell = min(cell, cdf.size - 1)
    value = left[cell] + rng.random() * width[cell]
    if not lo < value < hi:
        value = left[cell] + 0.5 * width[cell]
    return float(value)
