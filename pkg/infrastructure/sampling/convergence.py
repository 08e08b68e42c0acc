"""
Convergence report: trace series and split-chain potential scale reduction
"""
import logging

import numpy as np

from core.exceptions import TooFewDraws
from domain.entities.posterior import ConvergenceReport, PosteriorDraws

logger = logging.getLogger(__name__)

MIN_DRAWS = 100
RHAT_THRESHOLD = 1.1


def split_rhat(values: np.ndarray) -> float:
    """
    Potential scale reduction of a single chain split into two halves

    A constant series gives 1; zero within-half variance with distinct half
    means gives +inf.
    """
    values = np.asarray(values, dtype=np.float64)
    half = values.size // 2
    halves = np.vstack([values[:half], values[-half:]])
    within = float(np.mean(np.var(halves, axis=1, ddof=1)))
    between = half * float(np.var(np.mean(halves, axis=1), ddof=1))
    if within == 0.0:
        return 1.0 if between == 0.0 else float("inf")
    return float(np.sqrt((between / within + half - 1) / half))


def convergence_report(draws: PosteriorDraws, threshold: float = RHAT_THRESHOLD) -> ConvergenceReport:
    """
    Raises:
        TooFewDraws: fewer than 100 retained draws
    """
    if len(draws) < MIN_DRAWS:
        raise TooFewDraws(f"Convergence report needs at least {MIN_DRAWS} draws, got {len(draws)}")
    rhat = {name: split_rhat(draws.column(name)) for name in draws.names}
    report = ConvergenceReport(
        names=draws.names,
        iterations=np.arange(len(draws)),
        trace=np.asarray(draws.values),
        rhat=rhat,
        threshold=threshold,
    )
    if report.flagged:
        logger.warning(f"R-hat above {threshold} for: {', '.join(report.flagged)}")
    return report
