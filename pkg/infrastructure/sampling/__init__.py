"""MCMC samplers, griddy Gibbs and diagnostics"""

from .convergence import convergence_report, split_rhat
from .griddy import griddy_gibbs_draw
from .imputation import ImputationSampler
from .observed_data import ObservedDataSampler
from .sensitivity import sensitivity_scan

SAMPLERS = {
    ImputationSampler.name: ImputationSampler,
    ObservedDataSampler.name: ObservedDataSampler,
}

__all__ = [
    "convergence_report",
    "split_rhat",
    "griddy_gibbs_draw",
    "ImputationSampler",
    "ObservedDataSampler",
    "sensitivity_scan",
    "SAMPLERS",
]
