"""
Model frame: design matrices and observed blocks of each arm for one fit
"""
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from core.exceptions import ConfigurationError
from domain.entities.model_spec import OUTCOMES, Design, ModelSpec
from domain.entities.trial import TrialDataset
from domain.services.surrogacy import endpoint_transform

MIN_SD = 1e-4
SD_SUPPORT_FACTOR = 10.0


@dataclass(frozen=True)
class ModelFrame:
    """Observed data of both arms laid out for the samplers"""
    design: Design
    coef_names: Tuple[str, ...]
    covariate_names: Tuple[str, ...]
    w0: np.ndarray
    t0: np.ndarray
    w1: np.ndarray
    s1: np.ndarray
    t1: np.ndarray
    x_all: np.ndarray

    @property
    def n0(self) -> int:
        return int(self.t0.size)

    @property
    def n1(self) -> int:
        return int(self.s1.size)

    @property
    def n_coefs(self) -> int:
        return len(self.coef_names)

    def mean_names(self) -> Tuple[str, ...]:
        return tuple(f"beta_{o}_{c}" for o in OUTCOMES for c in self.coef_names)

    def sd_upper_bounds(self, fallback: Sequence[float]) -> np.ndarray:
        """Upper end of each sd support: 10 x the observed sd of the outcome"""
        observed = (self.s1, self.t0, self.t1)
        out = np.empty(3)
        for j, values in enumerate(observed):
            sd = float(np.std(values, ddof=1)) if values.size > 1 else 0.0
            out[j] = SD_SUPPORT_FACTOR * (sd if sd > MIN_SD else float(fallback[j]))
        return out


def build_frame(data: TrialDataset, spec_template: ModelSpec) -> ModelFrame:
    """
    Design matrices for the requested design

    Designs 3/4 work on the difference-from-baseline endpoint; designs 1/3 use
    an intercept-only mean, designs 2/4 regress on every covariate.
    """
    design = spec_template.design
    if design.conditional and not data.covariate_names:
        raise ConfigurationError(f"Design {design.label} needs at least one covariate")
    data = endpoint_transform(data, design.endpoint)
    arms = data.observed_arms()
    if design.conditional:
        coef_names = ("intercept",) + data.covariate_names

        def matrix(x: np.ndarray) -> np.ndarray:
            return np.column_stack([np.ones(x.shape[0]), x])
    else:
        coef_names = ("intercept",)

        def matrix(x: np.ndarray) -> np.ndarray:
            return np.ones((x.shape[0], 1))

    return ModelFrame(
        design=design,
        coef_names=coef_names,
        covariate_names=data.covariate_names,
        w0=matrix(arms.x0),
        t0=arms.t0,
        w1=matrix(arms.x1),
        s1=arms.s1,
        t1=arms.t1,
        x_all=data.x.copy(),
    )


def initial_coefs(w: np.ndarray, y: np.ndarray, fallback: Optional[float] = 0.0) -> np.ndarray:
    """Least-squares starting values (zeros when the arm is empty or rank deficient)"""
    q = w.shape[1]
    if y.size <= q:
        start = np.zeros(q)
        start[0] = float(np.mean(y)) if y.size else fallback
        return start
    coefs, *_ = np.linalg.lstsq(w, y, rcond=None)
    return coefs
