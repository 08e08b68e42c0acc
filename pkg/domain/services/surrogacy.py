"""
Surrogacy Service - Métricas gamma0/gamma1, restricción de independencia
condicional y transformaciones del resultado
"""
import logging
from dataclasses import replace
from functools import singledispatch
from typing import Dict, Mapping, Optional, Sequence, Tuple

import numpy as np

from core.exceptions import ConfigurationError, DegenerateVariance, MissingBaseline
from domain.entities.covariate_model import BernoulliCovariate, NormalCovariate
from domain.entities.gaussian import CorrelationState, GaussianJoint
from domain.entities.metrics import Scope, ValidationMetrics, Verdict
from domain.entities.model_spec import OUTCOMES, Design, EndpointMode, ModelSpec
from domain.entities.trial import CounterfactualTable, TrialDataset, TrialRecord

logger = logging.getLogger(__name__)

SQUARED_SUFFIX = "_sq"


def gamma_from_moments(mean, cov) -> Tuple[float, float]:
    """
    (gamma0, gamma1) de la media y covarianza de (S(1), T(0), T(1))

    gamma1 = (Cov(T1, S1) - Cov(T0, S1)) / Var(S1)
    gamma0 = (mu_T1 - mu_T0) - gamma1 * mu_S1
    """
    mean = np.asarray(mean, dtype=np.float64)
    cov = np.asarray(cov, dtype=np.float64)
    var_s = cov[0, 0]
    if not var_s > 0:
        raise DegenerateVariance(f"Var(S(1)) = {var_s} is not strictly positive")
    gamma1 = (cov[2, 0] - cov[1, 0]) / var_s
    gamma0 = (mean[2] - mean[1]) - gamma1 * mean[0]
    return float(gamma0), float(gamma1)


def gamma_from_marginal(spec: ModelSpec) -> ValidationMetrics:
    """
    Métricas marginales de un modelo trivariado sin efectos de covariables

    Raises:
        ConfigurationError: si el modelo tiene pendientes distintas de cero
        DegenerateVariance: si Var(S(1)) <= 0
    """
    if spec.has_covariate_effects():
        raise ConfigurationError("gamma_from_marginal needs a spec without covariate effects; collapse it first")
    gamma0, gamma1 = gamma_from_moments(spec.intercepts, spec.covariance())
    return ValidationMetrics(gamma0=gamma0, gamma1=gamma1, scope=Scope.MARGINAL)


def gamma_conditional(spec: ModelSpec, x: Sequence[float]) -> ValidationMetrics:
    """
    Métricas condicionales en X = x

    gamma1 = (theta11 eps_T1 - theta10 eps_T0) / eps_S1 no depende de x;
    gamma0(x) = (mu_T1|x - mu_T0|x) - gamma1 mu_S1|x
    """
    if not spec.design.conditional:
        raise ConfigurationError(f"Design {spec.design.label} is not conditional on X")
    eps_s, eps_t0, eps_t1 = (float(v) for v in spec.sds)
    if not eps_s > 0:
        raise DegenerateVariance("Conditional sd of S(1) is not strictly positive")
    corr = spec.corr
    gamma1 = (corr.theta11 * eps_t1 - corr.theta10 * eps_t0) / eps_s
    means = spec.means_at(x)
    gamma0 = (means[2] - means[1]) - gamma1 * means[0]
    x_tuple = tuple(np.atleast_1d(np.asarray(x, dtype=np.float64)))
    return ValidationMetrics(gamma0=float(gamma0), gamma1=float(gamma1), scope=Scope.CONDITIONAL, x=x_tuple)


def apply_ci_constraint(thetaT: float, theta11: float) -> float:
    """theta10 bajo S(1) ⊥ T(0) | T(1): siempre dentro de la cota de definición positiva"""
    return thetaT * theta11


def ci_deviation(spec: ModelSpec) -> float:
    """Desviación de la independencia condicional en la escala del modelo"""
    corr = spec.corr
    return corr.theta10 - corr.thetaT * corr.theta11


def _scalar_normal_covariate(spec: ModelSpec) -> NormalCovariate:
    if spec.n_covariates != 1 or not isinstance(spec.covariate_model, NormalCovariate):
        raise ConfigurationError("A scalar Normal covariate model is required")
    return spec.covariate_model


def joint_with_covariate(spec: ModelSpec) -> GaussianJoint:
    """
    Distribución conjunta de (S(1), T(0), T(1), X) para X normal escalar
    """
    covariate = _scalar_normal_covariate(spec)
    b = spec.slopes[:, 0]
    var_x = covariate.sd ** 2
    mean = np.append(spec.intercepts + b * covariate.mean, covariate.mean)
    cov = np.empty((4, 4))
    cov[:3, :3] = spec.covariance() + np.outer(b, b) * var_x
    cov[:3, 3] = cov[3, :3] = b * var_x
    cov[3, 3] = var_x
    return GaussianJoint(mean, cov, OUTCOMES + (spec.covariate_names[0],))


def _marginal_design(design: Design) -> Design:
    return Design.from_parts(design.endpoint, conditional=False)


def spec_from_joint(joint: GaussianJoint, design: Design) -> ModelSpec:
    """Modelo trivariado marginal a partir de una normal conjunta"""
    corr = joint.correlation()
    return ModelSpec(
        design=design,
        intercepts=joint.mean,
        slopes=np.zeros((3, 0)),
        sds=joint.sds,
        corr=CorrelationState(theta11=corr[0, 2], theta10=corr[0, 1], thetaT=corr[1, 2]),
        ci_assumed=False,
    )


def collapse_over_x(spec: ModelSpec) -> ModelSpec:
    """
    Modelo marginal trivariado integrando X normal

    Medias intercept + slope * delta4, varianzas eps^2 + slope^2 sigma_X^2,
    covarianzas theta eps eps + slope slope sigma_X^2.
    """
    if not spec.has_covariate_effects():
        return ModelSpec(
            design=_marginal_design(spec.design),
            intercepts=spec.intercepts,
            slopes=np.zeros((3, 0)),
            sds=spec.sds,
            corr=spec.corr,
            ci_assumed=spec.ci_assumed,
        )
    joint = joint_with_covariate(spec).marginal([0, 1, 2])
    return spec_from_joint(joint, _marginal_design(spec.design))


@singledispatch
def endpoint_transform(target, mode: EndpointMode = EndpointMode.DIFF_FROM_BASELINE, **kwargs):
    """
    Cambia la definición del resultado verdadero: T^D(z) = T(z) - X_basal
    """
    raise TypeError(f"endpoint_transform does not support {type(target).__name__}")


@endpoint_transform.register
def _(target: ModelSpec, mode: EndpointMode = EndpointMode.DIFF_FROM_BASELINE, **kwargs) -> ModelSpec:
    mode = EndpointMode(mode)
    if mode is target.design.endpoint:
        return target
    if target.baseline_name is None:
        raise MissingBaseline("Spec has no baseline covariate for the difference endpoint")
    if isinstance(target.covariate_model, BernoulliCovariate):
        raise MissingBaseline("A binary covariate cannot serve as baseline for a continuous endpoint")
    index = target.covariate_names.index(target.baseline_name)
    shift = -1.0 if mode is EndpointMode.DIFF_FROM_BASELINE else 1.0
    slopes = np.array(target.slopes, copy=True)
    slopes[1, index] += shift
    slopes[2, index] += shift
    return replace(
        target,
        design=Design.from_parts(mode, target.design.conditional),
        slopes=slopes,
    )


def _shift_outcomes(t0, t1, baseline, mode: EndpointMode):
    sign = -1.0 if mode is EndpointMode.DIFF_FROM_BASELINE else 1.0
    return t0 + sign * baseline, t1 + sign * baseline


@endpoint_transform.register
def _(target: TrialDataset, mode: EndpointMode = EndpointMode.DIFF_FROM_BASELINE, **kwargs) -> TrialDataset:
    mode = EndpointMode(mode)
    if mode is EndpointMode.ORIGINAL:
        return target
    baseline = target.x[:, target.baseline_index()]
    t0, t1 = _shift_outcomes(target.t0, target.t1, baseline, mode)
    return replace(target, t0=t0, t1=t1)


@endpoint_transform.register
def _(target: CounterfactualTable, mode: EndpointMode = EndpointMode.DIFF_FROM_BASELINE, **kwargs) -> CounterfactualTable:
    mode = EndpointMode(mode)
    if mode is EndpointMode.ORIGINAL:
        return target
    if target.baseline_name is None:
        raise MissingBaseline("Counterfactual table has no baseline covariate")
    baseline = target.x[:, target.covariate_names.index(target.baseline_name)]
    t0, t1 = _shift_outcomes(target.t0, target.t1, baseline, mode)
    return replace(target, t0=t0, t1=t1)


@endpoint_transform.register
def _(target: TrialRecord, mode: EndpointMode = EndpointMode.DIFF_FROM_BASELINE,
      baseline_index: int = 0, **kwargs) -> TrialRecord:
    mode = EndpointMode(mode)
    if mode is EndpointMode.ORIGINAL:
        return target
    if not target.x or not 0 <= baseline_index < len(target.x):
        raise MissingBaseline(f"Record {target.id} has no baseline covariate")
    baseline = target.x[baseline_index]
    return replace(
        target,
        t0=None if target.t0 is None else target.t0 - baseline,
        t1=None if target.t1 is None else target.t1 - baseline,
    )


def surrogate_verdict(gamma0_interval: Tuple[float, float], gamma1_interval: Tuple[float, float]) -> Verdict:
    """
    Válido si el intervalo de gamma0 contiene 0 y el de gamma1 lo excluye
    """
    lo0, hi0 = gamma0_interval
    lo1, hi1 = gamma1_interval
    if lo0 <= 0.0 <= hi0 and not lo1 <= 0.0 <= hi1:
        return Verdict.VALID
    return Verdict.INVALID


def complete_covariates(names: Sequence[str], values: Mapping[str, float]) -> Tuple[float, ...]:
    """
    Vector de covariables en el orden del modelo

    Una covariable '<nombre>_sq' ausente se completa como <nombre>^2.

    Raises:
        ConfigurationError: si falta alguna covariable o sobra alguna
    """
    unknown = set(values) - set(names)
    if unknown:
        raise ConfigurationError(f"Unknown covariates {sorted(unknown)}; model has {list(names)}")
    out = []
    missing = []
    for name in names:
        if name in values:
            out.append(float(values[name]))
        elif name.endswith(SQUARED_SUFFIX) and name[: -len(SQUARED_SUFFIX)] in values:
            out.append(float(values[name[: -len(SQUARED_SUFFIX)]]) ** 2)
        else:
            missing.append(name)
    if missing:
        raise ConfigurationError(f"Missing covariate values for {missing}")
    return tuple(out)


def covariate_label(names: Sequence[str], x: Sequence[float]) -> str:
    """Etiqueta 'nombre=valor,...' omitiendo las columnas cuadráticas derivadas"""
    parts: Dict[str, float] = dict(zip(names, x))
    shown = [
        f"{n}={v:g}" for n, v in parts.items()
        if not (n.endswith(SQUARED_SUFFIX) and n[: -len(SQUARED_SUFFIX)] in parts)
    ]
    return ",".join(shown)


def marginal_metrics(spec: ModelSpec) -> Optional[ValidationMetrics]:
    """Métricas marginales exactas cuando X es normal o no tiene efecto"""
    if spec.has_covariate_effects() and not isinstance(spec.covariate_model, NormalCovariate):
        return None
    return gamma_from_marginal(collapse_over_x(spec))


def default_covariate_points(names: Sequence[str], x: np.ndarray) -> list:
    """
    Covariate vectors where gamma0(x) is reported when none are requested

    A single binary covariate gives x = 0 and x = 1; otherwise the sample mean,
    with '<name>_sq' columns completed as the squared mean of '<name>'.
    """
    x = np.asarray(x, dtype=np.float64)
    if x.shape[0] == 0 or not len(names):
        return []
    if len(names) == 1 and np.all(np.isin(x[:, 0], (0.0, 1.0))):
        return [(0.0,), (1.0,)]
    means = dict(zip(names, x.mean(axis=0)))
    base = {
        n: float(v) for n, v in means.items()
        if not (n.endswith(SQUARED_SUFFIX) and n[: -len(SQUARED_SUFFIX)] in means)
    }
    return [complete_covariates(names, base)]
