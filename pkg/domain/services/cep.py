"""
CEP Service - Curvas de predictividad del efecto causal, condicionales y marginales
"""
from typing import Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial.hermite import hermgauss
from scipy.special import logsumexp

from core.exceptions import ConfigurationError, QuadratureFailure
from domain.entities.covariate_model import (
    BernoulliCovariate,
    CovariateModel,
    EmpiricalCovariate,
    NormalCovariate,
)
from domain.entities.metrics import CepCurve, Scope, ValidationMetrics
from domain.entities.model_spec import ModelSpec
from domain.services.surrogacy import gamma_conditional, gamma_from_marginal

HERMITE_NODES = 64
GRID_POINTS = 41
GRID_HALF_WIDTH = 3.0
BAND_LEVEL = 0.95


def covariate_nodes(model: CovariateModel) -> Tuple[np.ndarray, np.ndarray]:
    """
    Nodos (K, p) y log-pesos (K,) que representan la distribución de X

    Normal: Gauss-Hermite de 64 nodos; Bernoulli: dos términos exactos;
    empírica: promedio sobre la muestra.
    """
    if isinstance(model, NormalCovariate):
        t, w = hermgauss(HERMITE_NODES)
        nodes = model.mean + np.sqrt(2.0) * model.sd * t
        return nodes[:, None], np.log(w) - 0.5 * np.log(np.pi)
    if isinstance(model, BernoulliCovariate):
        with np.errstate(divide="ignore"):
            log_w = np.log(np.array([1.0 - model.p, model.p]))
        return np.array([[0.0], [1.0]]), log_w
    if isinstance(model, EmpiricalCovariate):
        n = model.sample.shape[0]
        return np.asarray(model.sample), np.full(n, -np.log(n))
    raise ConfigurationError("A covariate model or an empirical covariate sample is required")


def s1_moments(spec: ModelSpec, covariate_model: Optional[CovariateModel] = None) -> Tuple[float, float]:
    """Media y desviación marginal de S(1)"""
    eps = float(spec.sds[0])
    if not spec.has_covariate_effects():
        return float(spec.intercepts[0]), eps
    model = covariate_model or spec.covariate_model
    nodes, log_w = covariate_nodes(model)
    weights = np.exp(log_w - logsumexp(log_w))
    mu = spec.intercepts[0] + nodes @ spec.slopes[0]
    mean = float(weights @ mu)
    var = eps ** 2 + float(weights @ (mu - mean) ** 2)
    return mean, float(np.sqrt(var))


def default_s_grid(mean: float, sd: float, n_points: int = GRID_POINTS) -> np.ndarray:
    """Rejilla equiespaciada sobre media ± 3 sd"""
    return np.linspace(mean - GRID_HALF_WIDTH * sd, mean + GRID_HALF_WIDTH * sd, n_points)


def fit_cep_line(s_grid, values) -> Tuple[float, float]:
    """(gamma0, gamma1) por mínimos cuadrados sobre la rejilla"""
    slope, intercept = np.polyfit(np.asarray(s_grid, dtype=np.float64), np.asarray(values, dtype=np.float64), 1)
    return float(intercept), float(slope)


def marginal_cep_values(
    intercepts: np.ndarray,
    slopes: np.ndarray,
    sd_s: float,
    gamma1: float,
    nodes: np.ndarray,
    log_weights: np.ndarray,
    s_grid: np.ndarray,
) -> np.ndarray:
    """
    E(T(1) - T(0) | S(1) = s) promediando sobre f(x | s) ∝ f(s | x) f(x)

    Raises:
        QuadratureFailure: si los pesos posteriores degeneran
    """
    mu = intercepts[None, :] + nodes @ slopes.T
    cond_effect = (mu[:, 2] - mu[:, 1])[:, None] + gamma1 * (s_grid[None, :] - mu[:, 0][:, None])
    z = (s_grid[None, :] - mu[:, 0][:, None]) / sd_s
    log_post = log_weights[:, None] - 0.5 * z * z
    norm = logsumexp(log_post, axis=0)
    if not np.all(np.isfinite(norm)):
        raise QuadratureFailure("Posterior covariate weights vanish on the s-grid")
    weights = np.exp(log_post - norm[None, :])
    values = np.sum(weights * cond_effect, axis=0)
    if not np.all(np.isfinite(values)):
        raise QuadratureFailure("Marginal CEP is not finite")
    return values


def marginalize_cep(
    spec: ModelSpec,
    s_grid: Optional[np.ndarray] = None,
    covariate_model: Optional[CovariateModel] = None,
) -> CepCurve:
    """
    CEP marginal integrando la covariable condicional a S(1) = s

    Se resume con la recta de mínimos cuadrados sobre la rejilla.
    """
    if s_grid is None:
        s_grid = default_s_grid(*s1_moments(spec, covariate_model))
    s_grid = np.asarray(s_grid, dtype=np.float64)
    if spec.n_covariates == 0:
        return CepCurve.from_line(gamma_from_marginal(spec), s_grid)
    model = covariate_model or spec.covariate_model
    nodes, log_w = covariate_nodes(model)
    eps_s, eps_t0, eps_t1 = (float(v) for v in spec.sds)
    gamma1 = (spec.corr.theta11 * eps_t1 - spec.corr.theta10 * eps_t0) / eps_s
    values = marginal_cep_values(spec.intercepts, spec.slopes, float(spec.sds[0]), gamma1, nodes, log_w, s_grid)
    return CepCurve(s_grid, values, values, values, "marginal")


def marginal_line(spec: ModelSpec, s_grid: Optional[np.ndarray] = None,
                  covariate_model: Optional[CovariateModel] = None) -> ValidationMetrics:
    """gamma0 y gamma1 marginales de la recta ajustada a la CEP marginal"""
    curve = marginalize_cep(spec, s_grid, covariate_model)
    gamma0, gamma1 = fit_cep_line(curve.s_grid, curve.expected_diff)
    return ValidationMetrics(gamma0=gamma0, gamma1=gamma1, scope=Scope.MARGINAL)


def cep_from_spec(spec: ModelSpec, s_grid: Optional[np.ndarray] = None,
                  x: Optional[Sequence[float]] = None) -> CepCurve:
    """CEP de un solo juego de parámetros (condicional en x si se entrega)"""
    if x is None:
        return marginalize_cep(spec, s_grid)
    metrics = gamma_conditional(spec, x)
    if s_grid is None:
        s_grid = default_s_grid(float(spec.means_at(x)[0]), float(spec.sds[0]))
    return CepCurve.from_line(metrics, np.asarray(s_grid, dtype=np.float64), conditioning="conditional")


def cep_band_from_draws(
    s_grid,
    gamma0_draws,
    gamma1_draws,
    conditioning: str = "marginal",
    x: Optional[Sequence[float]] = None,
    level: float = BAND_LEVEL,
) -> CepCurve:
    """
    Media puntual y banda creíble de colas iguales a partir de draws (gamma0, gamma1)
    """
    s = np.asarray(s_grid, dtype=np.float64)
    g0 = np.asarray(gamma0_draws, dtype=np.float64).reshape(-1)
    g1 = np.asarray(gamma1_draws, dtype=np.float64).reshape(-1)
    if g0.size == 0 or g0.size != g1.size:
        raise ValueError("gamma0 and gamma1 draws must be non-empty and aligned")
    lines = g0[:, None] + g1[:, None] * s[None, :]
    tail = 0.5 * (1.0 - level)
    lower, upper = np.quantile(lines, [tail, 1.0 - tail], axis=0)
    mean = np.mean(lines, axis=0)
    if g0.size == 1:
        lower = upper = mean
    x_tuple = None if x is None else tuple(float(v) for v in x)
    return CepCurve(s, mean, np.minimum(lower, mean), np.maximum(upper, mean), conditioning, x_tuple)
