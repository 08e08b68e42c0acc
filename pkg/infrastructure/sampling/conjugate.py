"""
Conjugate normal update for the regression coefficients of a multi-outcome model
"""
import numpy as np
from scipy.linalg import cho_solve, solve_triangular

from domain.services.mvn import cholesky


def draw_regression_coefs(
    design: np.ndarray,
    outcomes: np.ndarray,
    covariance: np.ndarray,
    prior_mean: float,
    prior_sd: float,
    rng: np.random.Generator,
) -> np.ndarray:
    """
    Draw coefficients B (k outcomes x q regressors) of Y = W B^T + E, E ~ N(0, Σ)

    Seemingly-unrelated-regression form with independent Normal(prior_mean,
    prior_sd^2) priors: precision kron(Σ^-1, W^T W) + I / prior_sd^2.
    """
    w = np.asarray(design, dtype=np.float64)
    y = np.asarray(outcomes, dtype=np.float64)
    k = y.shape[1]
    q = w.shape[1]
    sigma_inv = np.linalg.inv(covariance)
    prior_precision = 1.0 / prior_sd ** 2
    precision = np.kron(sigma_inv, w.T @ w) + prior_precision * np.eye(k * q)
    rhs = (w.T @ y @ sigma_inv).flatten(order="F") + prior_precision * prior_mean
    factor = cholesky(precision)
    mean = cho_solve((factor, True), rhs)
    draw = mean + solve_triangular(factor.T, rng.standard_normal(k * q), lower=False)
    return draw.reshape((q, k), order="F").T
