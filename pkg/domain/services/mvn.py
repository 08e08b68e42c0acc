"""
Gaussian Algebra - Factorización, condicionales, densidades y cotas de definición positiva
"""
from typing import Sequence, Tuple

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve, solve_triangular

from core.exceptions import IndexOutOfRange, NotPositiveDefinite
from domain.entities.gaussian import GaussianJoint

PIVOT_TOLERANCE = 1e-12
PD_SHRINK = 1e-9
LOG_2PI = float(np.log(2.0 * np.pi))


def cholesky(m) -> np.ndarray:
    """
    Factor triangular inferior L con L @ L.T = m

    Raises:
        NotPositiveDefinite: si algún pivote es <= 1e-12 * max(diag(m))
    """
    matrix = np.asarray(m, dtype=np.float64)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise NotPositiveDefinite(f"Expected a square matrix, got shape {matrix.shape}")
    try:
        factor = np.linalg.cholesky(matrix)
    except np.linalg.LinAlgError as e:
        raise NotPositiveDefinite(f"Cholesky factorization failed: {e}") from e
    scale = float(np.max(np.diag(matrix)))
    pivots = np.diag(factor) ** 2
    if not scale > 0 or np.any(pivots <= PIVOT_TOLERANCE * scale):
        raise NotPositiveDefinite(f"Smallest Cholesky pivot {pivots.min():.3e} below tolerance")
    return factor


def _check_indices(dim: int, observed_idx: Sequence[int]) -> Tuple[list, list]:
    observed = [int(i) for i in observed_idx]
    if not observed:
        raise IndexOutOfRange("Observed index set is empty")
    if len(set(observed)) != len(observed):
        raise IndexOutOfRange(f"Repeated indices in {observed}")
    if any(i < 0 or i >= dim for i in observed):
        raise IndexOutOfRange(f"Indices {observed} out of range for dimension {dim}")
    missing = [i for i in range(dim) if i not in observed]
    if not missing:
        raise IndexOutOfRange("Observed index set must be a proper subset")
    return missing, observed


def regression_operator(cov, missing_idx: Sequence[int], observed_idx: Sequence[int]) -> Tuple[np.ndarray, np.ndarray]:
    """
    Coeficientes Σ12 Σ22^-1 y covarianza condicional Σ11 - Σ12 Σ22^-1 Σ21

    Permite imputar muchos registros con el mismo patrón de faltantes
    resolviendo el sistema una sola vez.
    """
    cov = np.asarray(cov, dtype=np.float64)
    m, o = list(missing_idx), list(observed_idx)
    s12 = cov[np.ix_(m, o)]
    s22 = cov[np.ix_(o, o)]
    cholesky(s22)
    try:
        factor = cho_factor(s22, lower=True)
    except LinAlgError as e:
        raise NotPositiveDefinite(f"Observed block is not positive definite: {e}") from e
    coefs = cho_solve(factor, s12.T).T
    cond_cov = cov[np.ix_(m, m)] - coefs @ s12.T
    return coefs, 0.5 * (cond_cov + cond_cov.T)


def conditional_gaussian(joint: GaussianJoint, observed_idx: Sequence[int], observed_vals) -> GaussianJoint:
    """
    Distribución de los índices restantes dado que observed_idx = observed_vals

    Returns:
        GaussianJoint con media μ1 + Σ12 Σ22^-1 (x2 - μ2) y covarianza
        Σ11 - Σ12 Σ22^-1 Σ21 (no depende de observed_vals)
    """
    missing, observed = _check_indices(joint.dim, observed_idx)
    values = np.asarray(observed_vals, dtype=np.float64).reshape(len(observed))
    coefs, cond_cov = regression_operator(joint.covariance, missing, observed)
    cond_mean = joint.mean[missing] + coefs @ (values - joint.mean[observed])
    labels = tuple(joint.labels[i] for i in missing) if joint.labels else None
    return GaussianJoint(cond_mean, cond_cov, labels)


def pd_bound_third(r12: float, r13: float) -> Tuple[float, float]:
    """
    Intervalo abierto de r23 que mantiene definida positiva la matriz 3x3

    r12 * r13 ± sqrt((1 - r12^2)(1 - r13^2))
    """
    center = r12 * r13
    half = float(np.sqrt(max(0.0, (1.0 - r12 * r12) * (1.0 - r13 * r13))))
    return center - half, center + half


def shrink_interval(bounds: Tuple[float, float], eps: float = PD_SHRINK) -> Tuple[float, float]:
    """Contrae el intervalo eps hacia adentro en ambos extremos"""
    lo, hi = bounds
    return lo + eps, hi - eps


def log_density(joint: GaussianJoint, x) -> np.ndarray:
    """
    Log-densidad normal multivariada

    Acepta un vector (devuelve escalar) o una matriz (n, d) (devuelve vector).
    """
    points = np.asarray(x, dtype=np.float64)
    single = points.ndim == 1
    points = np.atleast_2d(points)
    if points.shape[1] != joint.dim:
        raise IndexOutOfRange(f"Point dimension {points.shape[1]} does not match {joint.dim}")
    factor = cholesky(joint.covariance)
    z = solve_triangular(factor, (points - joint.mean).T, lower=True)
    log_det = 2.0 * np.sum(np.log(np.diag(factor)))
    values = -0.5 * (joint.dim * LOG_2PI + log_det + np.sum(z * z, axis=0))
    return float(values[0]) if single else values


def gaussian_scatter_loglik(covariances, scatter, n: int) -> np.ndarray:
    """
    Log-verosimilitud de datos completos centrados, salvo constante

    -n/2 log|Σ| - 1/2 tr(Σ^-1 S) para una pila (k, d, d) de covarianzas
    candidatas. Las candidatas no definidas positivas devuelven -inf.
    """
    covs = np.asarray(covariances, dtype=np.float64)
    single = covs.ndim == 2
    if single:
        covs = covs[None, :, :]
    sign, log_det = np.linalg.slogdet(covs)
    out = np.full(covs.shape[0], -np.inf)
    ok = sign > 0
    if np.any(ok):
        eig_min = np.linalg.eigvalsh(covs[ok]).min(axis=1)
        valid = np.flatnonzero(ok)[eig_min > 0]
        if valid.size:
            solved = np.linalg.solve(covs[valid], np.broadcast_to(scatter, covs[valid].shape))
            trace = np.einsum("kii->k", solved)
            out[valid] = -0.5 * n * log_det[valid] - 0.5 * trace
    return float(out[0]) if single else out
