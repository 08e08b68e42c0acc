"""
Compute CEP Use Case - Curvas de predictividad del efecto causal desde draws
"""
import logging
from typing import List, Optional, Tuple

import numpy as np

from application.dtos.fit_dto import CepInput, CepOutput
from core.exceptions import ConfigurationError, DataFormatError
from domain.entities.metrics import CepCurve
from domain.entities.model_spec import OUTCOMES
from domain.entities.posterior import PosteriorDraws
from domain.interfaces.dataset_store import IDatasetStore
from domain.interfaces.plotter import IPlotter
from domain.interfaces.result_writer import IResultWriter
from domain.services.cep import cep_band_from_draws, default_s_grid
from domain.services.surrogacy import complete_covariates, covariate_label

logger = logging.getLogger(__name__)


def _coef_matrix(draws: PosteriorDraws) -> Optional[np.ndarray]:
    """(N, 3, q) mean coefficients, or None when the file lacks them"""
    coef_names = ("intercept",) + draws.covariate_names
    names = [f"beta_{o}_{c}" for o in OUTCOMES for c in coef_names]
    if not all(draws.has(n) for n in names):
        return None
    values = np.column_stack([draws.column(n) for n in names])
    return values.reshape(len(draws), 3, len(coef_names))


def gamma0_at(draws: PosteriorDraws, x) -> np.ndarray:
    """
    Per-draw gamma0(x), from a stored column or from the mean coefficients

    Raises:
        DataFormatError: the draws hold neither
    """
    label = covariate_label(draws.covariate_names, x)
    if draws.has(f"gamma0[{label}]"):
        return draws.column(f"gamma0[{label}]")
    coefs = _coef_matrix(draws)
    if coefs is None:
        raise DataFormatError(f"Draws hold neither gamma0[{label}] nor the mean coefficients")
    mu = coefs @ np.concatenate([[1.0], np.asarray(x, dtype=np.float64)])
    return (mu[:, 2] - mu[:, 1]) - draws.column("gamma1") * mu[:, 0]


def s1_center(draws: PosteriorDraws, x=None) -> Tuple[float, float]:
    """Posterior mean of E(S(1) | x) and of sd_S1; (0, 1) when unavailable"""
    coefs = _coef_matrix(draws)
    sd = float(np.mean(draws.column("sd_S1"))) if draws.has("sd_S1") else 1.0
    if coefs is None:
        return 0.0, sd
    w = np.zeros(coefs.shape[2])
    w[0] = 1.0
    if x is not None:
        w[1:] = x
    return float(np.mean(coefs[:, 0, :] @ w)), sd


def _parse_label(draws: PosteriorDraws, label: str) -> Optional[Tuple[float, ...]]:
    """Covariate vector behind a stored gamma0[<label>] column, if it parses"""
    try:
        values = dict(part.split("=", 1) for part in label.split(","))
        return complete_covariates(draws.covariate_names, {k: float(v) for k, v in values.items()})
    except (ValueError, ConfigurationError):
        return None


class ComputeCepUseCase:
    """
    Caso de uso: Graficar curvas CEP con banda creíble

    1. Leer los draws (y opcionalmente los datos para la densidad de S(1))
    2. Armar gamma0(x)/gamma1 por draw para cada valor de covariables
    3. Calcular la curva media y la banda del 95%
    4. Escribir tabla y SVG
    """

    def __init__(self, dataset_store: IDatasetStore, result_writer: IResultWriter, plotter: IPlotter):
        self._dataset_store = dataset_store
        self._result_writer = result_writer
        self._plotter = plotter

    def execute(self, input_dto: CepInput) -> CepOutput:
        logger.info(f"[STEP 1] Reading draws from {input_dto.draws_path}")
        try:
            draws = self._result_writer.read_draws(input_dto.draws_path)
            if not draws.has("gamma1"):
                raise DataFormatError("Draw file has no gamma1 column")
            s1_sample = None
            data = None
            if input_dto.data_path is not None:
                data = self._dataset_store.read(input_dto.data_path)
                s1_sample = data.observed_arms().s1
            logger.info(f"[STEP 1] {len(draws)} draws, design {draws.design.label}")

            series = self._series(draws, input_dto)
            if data is not None and data.covariate_names == draws.covariate_names and data.n:
                lo, hi = data.x.min(axis=0), data.x.max(axis=0)
                for label, x, _, _ in series:
                    if x is not None and (np.any(np.asarray(x) < lo) or np.any(np.asarray(x) > hi)):
                        logger.warning(f"[STEP 2] {label} lies outside the observed covariate range")

            curves: List[CepCurve] = []
            for label, x, g0, g1 in series:
                if s1_sample is not None and s1_sample.size > 1:
                    center, spread = float(np.mean(s1_sample)), float(np.std(s1_sample, ddof=1))
                else:
                    center, spread = s1_center(draws, x)
                grid = default_s_grid(center, spread, input_dto.grid_points)
                curves.append(cep_band_from_draws(grid, g0, g1, conditioning=label, x=x))
                logger.info(f"[STEP 3] CEP {label}: gamma0 {np.mean(g0):.3f}, gamma1 {np.mean(g1):.3f}")

            out = input_dto.output_dir
            table_path = self._result_writer.write_cep_curves(curves, out / "cep_curve.csv")
            plot_path = self._plotter.plot_cep(curves, out / "cep.svg", s1_sample)
            logger.info(f"[STEP 4] CEP plot written to {plot_path}")
            return CepOutput(plot_path=plot_path, table_path=table_path, conditioning=[c.conditioning for c in curves])

        except Exception as e:
            logger.error(f"Error computing CEP curves: {e}", exc_info=True)
            raise

    def _series(self, draws: PosteriorDraws, input_dto: CepInput):
        """(label, x, gamma0 draws, gamma1 draws) per curve"""
        g1 = draws.column("gamma1")
        if not draws.design.conditional:
            if input_dto.at:
                logger.warning(f"[STEP 2] Covariate values ignored: {draws.design.label} is marginal")
            if not draws.has("gamma0"):
                raise DataFormatError("Draw file has no gamma0 column")
            return [("marginal", None, draws.column("gamma0"), g1)]

        if input_dto.at:
            series = []
            for values in input_dto.at:
                x = complete_covariates(draws.covariate_names, values)
                series.append((covariate_label(draws.covariate_names, x), x, gamma0_at(draws, x), g1))
            return series

        series = []
        for name in draws.gamma_names():
            if name.startswith("gamma0["):
                label = name[len("gamma0["):-1]
                series.append((label, _parse_label(draws, label), draws.column(name), g1))
        if draws.has("gamma0_marginal") and draws.has("gamma1_marginal"):
            series.append(("marginal", None, draws.column("gamma0_marginal"), draws.column("gamma1_marginal")))
        if not series:
            raise DataFormatError("Draw file holds no gamma0 columns")
        return series
