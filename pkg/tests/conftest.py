"""
Pytest configuration and shared fixtures
"""
from typing import Tuple
from unittest.mock import Mock

import numpy as np
import pytest

# Import domain entities
from domain.entities.model_spec import Design
from domain.entities.posterior import PosteriorDraws
from domain.entities.prior import ChainConfig
from domain.entities.simulation import SimSetting
from domain.entities.trial import CounterfactualTable, TrialDataset

# Import interfaces
from domain.interfaces.dataset_store import IDatasetStore
from domain.interfaces.plotter import IPlotter
from domain.interfaces.result_writer import IResultWriter

# Import infrastructure
from infrastructure.simulation import TABLE_SETTINGS, generate


# ============================================================================
# FIXTURES: Settings and chains
# ============================================================================

@pytest.fixture
def setting_a() -> SimSetting:
    """Fixture: Escenario A (X normal con efecto sobre T)"""
    return TABLE_SETTINGS["A"]


@pytest.fixture
def setting_b() -> SimSetting:
    """Fixture: Escenario B (sin efecto de X)"""
    return TABLE_SETTINGS["B"]


@pytest.fixture
def setting_e() -> SimSetting:
    """Fixture: Escenario E (X binaria)"""
    return TABLE_SETTINGS["E"]


@pytest.fixture
def short_chain() -> ChainConfig:
    """Fixture: Cadena corta para pruebas unitarias"""
    return ChainConfig(n_iter=300, burn_in=100, seed=7, grid_coarse=30, grid_fine=30)


# ============================================================================
# FIXTURES: Trial data
# ============================================================================

@pytest.fixture
def trial_b(setting_b) -> Tuple[CounterfactualTable, TrialDataset]:
    """Fixture: Ensayo simulado del escenario B (n=60)"""
    return generate(setting_b, 60, seed=11)


@pytest.fixture
def trial_e(setting_e) -> Tuple[CounterfactualTable, TrialDataset]:
    """Fixture: Ensayo simulado del escenario E (n=80)"""
    return generate(setting_e, 80, seed=13)


@pytest.fixture
def small_dataset() -> TrialDataset:
    """Fixture: Cuatro sujetos, dos por brazo, con covariable basal"""
    nan = np.nan
    return TrialDataset(
        ids=("1", "2", "3", "4"),
        z=np.array([0, 0, 1, 1]),
        x=np.array([[1.0], [2.0], [0.5], [1.5]]),
        s1=np.array([nan, nan, 2.0, 3.0]),
        t0=np.array([3.0, 4.0, nan, nan]),
        t1=np.array([nan, nan, 5.0, 6.5]),
        covariate_names=("baseline",),
        baseline_name="baseline",
    )


# ============================================================================
# FIXTURES: Posterior draws
# ============================================================================

@pytest.fixture
def marginal_draws() -> PosteriorDraws:
    """Fixture: Draws sintéticos de un diseño marginal"""
    rng = np.random.default_rng(3)
    n = 400
    values = np.column_stack([
        rng.normal(2.0, 0.1, n),    # beta_S1_intercept
        rng.normal(3.0, 0.1, n),    # beta_T0_intercept
        rng.normal(4.1, 0.1, n),    # beta_T1_intercept
        rng.uniform(0.9, 1.1, n),   # sd_S1
        rng.uniform(0.9, 1.1, n),   # sd_T0
        rng.uniform(0.9, 1.1, n),   # sd_T1
        rng.uniform(0.6, 0.8, n),   # theta11
        rng.uniform(0.1, 0.2, n),   # theta10
        rng.uniform(0.1, 0.3, n),   # thetaT
        rng.normal(0.0, 0.2, n),    # gamma0
        rng.normal(0.55, 0.05, n),  # gamma1
    ])
    names = (
        "beta_S1_intercept", "beta_T0_intercept", "beta_T1_intercept",
        "sd_S1", "sd_T0", "sd_T1", "theta11", "theta10", "thetaT", "gamma0", "gamma1",
    )
    return PosteriorDraws(names=names, values=values, design=Design.ORIGINAL_MARGINAL, seed=5)


# ============================================================================
# FIXTURES: Mocks
# ============================================================================

@pytest.fixture
def mock_dataset_store() -> Mock:
    """Fixture: Mock del almacén de datos"""
    return Mock(spec=IDatasetStore)


@pytest.fixture
def mock_result_writer() -> Mock:
    """Fixture: Mock del escritor de resultados"""
    writer = Mock(spec=IResultWriter)
    writer.write_summary.side_effect = lambda rows, path: path
    writer.write_draws.side_effect = lambda draws, path: path
    writer.write_convergence.side_effect = lambda report, rhat, trace: (rhat, trace)
    writer.write_cep_curves.side_effect = lambda curves, path: path
    writer.write_table.side_effect = lambda rows, path: path
    writer.write_replications.side_effect = lambda summary, s, r, scaled=False: (s, r)
    return writer


@pytest.fixture
def mock_plotter() -> Mock:
    """Fixture: Mock del graficador"""
    plotter = Mock(spec=IPlotter)
    plotter.plot_cep.side_effect = lambda curves, path, s1_sample=None: path
    plotter.plot_sensitivity.side_effect = lambda rows, path: path
    return plotter
