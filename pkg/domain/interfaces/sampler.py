"""
Interface: Sampler

Contrato abstracto para los algoritmos de estimación MCMC.
Las implementaciones concretas están en infrastructure/sampling/
"""
from abc import ABC, abstractmethod
from typing import Optional, Sequence

from domain.entities.model_spec import ModelSpec
from domain.entities.posterior import PosteriorDraws
from domain.entities.prior import ChainConfig, PriorSet
from domain.entities.trial import TrialDataset


class ISampler(ABC):
    """
    Interfaz para un algoritmo de estimación

    Define el contrato que cumplen el algoritmo de imputación y el de
    datos observados.
    """

    name: str = "sampler"

    @abstractmethod
    def run(
        self,
        data: TrialDataset,
        spec_template: ModelSpec,
        priors: PriorSet,
        cfg: ChainConfig,
        x_points: Optional[Sequence[Sequence[float]]] = None,
    ) -> PosteriorDraws:
        """
        Ejecuta una cadena y devuelve los draws retenidos

        Args:
            data: Datos enmascarados del ensayo
            spec_template: Diseño, covariables y supuesto de CI del modelo
            priors: Priors de las correlaciones y de las medias
            cfg: Configuración de la cadena
            x_points: Valores de X donde se evalúa gamma0(x) (diseños condicionales)

        Returns:
            PosteriorDraws: n_iter - burn_in draws con las cantidades derivadas
        """
        pass
