"""Domain entities"""
from .covariate_model import BernoulliCovariate, CovariateModel, EmpiricalCovariate, NormalCovariate
from .gaussian import CorrelationState, GaussianJoint
from .metrics import CepCurve, Scope, TreatmentEffect, ValidationMetrics, Verdict
from .model_spec import OUTCOMES, Design, EndpointMode, ModelSpec
from .posterior import ConvergenceReport, ParameterSummary, PosteriorDraws
from .prior import ChainConfig, PriorKind, PriorSet, PriorSpec
from .replication import EstimandSummary, EstimateRecord, ReplicationRun, ReplicationSummary
from .simulation import CovariateKind, CovariateSource, NoiseFamily, NoiseKind, SimSetting
from .trial import CounterfactualTable, ObservedArms, TrialDataset, TrialRecord

__all__ = [
    "BernoulliCovariate", "CovariateModel", "EmpiricalCovariate", "NormalCovariate",
    "CorrelationState", "GaussianJoint",
    "CepCurve", "Scope", "TreatmentEffect", "ValidationMetrics", "Verdict",
    "OUTCOMES", "Design", "EndpointMode", "ModelSpec",
    "ConvergenceReport", "ParameterSummary", "PosteriorDraws",
    "ChainConfig", "PriorKind", "PriorSet", "PriorSpec",
    "EstimandSummary", "EstimateRecord", "ReplicationRun", "ReplicationSummary",
    "CovariateKind", "CovariateSource", "NoiseFamily", "NoiseKind", "SimSetting",
    "CounterfactualTable", "ObservedArms", "TrialDataset", "TrialRecord",
]
