"""
Pydantic schemas for the command-line run configuration

Flag values and `key = value` file entries are merged into a plain dict and
validated here before any sampling starts.
"""
import re
from pathlib import Path
from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from core.exceptions import ConfigurationError
from domain.entities.prior import ChainConfig, PriorSet, PriorSpec

_PRIOR_PATTERN = re.compile(r"^\s*(uniform|beta|point)\s*\(([^)]*)\)\s*$", re.IGNORECASE)
_PRIOR_ARITY = {"uniform": 2, "beta": 4, "point": 1}

NoiseName = Literal["gaussian", "t", "gamma"]
AlgorithmName = Literal["observed", "imputation"]


def parse_prior(text: str, target: Optional[str] = None) -> PriorSpec:
    """
    `uniform(lo,hi)`, `beta(a,b,lo,hi)` or `point(v)`

    Raises:
        ConfigurationError: unknown form, wrong arity or invalid parameters
    """
    match = _PRIOR_PATTERN.match(text or "")
    if not match:
        raise ConfigurationError(f"Cannot parse prior '{text}' (uniform(lo,hi), beta(a,b,lo,hi), point(v))")
    kind = match.group(1).lower()
    try:
        args = [float(a) for a in match.group(2).split(",") if a.strip()]
    except ValueError:
        raise ConfigurationError(f"Non-numeric prior parameter in '{text}'") from None
    if len(args) != _PRIOR_ARITY[kind]:
        raise ConfigurationError(f"{kind} prior takes {_PRIOR_ARITY[kind]} parameters, got '{text}'")
    try:
        if kind == "uniform":
            return PriorSpec.uniform(*args, target=target)
        if kind == "beta":
            return PriorSpec.scaled_beta(*args, target=target)
        return PriorSpec.point_mass(args[0], target=target)
    except ValueError as e:
        raise ConfigurationError(f"Invalid prior '{text}': {e}") from e


def parse_point(text: str) -> Dict[str, float]:
    """`name=value,name=value` covariate values"""
    values: Dict[str, float] = {}
    for part in text.split(","):
        name, sep, value = part.partition("=")
        if not sep or not name.strip():
            raise ConfigurationError(f"Covariate values must look like name=value, got '{text}'")
        try:
            values[name.strip()] = float(value)
        except ValueError:
            raise ConfigurationError(f"Non-numeric covariate value in '{text}'") from None
    return values


def _split(value, sep: str):
    if value is None:
        return []
    if isinstance(value, str):
        return [v.strip() for v in value.split(sep) if v.strip()]
    return list(value)


class ChainOptions(BaseModel):
    """Chain length and griddy grid sizes"""
    model_config = ConfigDict(extra="ignore")

    n_iter: int = Field(3000, gt=0)
    burn_in: int = Field(500, ge=0)
    grid_coarse: int = Field(100, ge=10)
    grid_fine: int = Field(100, ge=10)
    fine_fraction: float = Field(0.8, gt=0.0, le=1.0)

    @model_validator(mode="after")
    def check_burn_in_below_iterations(self):
        if self.burn_in >= self.n_iter:
            raise ValueError("burn_in must be smaller than n_iter")
        return self

    def to_chain(self, seed: int) -> ChainConfig:
        return ChainConfig(
            n_iter=self.n_iter,
            burn_in=self.burn_in,
            seed=seed,
            grid_coarse=self.grid_coarse,
            grid_fine=self.grid_fine,
            fine_fraction=self.fine_fraction,
        )


class PriorOptions(BaseModel):
    """Correlation priors given as text"""
    model_config = ConfigDict(extra="ignore")

    prior_thetaT: Optional[str] = None
    prior_theta10: Optional[str] = None
    prior_theta11: Optional[str] = None

    def to_priors(self, ci_assumed: bool) -> PriorSet:
        priors = PriorSet.default(ci_assumed)
        for target in ("theta11", "thetaT", "theta10"):
            text = getattr(self, f"prior_{target}")
            if text:
                try:
                    priors = priors.with_prior(target, parse_prior(text, target))
                except ValueError as e:
                    raise ConfigurationError(f"Invalid prior for {target}: {e}") from e
        return priors


class SettingChoice(BaseModel):
    """A named setting or a custom parameter file (mutually exclusive)"""
    model_config = ConfigDict(extra="ignore")

    setting: Optional[str] = None
    params: Optional[Path] = None

    @model_validator(mode="after")
    def check_one_setting_source(self):
        if self.setting is not None and self.params is not None:
            raise ValueError("--setting and --params are mutually exclusive")
        if self.params is not None and not self.params.is_file():
            raise ValueError(f"Parameter file not found: {self.params}")
        return self


class NoiseOptions(BaseModel):
    model_config = ConfigDict(extra="ignore")

    noise: NoiseName = "gaussian"
    df: float = Field(5.0, gt=2.0)
    shape: float = Field(2.0, gt=0.0)


class SimulateConfig(SettingChoice, NoiseOptions):
    n: int = Field(100, ge=2)
    write_full: bool = False

    @model_validator(mode="after")
    def check_needs_setting(self):
        if self.setting is None and self.params is None:
            raise ValueError("simulate needs --setting or --params")
        if self.n % 2:
            raise ValueError("n must be even (half per arm)")
        return self


class ModelOptions(ChainOptions, PriorOptions):
    design: int = Field(2, ge=1, le=4)
    ci: bool = False
    algorithm: AlgorithmName = "observed"
    at: List[str] = Field(default_factory=list)

    @field_validator("at", mode="before")
    @classmethod
    def split_points(cls, value):
        return _split(value, ";")

    def points(self) -> List[Dict[str, float]]:
        return [parse_point(text) for text in self.at]


class DataChoice(SettingChoice):
    """Data file xor simulated setting"""
    data: Optional[Path] = None
    n: int = Field(100, ge=2)

    @model_validator(mode="after")
    def check_one_data_source(self):
        simulated = self.setting is not None or self.params is not None
        if (self.data is None) == (not simulated):
            raise ValueError("Provide exactly one of --data or --setting/--params")
        if self.data is not None and not self.data.is_file():
            raise ValueError(f"Data file not found: {self.data}")
        if simulated and self.n % 2:
            raise ValueError("n must be even (half per arm)")
        return self


class FitConfig(DataChoice, ModelOptions):
    pass


class CepConfig(BaseModel):
    model_config = ConfigDict(extra="ignore")

    draws: Path
    data: Optional[Path] = None
    at: List[str] = Field(default_factory=list)

    @field_validator("at", mode="before")
    @classmethod
    def split_points(cls, value):
        return _split(value, ";")

    @model_validator(mode="after")
    def check_files_exist(self):
        if not self.draws.is_file():
            raise ValueError(f"Draw file not found: {self.draws}")
        if self.data is not None and not self.data.is_file():
            raise ValueError(f"Data file not found: {self.data}")
        return self

    def points(self) -> List[Dict[str, float]]:
        return [parse_point(text) for text in self.at]


class ReplicateConfig(SettingChoice, NoiseOptions, ModelOptions):
    n: int = Field(100, ge=2)
    reps: int = Field(100, ge=1)
    scale_by_oracle: bool = False
    threads: Optional[int] = Field(None, ge=1)

    @model_validator(mode="after")
    def check_needs_setting(self):
        if self.setting is None and self.params is None:
            raise ValueError("replicate needs --setting or --params")
        if self.n % 2:
            raise ValueError("n must be even (half per arm)")
        return self


class SensitivityConfig(DataChoice, ModelOptions):
    values: List[float] = Field(default_factory=list)
    priors: List[str] = Field(default_factory=list)

    @field_validator("values", mode="before")
    @classmethod
    def split_values(cls, value):
        return _split(value, ",")

    @field_validator("priors", mode="before")
    @classmethod
    def split_priors(cls, value):
        return _split(value, ";")

    @field_validator("values")
    @classmethod
    def check_open_interval(cls, values):
        for v in values:
            if not -1.0 < v < 1.0:
                raise ValueError(f"thetaT values must lie in (-1, 1), got {v}")
        return values

    @model_validator(mode="after")
    def check_needs_settings(self):
        if not self.values and not self.priors:
            raise ValueError("sensitivity needs --values and/or --priors")
        return self

    def scan_settings(self) -> list:
        return list(self.values) + [parse_prior(text, "thetaT") for text in self.priors]
