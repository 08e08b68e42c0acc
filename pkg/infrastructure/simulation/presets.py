"""
Simulation presets: the five tabulated settings, the DMD-like scenario and
custom parameter sets
"""
import logging
from typing import Dict, Mapping, Tuple

from core.exceptions import ConfigurationError, IncompleteConfig
from domain.entities.simulation import CovariateKind, CovariateSource, SimSetting

logger = logging.getLogger(__name__)

EPS = (1.0, 1.0, 1.0)


def _table_setting(
    name: str,
    omegas: Tuple[float, ...],
    theta10: float,
    theta11: float,
    thetaT: float,
    covariate: CovariateSource,
    reported: Dict[str, float],
    description: str,
    sds: Tuple[float, float, float] = EPS,
    enforce_ci: bool = True,
) -> SimSetting:
    w1, w2, w3, w4, w5, w6 = omegas
    return SimSetting(
        name=name,
        intercepts=(w1, w3, w5),
        slopes=((w2,), (w4,), (w6,)),
        sds=sds,
        theta11=theta11,
        thetaT=thetaT,
        theta10=theta10,
        covariates=(covariate,),
        enforce_ci=enforce_ci,
        baseline_name=covariate.name if covariate.kind is CovariateKind.NORMAL else None,
        reported=reported,
        description=description,
    )


_NORMAL_X = CovariateSource("baseline", CovariateKind.NORMAL, (1.0, 0.5))
_BINARY_X = CovariateSource("group", CovariateKind.BERNOULLI, (0.5,))

# reported keys: O = original endpoint, D = difference from baseline, C = conditional on X
# C keeps the generator values tabulated for A, so it simulates the same population as A under another name.
# Its reported gamma0 (-1.00) is kept for reference only; replicate scores against the oracle truth.
TABLE_SETTINGS: Dict[str, SimSetting] = {
    "A": _table_setting(
        "A", (2, 0, 3, 1, 4.1, 1), 0.15, 0.7, 0.21, _NORMAL_X,
        {"O:gamma0": 0.0, "O:gamma1": 0.55, "D:gamma0": -0.06, "D:gamma1": 0.58},
        "Valid S",
    ),
    "B": _table_setting(
        "B", (2, 0, 3, 0, 4.1, 0), 0.15, 0.7, 0.21, _NORMAL_X,
        {"O:gamma0": 0.0, "O:gamma1": 0.55, "D:gamma0": 0.0, "D:gamma1": 0.55},
        "Valid S: no X effect",
    ),
    "C": _table_setting(
        "C", (2, 0, 3, 1, 4.1, 1), 0.15, 0.7, 0.21, _NORMAL_X,
        {"O:gamma0": -1.00, "O:gamma1": 0.55, "D:gamma0": -1.02, "D:gamma1": 0.56},
        "Invalid S as reported; same generator as A",
    ),
    "D": _table_setting(
        "D", (2, 0, 3, 3, 4.1, 1), 0.08, 0.3, 0.26, _NORMAL_X,
        {"O:gamma0": -1.35, "O:gamma1": 0.22, "D:gamma0": -1.33, "D:gamma1": 0.22},
        "Valid S for a subgroup",
    ),
    "E": _table_setting(
        "E", (2, 0, 3, -0.75, 4.1, 2), 0.15, 0.7, 0.21, _BINARY_X,
        {
            "O:gamma0": 1.31, "O:gamma1": 0.58,
            "C:gamma0[group=0]": 0.0, "C:gamma0[group=1]": 2.75, "C:gamma1": 0.55,
        },
        "Valid S for a subgroup (binary X)",
    ),
}

# Default generator values, not estimates from any trial
DMD_DEFAULT_CONFIG: Dict[str, float] = {
    "baseline_mean": 22.0,
    "baseline_sd": 4.0,
    "age_lo": 4.0,
    "age_hi": 8.0,
    "s1_intercept": 8.4,
    "s1_baseline": 0.0,
    "s1_age": 0.0,
    "s1_age_sq": 0.0,
    "t0_intercept": 4.0,
    "t0_baseline": 0.9,
    "t0_age": 1.5,
    "t0_age_sq": -0.25,
    "t1_intercept": -1.84,
    "t1_baseline": 0.9,
    "t1_age": 6.06,
    "t1_age_sq": -0.82,
    "s1_sd": 4.0,
    "t0_sd": 3.0,
    "t1_sd": 3.0,
    "theta11": 0.8,
    "thetaT": 0.35,
}

DMD_COVARIATES = ("baseline", "age", "age_sq")


def _require(config: Mapping[str, object], keys) -> Dict[str, float]:
    missing = [k for k in keys if k not in config]
    if missing:
        raise IncompleteConfig(f"Scenario configuration lacks {missing}")
    try:
        return {k: float(config[k]) for k in keys}
    except (TypeError, ValueError) as e:
        raise ConfigurationError(f"Non-numeric scenario value: {e}") from e


def dmd_scenario(config: Mapping[str, object]) -> SimSetting:
    """
    Scenario with a baseline score and age (linear and quadratic) covariates

    theta10 is optional; when absent the data satisfy S(1) ⊥ T(0) | T(1), X.

    Raises:
        IncompleteConfig: a generator coefficient is missing
    """
    values = _require(config, DMD_DEFAULT_CONFIG)
    enforce_ci = "theta10" not in config
    theta10 = values["thetaT"] * values["theta11"] if enforce_ci else float(config["theta10"])
    covariates = (
        CovariateSource("baseline", CovariateKind.NORMAL, (values["baseline_mean"], values["baseline_sd"])),
        CovariateSource("age", CovariateKind.UNIFORM, (values["age_lo"], values["age_hi"])),
        CovariateSource("age_sq", CovariateKind.SQUARE_OF, source="age"),
    )
    slopes = tuple(
        tuple(values[f"{o}_{c}"] for c in DMD_COVARIATES) for o in ("s1", "t0", "t1")
    )
    try:
        return SimSetting(
            name=str(config.get("name", "DMD")),
            intercepts=(values["s1_intercept"], values["t0_intercept"], values["t1_intercept"]),
            slopes=slopes,
            sds=(values["s1_sd"], values["t0_sd"], values["t1_sd"]),
            theta11=values["theta11"],
            thetaT=values["thetaT"],
            theta10=theta10,
            covariates=covariates,
            enforce_ci=enforce_ci,
            baseline_name="baseline",
            description="Progressive-disease trial with baseline score and age",
        )
    except ValueError as e:
        raise ConfigurationError(f"Invalid scenario configuration: {e}") from e


CUSTOM_KEYS = ("omega1", "omega2", "omega3", "omega4", "omega5", "omega6",
               "eps_s1", "eps_t0", "eps_t1", "theta11", "thetaT")


def custom_setting(config: Mapping[str, object]) -> SimSetting:
    """
    Single-covariate setting from key/value parameters

    Keys: omega1..omega6, eps_s1, eps_t0, eps_t1, theta11, thetaT, optional
    theta10 (omitted = conditional independence), covariate = normal | bernoulli
    with x_mean/x_sd or x_p. `scenario = dmd` switches to the DMD-like layout.
    """
    if str(config.get("scenario", "")).lower() == "dmd":
        return dmd_scenario(config)
    values = _require(config, CUSTOM_KEYS)
    kind = str(config.get("covariate", "normal")).lower()
    if kind == "normal":
        moments = _require(config, ("x_mean", "x_sd"))
        covariate = CovariateSource("baseline", CovariateKind.NORMAL, (moments["x_mean"], moments["x_sd"]))
    elif kind == "bernoulli":
        covariate = CovariateSource("group", CovariateKind.BERNOULLI, (_require(config, ("x_p",))["x_p"],))
    else:
        raise ConfigurationError(f"Unknown covariate kind '{kind}' (normal, bernoulli)")
    enforce_ci = "theta10" not in config
    theta10 = values["thetaT"] * values["theta11"] if enforce_ci else float(config["theta10"])
    omegas = tuple(values[f"omega{i}"] for i in range(1, 7))
    try:
        return _table_setting(
            str(config.get("name", "custom")), omegas, theta10, values["theta11"], values["thetaT"],
            covariate, {}, "Custom parameters",
            sds=(values["eps_s1"], values["eps_t0"], values["eps_t1"]),
            enforce_ci=enforce_ci,
        )
    except ValueError as e:
        raise ConfigurationError(f"Invalid custom setting: {e}") from e


SETTING_NAMES = tuple(TABLE_SETTINGS) + ("DMD",)


def get_setting(name: str) -> SimSetting:
    """
    Raises:
        ConfigurationError: unknown setting name (message lists the valid names)
    """
    key = name.strip().upper()
    if key in TABLE_SETTINGS:
        return TABLE_SETTINGS[key]
    if key == "DMD":
        return dmd_scenario(DMD_DEFAULT_CONFIG)
    raise ConfigurationError(f"Unknown setting '{name}'; valid names: {', '.join(SETTING_NAMES)}")
