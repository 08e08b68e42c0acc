"""Simulation lab: settings, generators, oracle and replications"""

from .generators import generate
from .oracle import oracle_fit
from .presets import DMD_DEFAULT_CONFIG, SETTING_NAMES, TABLE_SETTINGS, custom_setting, dmd_scenario, get_setting
from .replication import run_replications, verdict_agreement

__all__ = [
    "generate",
    "oracle_fit",
    "DMD_DEFAULT_CONFIG",
    "SETTING_NAMES",
    "TABLE_SETTINGS",
    "custom_setting",
    "dmd_scenario",
    "get_setting",
    "run_replications",
    "verdict_agreement",
]
