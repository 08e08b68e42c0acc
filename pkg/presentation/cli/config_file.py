"""
Flat `key = value` configuration files
"""
import logging
from pathlib import Path
from typing import Dict, Mapping, Optional

from core.exceptions import ConfigurationError

logger = logging.getLogger(__name__)


def read_config(path: Optional[Path]) -> Dict[str, str]:
    """
    Parses `key = value` lines; `#` starts a comment, blank lines are skipped

    Keys are normalized to snake_case (`prior-thetaT` -> `prior_thetaT`).

    Raises:
        ConfigurationError: missing file or a line without '='
    """
    if path is None:
        return {}
    path = Path(path)
    if not path.is_file():
        raise ConfigurationError(f"Configuration file not found: {path}")
    values: Dict[str, str] = {}
    with open(path, encoding="utf-8") as handle:
        for number, raw in enumerate(handle, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep or not key.strip():
                raise ConfigurationError(f"{path}:{number}: expected 'key = value', got '{raw.rstrip()}'")
            values[key.strip().replace("-", "_")] = value.strip()
    logger.debug(f"Read {len(values)} entries from {path}")
    return values


def merge_options(file_values: Mapping[str, object], flag_values: Mapping[str, object]) -> Dict[str, object]:
    """Flags given on the command line override file entries"""
    merged = dict(file_values)
    merged.update({k: v for k, v in flag_values.items() if v is not None})
    return merged
