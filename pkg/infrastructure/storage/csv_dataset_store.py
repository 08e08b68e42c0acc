"""
CSV Dataset Store - Implementation of IDatasetStore with pandas

File layout: header `id,z,x_<name>...,s1,t0,t1`; unobserved values are
empty fields. A covariate named `baseline` is the baseline measurement.
"""
import logging
from pathlib import Path

import numpy as np
import pandas as pd

from core.exceptions import DataFormatError
from domain.entities.trial import CounterfactualTable, TrialDataset
from domain.interfaces.dataset_store import IDatasetStore

logger = logging.getLogger(__name__)

COVARIATE_PREFIX = "x_"
BASELINE_COLUMN = "baseline"
OUTCOME_COLUMNS = ("s1", "t0", "t1")
FLOAT_FORMAT = "%.17g"


def _covariate_frame(names, x: np.ndarray) -> pd.DataFrame:
    return pd.DataFrame({f"{COVARIATE_PREFIX}{name}": x[:, j] for j, name in enumerate(names)})


class CsvDatasetStore(IDatasetStore):
    """
    Masked trial data as delimited text
    """

    def read(self, path: Path) -> TrialDataset:
        path = Path(path)
        if not path.is_file():
            raise DataFormatError(f"Data file not found: {path}")
        try:
            frame = pd.read_csv(path, dtype={"id": str}, skipinitialspace=True)
        except pd.errors.EmptyDataError:
            raise DataFormatError(f"Data file is empty: {path}") from None
        except pd.errors.ParserError as e:
            raise DataFormatError(f"Cannot parse {path}: {e}") from e

        missing = [c for c in ("id", "z") + OUTCOME_COLUMNS if c not in frame.columns]
        if missing:
            raise DataFormatError(f"Data file {path} lacks columns {missing}")
        if frame.empty:
            raise DataFormatError(f"Data file has no records: {path}")
        covariates = [c for c in frame.columns if c.startswith(COVARIATE_PREFIX)]
        names = tuple(c[len(COVARIATE_PREFIX):] for c in covariates)

        try:
            numeric = frame[["z", *covariates, *OUTCOME_COLUMNS]].apply(pd.to_numeric, errors="raise")
        except (ValueError, TypeError) as e:
            raise DataFormatError(f"Non-numeric value in {path}: {e}") from e
        z = numeric["z"].to_numpy(dtype=np.float64)
        if not np.all(np.isin(z, (0.0, 1.0))):
            raise DataFormatError("Arm indicator z must be 0 or 1 for every record")
        if frame["id"].isna().any():
            raise DataFormatError("Every record needs an id")

        dataset = TrialDataset(
            ids=tuple(frame["id"]),
            z=z.astype(np.int64),
            x=numeric[covariates].to_numpy(dtype=np.float64).reshape(len(frame), len(names)),
            s1=numeric["s1"].to_numpy(dtype=np.float64),
            t0=numeric["t0"].to_numpy(dtype=np.float64),
            t1=numeric["t1"].to_numpy(dtype=np.float64),
            covariate_names=names,
            baseline_name=BASELINE_COLUMN if BASELINE_COLUMN in names else None,
        )
        logger.info(f"Loaded {dataset.n} records ({dataset.n_treated} treated) from {path}")
        return dataset

    def write(self, dataset: TrialDataset, path: Path) -> Path:
        frame = pd.concat(
            [
                pd.DataFrame({"id": list(dataset.ids), "z": dataset.z}),
                _covariate_frame(dataset.covariate_names, dataset.x),
                pd.DataFrame({name: getattr(dataset, name) for name in OUTCOME_COLUMNS}),
            ],
            axis=1,
        )
        return self._save(frame, path)

    def write_counterfactuals(self, table: CounterfactualTable, path: Path) -> Path:
        frame = pd.concat(
            [
                pd.DataFrame({"id": [str(i + 1) for i in range(table.n)], "z": table.z}),
                _covariate_frame(table.covariate_names, table.x),
                pd.DataFrame({name: getattr(table, name) for name in OUTCOME_COLUMNS}),
            ],
            axis=1,
        )
        return self._save(frame, path)

    @staticmethod
    def _save(frame: pd.DataFrame, path: Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(path, index=False, na_rep="", float_format=FLOAT_FORMAT, lineterminator="\n")
        logger.info(f"Wrote {len(frame)} rows to {path}")
        return path
