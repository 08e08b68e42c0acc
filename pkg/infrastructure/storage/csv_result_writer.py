"""
CSV Result Writer - Implementation of IResultWriter with pandas
"""
import logging
from pathlib import Path
from typing import Dict, List, Sequence

import numpy as np
import pandas as pd

from core.exceptions import DataFormatError
from domain.entities.metrics import CepCurve
from domain.entities.model_spec import Design
from domain.entities.posterior import ConvergenceReport, PosteriorDraws
from domain.entities.replication import ReplicationSummary
from domain.interfaces.result_writer import IResultWriter

logger = logging.getLogger(__name__)

META_PREFIX = "# "
FLOAT_FORMAT = "%.17g"


def _save(frame: pd.DataFrame, path: Path, float_format=None, header_lines: Sequence[str] = ()) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as handle:
        for line in header_lines:
            handle.write(f"{META_PREFIX}{line}\n")
        frame.to_csv(handle, index=False, float_format=float_format, lineterminator="\n")
    logger.info(f"Wrote {len(frame)} rows to {path}")
    return path


def _parse_metadata(path: Path) -> Dict[str, str]:
    meta: Dict[str, str] = {}
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            if not line.startswith(META_PREFIX):
                break
            key, _, value = line[len(META_PREFIX):].strip().partition("=")
            meta[key.strip()] = value.strip()
    return meta


class CsvResultWriter(IResultWriter):
    """
    Result tables as delimited text

    Draw files start with `# key=value` lines holding the design, the CI
    flag, the covariate names, the algorithm and the seed.
    """

    def write_summary(self, rows: List[Dict], path: Path) -> Path:
        return _save(pd.DataFrame(rows), path)

    def write_draws(self, draws: PosteriorDraws, path: Path) -> Path:
        header = [
            f"design={int(draws.design)}",
            f"ci_assumed={str(draws.ci_assumed).lower()}",
            f"covariates={','.join(draws.covariate_names)}",
            f"algorithm={draws.algorithm}",
            f"seed={'' if draws.seed is None else draws.seed}",
        ]
        frame = pd.DataFrame(np.asarray(draws.values), columns=list(draws.names))
        return _save(frame, path, FLOAT_FORMAT, header)

    def read_draws(self, path: Path) -> PosteriorDraws:
        """
        Raises:
            DataFormatError: missing file or metadata, non-numeric values, no draws
        """
        path = Path(path)
        if not path.is_file():
            raise DataFormatError(f"Draw file not found: {path}")
        meta = _parse_metadata(path)
        try:
            design = Design(int(meta["design"]))
        except (KeyError, ValueError):
            raise DataFormatError(f"Draw file {path} lacks a valid design header") from None
        try:
            frame = pd.read_csv(path, comment="#")
            values = frame.apply(pd.to_numeric, errors="raise").to_numpy(dtype=np.float64)
        except pd.errors.EmptyDataError:
            raise DataFormatError(f"Draw file has no columns: {path}") from None
        except (ValueError, TypeError, pd.errors.ParserError) as e:
            raise DataFormatError(f"Malformed draw file {path}: {e}") from e
        if frame.empty or not np.all(np.isfinite(values)):
            raise DataFormatError(f"Draw file {path} has no draws or non-finite values")
        seed = meta.get("seed") or None
        return PosteriorDraws(
            names=tuple(frame.columns),
            values=values,
            design=design,
            covariate_names=tuple(n for n in meta.get("covariates", "").split(",") if n),
            ci_assumed=meta.get("ci_assumed", "false") == "true",
            algorithm=meta.get("algorithm", "observed"),
            seed=int(seed) if seed is not None else None,
        )

    def write_convergence(self, report: ConvergenceReport, rhat_path: Path, trace_path: Path) -> Sequence[Path]:
        rhat = pd.DataFrame({
            "parameter": list(report.names),
            "rhat": [report.rhat[n] for n in report.names],
            "flagged": [n in report.flagged for n in report.names],
        })
        trace = pd.DataFrame(np.asarray(report.trace), columns=list(report.names))
        trace.insert(0, "iteration", np.asarray(report.iterations, dtype=np.int64))
        return _save(rhat, rhat_path), _save(trace, trace_path)

    def write_cep_curves(self, curves: Sequence[CepCurve], path: Path) -> Path:
        frames = [
            pd.DataFrame({
                "conditioning": curve.conditioning,
                "s": curve.s_grid,
                "expected_diff": curve.expected_diff,
                "lower": curve.lower,
                "upper": curve.upper,
            })
            for curve in curves
        ]
        return _save(pd.concat(frames, ignore_index=True), path)

    def write_replications(self, summary: ReplicationSummary, summary_path: Path,
                           runs_path: Path, scaled: bool = False) -> Sequence[Path]:
        rows = []
        for run in summary.runs:
            row = {"replication": run.index, "seed": run.seed, "verdict": run.verdict, "error": run.error}
            for name, record in run.estimates.items():
                row[f"{name}_mean"] = record.mean
                row[f"{name}_sd"] = record.sd
                row[f"{name}_q025"] = record.q025
                row[f"{name}_q975"] = record.q975
            for name, value in run.oracle.items():
                row[f"{name}_oracle"] = value
            rows.append(row)
        return (
            _save(pd.DataFrame(summary.to_long_format(scaled)), summary_path),
            _save(pd.DataFrame(rows), runs_path),
        )

    def write_table(self, rows: List[Dict], path: Path) -> Path:
        return _save(pd.DataFrame(rows), path)
