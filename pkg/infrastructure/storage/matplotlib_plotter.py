"""
Matplotlib Plotter - Implementation of IPlotter writing SVG files

Files are byte-reproducible: fixed SVG hash salt and no Date metadata.
"""
import logging
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from scipy.stats import gaussian_kde  # noqa: E402

from domain.entities.metrics import CepCurve  # noqa: E402
from domain.interfaces.plotter import IPlotter  # noqa: E402

logger = logging.getLogger(__name__)

SVG_HASH_SALT = "surrocep"
DENSITY_POINTS = 200


def _save_svg(fig, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with matplotlib.rc_context({"svg.hashsalt": SVG_HASH_SALT, "svg.fonttype": "path"}):
        fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    logger.info(f"Wrote plot {path}")
    return path


class MatplotlibPlotter(IPlotter):
    """SVG plots of CEP curves and thetaT sensitivity"""

    def plot_cep(self, curves: Sequence[CepCurve], path: Path,
                 s1_sample: Optional[np.ndarray] = None) -> Path:
        fig, ax = plt.subplots(figsize=(7, 5))
        ax.set_title("Causal effect predictiveness")
        ax.set_xlabel("S(1) - S(0)")
        ax.set_ylabel("E(T(1) - T(0) | S(1) - S(0) = s)")
        colors = plt.rcParams["axes.prop_cycle"].by_key()["color"]
        for k, curve in enumerate(curves):
            color = colors[k % len(colors)]
            ax.plot(curve.s_grid, curve.expected_diff, color=color, label=curve.conditioning)
            ax.fill_between(curve.s_grid, curve.lower, curve.upper, color=color, alpha=0.2, linewidth=0)
        ax.axhline(0.0, color="k", linestyle="--", linewidth=0.8)

        sample = None if s1_sample is None else np.asarray(s1_sample, dtype=np.float64)
        if sample is not None and sample.size > 1 and np.ptp(sample) > 0:
            density_ax = ax.twinx()
            lo, hi = ax.get_xlim()
            grid = np.linspace(lo, hi, DENSITY_POINTS)
            density_ax.fill_between(grid, gaussian_kde(sample)(grid), color="grey", alpha=0.25, linewidth=0)
            density_ax.set_ylabel("Density of observed S(1)")
            density_ax.set_ylim(bottom=0.0)
        ax.legend(loc="upper left")
        return _save_svg(fig, path)

    def plot_sensitivity(self, rows: List[Dict], path: Path) -> Path:
        estimands = sorted({key[: -len("_mean")] for row in rows for key in row if key.endswith("_mean")})
        fig, axes = plt.subplots(1, max(len(estimands), 1), figsize=(4 * max(len(estimands), 1), 4), squeeze=False)
        for ax, name in zip(axes[0], estimands):
            for kind, marker in (("fixed", "o"), ("prior", "s")):
                chosen = [r for r in rows if r.get("kind") == kind and f"{name}_mean" in r]
                if not chosen:
                    continue
                x = np.array([r["thetaT"] for r in chosen])
                mean = np.array([r[f"{name}_mean"] for r in chosen])
                err = np.vstack([
                    mean - np.array([r[f"{name}_q025"] for r in chosen]),
                    np.array([r[f"{name}_q975"] for r in chosen]) - mean,
                ])
                ax.errorbar(x, mean, yerr=err, fmt=marker, capsize=3, label=kind)
            ax.axhline(0.0, color="k", linestyle="--", linewidth=0.8)
            ax.set_title(name)
            ax.set_xlabel("thetaT")
            ax.legend(loc="best")
        fig.tight_layout()
        return _save_svg(fig, path)
