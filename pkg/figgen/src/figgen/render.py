"""Matplotlib renderers for the two figure styles."""

import math
from typing import Tuple

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from figgen.io import ScanFile, ScanFileError

# stable output regardless of user rcParams / locale
_STYLE = {
    "figure.figsize": (6.0, 4.0),
    "figure.dpi": 120,
    "savefig.dpi": 120,
    "font.family": "DejaVu Sans",
    "axes.grid": True,
    "grid.alpha": 0.3,
    "svg.hashsalt": "figgen",
}

_METADATA = {"Software": "figgen"}


def _padded(lo: float, hi: float) -> Tuple[float, float]:
    span = hi - lo
    if span <= 0:
        span = max(abs(hi), 1.0)
    return lo - 0.05 * span, hi + 0.05 * span


def render_f_scan(infile: str, outfile: str) -> None:
    """F(a) vs a with error bars and the constant-1 reference line."""
    scan = ScanFile.load(infile)
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots()
        good = [r for r in scan.rows if r.converged]
        bad = [r for r in scan.rows if not r.converged]
        if good:
            ax.errorbar([r.a for r in good], [r.value for r in good],
                        yerr=[r.err_est for r in good], fmt="o", ms=4,
                        capsize=2, color="tab:blue", label="converged")
        if bad:
            ax.plot([r.a for r in bad], [r.value for r in bad], "x", ms=7,
                    color="tab:red", label="not converged")
        ax.axhline(1.0, color="black", lw=1.0, ls="--", label="reference")
        xs = [r.a for r in scan.rows]
        ys = [r.value for r in scan.rows]
        ax.set_xlim(*_padded(min(xs), max(xs)))
        ax.set_ylim(*_padded(min(min(ys), 1.0), max(max(ys), 1.0)))
        ax.set_xlabel("a")
        ax.set_ylabel("F(a)")
        ax.legend(loc="upper right")
        fig.tight_layout()
        fig.savefig(outfile, metadata=_METADATA)
        plt.close(fig)


def scaling_fit(xs, ys) -> Tuple[float, float]:
    """Log-log least-squares fit; returns (intercept, slope)."""
    if len(xs) < 2:
        raise ScanFileError("scaling fit needs at least two points")
    if any(x <= 0 for x in xs) or any(y <= 0 for y in ys):
        raise ScanFileError("scaling fit needs positive data")
    lx, ly = np.log(xs), np.log(ys)
    slope, intercept = np.polyfit(lx, ly, 1)
    return float(intercept), float(slope)


def render_scaling(infile: str, outfile: str) -> float:
    """Log-log scatter with fitted power law; returns the fitted slope."""
    scan = ScanFile.load(infile)
    xs = [r.a for r in scan.rows]
    ys = [abs(r.value) for r in scan.rows]
    intercept, slope = scaling_fit(xs, ys)
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots()
        ax.loglog(xs, ys, "o", ms=5, color="tab:blue", label="data")
        grid = np.geomspace(min(xs), max(xs), 100)
        ax.loglog(grid, np.exp(intercept) * grid ** slope, "-",
                  color="tab:orange",
                  label=f"fit: slope = {slope:.3f}")
        ax.set_xlabel("a")
        ax.set_ylabel("|value|")
        ax.legend(loc="best")
        fig.tight_layout()
        fig.savefig(outfile, metadata=_METADATA)
        plt.close(fig)
    return slope
