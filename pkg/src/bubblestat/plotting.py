"""Static figures: detection overview and null densities.

Figures are written with the non-interactive Agg backend. SVG output is
made reproducible by fixing the hash salt and dropping the date metadata.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .detector import two_sided_threshold  # noqa: E402
from .normal import norm_pdf  # noqa: E402
from .stats import KINDS  # noqa: E402

COLORS = {"U": "tab:green", "V": "tab:blue", "C": "tab:purple"}
_RC = {
    "svg.hashsalt": "bubblestat",
    "font.size": 9,
    "axes.titlesize": 9,
    "legend.fontsize": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
}


def _save(fig, path):
    fig.savefig(path, metadata={"Date": None} if str(path).endswith(".svg") else None)
    plt.close(fig)


def _shade(ax, report, kinds, dates):
    for k in kinds:
        for p in report.periods.get(k, []):
            lo, hi = np.datetime64(p.start_date), np.datetime64(p.end_date)
            ax.axvspan(lo, hi, color=COLORS[k], alpha=0.15, lw=0)


def plot_overview(analysis, path):
    """Three stacked panels: z of U and V, z of C, and the price.

    Dashed lines mark the two-sided band; shaded spans are the reported
    exceedance periods in each statistic's colour.
    """
    series, report = analysis.series, analysis.report
    thr = two_sided_threshold(report.config.alpha)
    dates = np.asarray(series["U"].index_dates)
    with plt.rc_context(_RC):
        fig, axes = plt.subplots(3, 1, figsize=(8, 7), sharex=True, constrained_layout=True)
        for ax, kinds in ((axes[0], ("U", "V")), (axes[1], ("C",))):
            for k in kinds:
                s = series[k]
                ax.plot(dates, np.where(s.valid, s.normalized, np.nan), color=COLORS[k], lw=0.8, label=k)
            for y in (thr, -thr):
                ax.axhline(y, color="tab:red", lw=0.8, ls="--")
            _shade(ax, report, kinds, dates)
            ax.set_ylabel("normalized")
            ax.legend(loc="upper left", frameon=False, ncol=len(kinds))
        axes[0].set_title(f"window {analysis.window.n}, {100 * (1 - report.config.alpha):g}% band")

        axes[2].plot(analysis.prices.dates, analysis.prices.closes, color="black", lw=0.8)
        _shade(axes[2], report, KINDS, dates)
        axes[2].set_ylabel("close")
        _save(fig, path)


def plot_null_densities(hists, path):
    """Histogram densities of normalised U, V, C with the N(0, 1) density."""
    grid = np.linspace(-4.5, 4.5, 400)
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(6, 4), constrained_layout=True)
        for k in KINDS:
            centers, dens = hists[k]
            ax.plot(centers, dens, color=COLORS[k], lw=1.0, label=k)
        ax.plot(grid, norm_pdf(grid), color="tab:red", lw=1.2, label="N(0, 1)")
        ax.set_xlabel("normalized statistic")
        ax.set_ylabel("density")
        ax.legend(frameon=False)
        _save(fig, path)
