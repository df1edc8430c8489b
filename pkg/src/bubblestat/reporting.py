"""File formats: ``report.json``, ``statistics.csv`` and the null-simulation CSVs.

All files are UTF-8 with LF line endings. Period z values and p-values are
written with four decimals, rounded half-to-even.
"""

from __future__ import annotations

import json
from dataclasses import asdict
from decimal import ROUND_HALF_EVEN, Decimal
from pathlib import Path

import numpy as np

from .detector import DetectionConfig, DetectionReport, ExceedancePeriod
from .sigma import SigmaEstimate
from .stats import KINDS

SCHEMA_VERSION = 1

__all__ = [
    "SCHEMA_VERSION",
    "round4",
    "report_to_dict",
    "dump_report",
    "load_report",
    "statistics_rows",
    "write_statistics_csv",
    "write_null_draws_csv",
    "write_null_hist_csv",
]


def round4(x):
    """Round half-to-even at four decimals (on the shortest decimal repr)."""
    return float(Decimal(repr(float(x))).quantize(Decimal("0.0001"), rounding=ROUND_HALF_EVEN))


def _period_dict(p: ExceedancePeriod):
    d = asdict(p)
    d["extremum_z"] = round4(p.extremum_z)
    d["p_value"] = round4(p.p_value)
    return d


def report_to_dict(report: DetectionReport, run_config=None, summary=None, threshold=None, n_returns=None):
    """JSON-ready dict; the layout is versioned by ``schema_version``."""
    out = {"schema_version": SCHEMA_VERSION}
    if run_config is not None:
        out["run_config"] = dict(run_config)
    out["detection_config"] = asdict(report.config)
    if threshold is not None:
        out["threshold_z"] = threshold
    out["sigma"] = None if report.sigma is None else asdict(report.sigma)
    if summary is not None:
        out["returns_summary"] = asdict(summary)
    out["periods"] = {k: [_period_dict(p) for p in v] for k, v in report.periods.items()}
    out["diagnostics"] = {
        "n_returns": n_returns,
        "invalid_counts": dict(report.invalid_counts),
        "degenerate_counts": dict(report.degenerate_counts),
    }
    return out


def dump_report(report: DetectionReport, **extra) -> str:
    return json.dumps(report_to_dict(report, **extra), indent=2, sort_keys=False) + "\n"


def load_report(text) -> DetectionReport:
    d = json.loads(text)
    if d.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema_version {d.get('schema_version')!r}")
    diag = d.get("diagnostics", {})
    return DetectionReport(
        periods={k: [ExceedancePeriod(**p) for p in v] for k, v in d["periods"].items()},
        config=DetectionConfig(**d["detection_config"]),
        sigma=None if d.get("sigma") is None else SigmaEstimate(**d["sigma"]),
        invalid_counts=dict(diag.get("invalid_counts", {})),
        degenerate_counts=dict(diag.get("degenerate_counts", {})),
    )


def _cell(x, ok):
    return repr(float(x)) if ok else ""


def statistics_rows(series):
    """Header and rows of ``statistics.csv``; invalid cells are empty strings."""
    header = ["date"]
    for k in KINDS:
        header += [f"{k}_raw", f"{k}_z"]
    header += [f"{k}_valid" for k in KINDS]
    ref = series["U"]
    rows = []
    for i, d in enumerate(np.asarray(ref.index_dates).astype(str)):
        row = [d]
        for k in KINDS:
            s = series[k]
            ok = bool(s.valid[i])
            row += [_cell(s.raw[i], ok), _cell(s.normalized[i], ok)]
        row += ["1" if series[k].valid[i] else "0" for k in KINDS]
        rows.append(row)
    return header, rows


def _write_rows(path, header, rows):
    lines = [",".join(header)] + [",".join(r) for r in rows]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def write_statistics_csv(series, path):
    _write_rows(path, *statistics_rows(series))


def write_null_draws_csv(sim, path):
    header = ["replication"] + [f"{k}_z" for k in KINDS]
    draws = [sim.samples[k].draws for k in KINDS]
    rows = [[str(i)] + [repr(float(col[i])) for col in draws] for i in range(sim.config.replications)]
    _write_rows(path, header, rows)


def write_null_hist_csv(hists, path):
    """``hists`` maps kind to ``(centers, densities)``."""
    rows = []
    for k in KINDS:
        centers, dens = hists[k]
        rows += [[k, repr(float(c)), repr(float(d))] for c, d in zip(centers, dens)]
    _write_rows(path, ["statistic", "bin_center", "density"], rows)
