"""Deterministic report emission (JSON, CSV, histogram data).

Identical inputs and configuration produce byte-identical files: floats are
rounded to 6 significant digits before serialisation and the JSON field
order is fixed at {country, year, pi, D, S, deficit, recession_set, r, gdp,
rankings, diagnostics}.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict

import numpy as np

from .leontief import NationalEquilibrium, ValueBalanceReport
from .recession import RecessionReport

__all__ = [
    "round6",
    "analysis_dict",
    "equilibrium_dict",
    "to_json",
    "deficit_csv",
    "histogram_csv",
    "analysis_text",
    "equilibrium_text",
]


def round6(obj):
    """Recursively round floats to 6 significant digits (report precision)."""
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, float):
        return float(f"{obj:.6g}")
    if isinstance(obj, (np.floating,)):
        return float(f"{float(obj):.6g}")
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return [round6(v) for v in obj.tolist()]
    if isinstance(obj, dict):
        return {k: round6(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [round6(v) for v in obj]
    return obj


def analysis_dict(country: str, year: int, pi, report: RecessionReport, diagnostics=None) -> dict:
    """Recession analysis in the fixed JSON field order."""
    return {
        "country": country,
        "year": year,
        "pi": round6(np.asarray(pi, dtype=float)),
        "D": round6(report.D),
        "S": round6(report.S),
        "deficit": round6(report.deficit),
        "recession_set": list(report.recession_set),
        "r": round6(report.r),
        "gdp": round6(report.gdp),
        "rankings": {
            mode: [round6(asdict(row)) for row in rows]
            for mode, rows in report.rankings.items()
        },
        "diagnostics": round6(diagnostics or {}),
    }


def equilibrium_dict(
    country: str,
    year: int,
    pi,
    solution: NationalEquilibrium,
    balance: ValueBalanceReport,
) -> dict:
    return {
        "country": country,
        "year": year,
        "pi": round6(np.asarray(pi, dtype=float)),
        "rho": round6(solution.rho),
        "certified": bool(solution.certified),
        "equality_set": list(solution.I),
        "slack_set": list(solution.J),
        "y": round6(solution.y),
        "p": round6(solution.p),
        "value_residual": round6(balance.residual),
        "violated": list(balance.violated),
        "diagnostics": round6(solution.diagnostics),
    }


def to_json(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"


def deficit_csv(report: RecessionReport) -> str:
    """Per-industry deficit table, one row per industry."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        ["industry_index", "industry_name", "demand", "supply", "deficit", "creates_recession"]
    )
    recession = set(report.recession_set)
    for pos, idx in enumerate(report.indices):
        writer.writerow(
            [
                idx,
                report.names[pos],
                f"{report.D[pos]:.6g}",
                f"{report.S[pos]:.6g}",
                f"{report.deficit[pos]:.6g}",
                int(idx in recession),
            ]
        )
    return buf.getvalue()


def histogram_csv(report: RecessionReport) -> str:
    """Two-sided histogram data: supply bars on the right, demand
    shortfalls (negative deficits only) on the left, industries ordered
    upwards.  The supply column sums to gross output plus imports."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["industry_index", "shortfall_left", "supply_right"])
    for pos, idx in enumerate(report.indices):
        shortfall = report.deficit[pos] if report.deficit[pos] < 0 else 0.0
        writer.writerow([idx, f"{shortfall:.6g}", f"{report.S[pos]:.6g}"])
    return buf.getvalue()


def analysis_text(country: str, year: int, report: RecessionReport) -> str:
    lines = [
        f"{country} {year}: recession ratio r = {report.r:.4f} "
        f"(gross value added {report.gdp:.6g})",
        f"recession-creating industries: {list(report.recession_set)}",
        "",
        "most sensitive (shortfall / gross output):",
    ]
    for row in report.rankings.get("sensitive", []):
        lines.append(
            f"  {row.index:>3} {row.name[:52]:<52} reduction {row.demand_reduction:>14.6g}"
        )
    lines.append("most contributing (absolute shortfall):")
    for row in report.rankings.get("contributing", []):
        lines.append(
            f"  {row.index:>3} {row.name[:52]:<52} reduction {row.demand_reduction:>14.6g}"
        )
    return "\n".join(lines) + "\n"


def equilibrium_text(
    country: str,
    year: int,
    solution: NationalEquilibrium,
    balance: ValueBalanceReport,
) -> str:
    lines = [
        f"{country} {year}: spectral radius {solution.rho:.9g}, "
        f"certified = {solution.certified}",
        f"equality industries: {list(solution.I)}",
        f"slack industries: {list(solution.J)}",
        f"value-form violations: {list(balance.violated)}",
        f"max value residual: {np.abs(balance.residual).max():.6g}",
    ]
    return "\n".join(lines) + "\n"
