"""Render reports, fits and interval sets as CSV rows plus a JSON run manifest."""
import csv
import json
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from attractor_geom import DiffClass, IntervalSet
from dimension import DimensionFit
from ifs_core import format_scalar, format_word
from separation import SeparationReport

REPORT_HEADER = ["b", "word_count", "class_count", "eps_star", "witness_a", "witness_b", "verdict"]
FIT_HEADER = ["kind", "scale_or_r", "rho_or_blank", "count", "exponent", "residual"]
INTERVAL_HEADER = ["lo", "hi"]
REWRITE_HEADER = ["index", "original", "rewritten", "borrowed"]


def format_cell(value: Any) -> str:
    """Canonical CSV text: p/q rationals, 17-digit floats, words as 1,2,2."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (Fraction, float, int)):
        return format_scalar(value)
    if isinstance(value, DiffClass):
        parts = (value.c_plus, value.c_minus, value.delta_q)
        return "(" + ";".join(format_scalar(p) for p in parts) + ")"
    if isinstance(value, tuple):
        return format_word(value)
    return str(value)


def report_row(report: SeparationReport) -> List[str]:
    """One REPORT_HEADER row."""
    a, b = report.witness if report.witness else (None, None)
    cells = [report.b, report.word_count, report.class_count, report.eps_star, a, b, report.verdict]
    return [format_cell(c) for c in cells]


def fit_rows(fit: DimensionFit, label: Optional[str] = None) -> List[List[str]]:
    """One FIT_HEADER row per sample of the fit."""
    kind = f"{fit.kind}:{label}" if label else fit.kind
    rows = []
    for sample in fit.samples:
        if len(sample) == 2:
            scale, count = sample
            rho = None
        else:
            scale, rho, count = sample
        rows.append([format_cell(c) for c in (kind, scale, rho, count, fit.exponent, fit.residual)])
    return rows


def summary_rows(items: Iterable[Tuple[str, Any]]) -> List[List[str]]:
    """Named scalars in the fit layout; the value sits in the exponent column."""
    return [[name, "", "", "", format_cell(value), ""] for name, value in items]


def interval_rows(x: IntervalSet) -> List[List[str]]:
    """One lo, hi row per interval."""
    return [[format_cell(lo), format_cell(hi)] for lo, hi in x]


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence[str]]) -> None:
    """Write header plus rows, creating the parent directory."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(header)
        writer.writerows(rows)


def manifest_path(csv_path: Path) -> Path:
    """The manifest file beside the CSV."""
    return csv_path.with_name(csv_path.stem + ".manifest.json")


def write_manifest(
    csv_path: Path,
    spec: Dict[str, Any],
    version: str,
    wall_time_s: float,
    budget: Dict[str, Any],
    verdicts: Dict[str, int],
    exit_code: int,
) -> Path:
    """Write the run manifest as indented JSON and return its path."""
    path = manifest_path(csv_path)
    manifest = {
        "spec": spec,
        "version": version,
        "generated_at": datetime.now(timezone.utc).isoformat().replace("+00:00", "Z"),
        "wall_time_s": round(wall_time_s, 3),
        "budget": budget,
        "verdicts": verdicts,
        "exit_code": exit_code,
    }
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        json.dump(manifest, f, indent=2)
    return path
