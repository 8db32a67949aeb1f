# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Merge run results and overlay the coverage bound curves.

Every run directory under the results directory is verified against its
manifest, then the empirical points of all runs are merged. The constants
c2, c3 and c4 are fitted by least squares on log-probabilities, subject to
the fitted curves bounding every point: upper curves from above (plain
Monte Carlo points only), the lower curve from below (all points).
"""

import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from sausagelab.analytic.bounds import BoundParams
from sausagelab.constants import (
    FIT_FILE,
    MANIFEST_FILE,
    REPORT_FILE,
    REPORT_LONG_FILE,
    SUMMARY_FILE,
)
from sausagelab.exceptions import ReportConflictError, ResultIntegrityError
from sausagelab.experiments.base import TARGET_COVER
from sausagelab.results import ResultManifest, dumps_json, rows_to_csv, write_atomic

logger = logging.getLogger(__name__)

REPORT_COLUMNS = [
    "run",
    "kind",
    "target",
    "variant",
    "epsilon",
    "theta",
    "log_p",
    "stderr",
    "log_lower",
    "log_upper",
    "log_lower_default",
    "log_upper_default",
]
LONG_COLUMNS = ["series", "epsilon", "theta", "value"]
UNBIASED_KINDS = ("naive",)
CURVE_POINTS = 50
# Keeps fitted curves on the right side of the binding point after rounding.
FIT_SLACK = 1e-9


@dataclass
class LoadedRun:
    name: str
    manifest: ResultManifest
    summary: dict[str, Any]

    @property
    def kind(self) -> str:
        return self.summary["kind"]

    def points(self) -> list[dict]:
        points = []
        for point in self.summary.get("points", []):
            log_p = point.get("log_p")
            points.append(
                {
                    "run": self.name,
                    "kind": self.kind,
                    **point,
                    "log_p": -math.inf if log_p is None else float(log_p),
                    "stderr": math.nan
                    if point.get("stderr") is None
                    else float(point["stderr"]),
                }
            )
        return points


@dataclass
class FitResult:
    c1: float
    c2: float | None = None
    c3: float | None = None
    c4: float | None = None
    underdetermined: dict[str, bool] = field(default_factory=dict)
    n_points: dict[str, int] = field(default_factory=dict)

    def params(self) -> BoundParams:
        """Fitted constants, with defaults for the ones that could not be fitted."""
        defaults = BoundParams()
        return BoundParams(
            c1=self.c1,
            c2=self.c2 or defaults.c2,
            c3=self.c3 or defaults.c3,
            c4=self.c4 or defaults.c4,
        )


@dataclass
class ReportResult:
    rows: list[dict]
    long_rows: list[dict]
    fit: FitResult
    runs: list[str]
    warnings: list[str]


def collect_runs(results_dir: Path) -> list[LoadedRun]:
    """Load and verify every run directory that carries a manifest."""
    runs = []
    for manifest_path in sorted(Path(results_dir).glob(f"*/{MANIFEST_FILE}")):
        run_dir = manifest_path.parent
        manifest = ResultManifest.load(manifest_path)
        manifest.verify(run_dir)
        try:
            summary = json.loads((run_dir / SUMMARY_FILE).read_text(encoding="utf-8"))
        except (OSError, ValueError) as exc:
            raise ResultIntegrityError(
                f"Cannot read summary in {run_dir}: {exc}"
            ) from exc
        runs.append(LoadedRun(name=run_dir.name, manifest=manifest, summary=summary))
    return runs


def find_conflicts(runs: list[LoadedRun]) -> list[str]:
    """Points measured by more than one configuration."""
    seen: dict[tuple, tuple[str, str]] = {}
    conflicts = []
    for run in runs:
        for point in run.points():
            key = (
                run.kind,
                point["target"],
                point["epsilon"],
                point["theta"],
                point.get("variant", ""),
            )
            owner = seen.setdefault(key, (run.manifest.config_hash, run.name))
            if owner[0] != run.manifest.config_hash:
                conflicts.append(
                    f"{run.kind} {point['target']} epsilon={point['epsilon']} "
                    f"theta={point['theta']} measured by {owner[1]} and {run.name}"
                )
    return conflicts


def _log_eps(epsilon: float) -> float | None:
    if 0 < epsilon < math.exp(-1):
        return abs(math.log(epsilon))
    return None


def _lower_scale(epsilon: float, theta: float) -> float:
    """a with log lower curve = -c4 a."""
    scale = abs(math.log(epsilon))
    if theta >= 1.0:
        return scale**4
    return math.log((1.0 - theta) / 3.0) ** 2 * scale**2


def _upper_scale(epsilon: float, theta: float) -> float:
    """b with log upper curve = log c1 - b / c2 (full coverage) or -b / c3."""
    scale = abs(math.log(epsilon))
    b = scale**2 / math.log(scale) ** 2
    return b if theta >= 1.0 else b * theta**2


def curves(epsilon: float, theta: float, params: BoundParams) -> tuple[float, float]:
    """(log lower, log upper) curve for the target implied by theta; nan off-range."""
    if _log_eps(epsilon) is None:
        return math.nan, math.nan
    lower = -params.c4 * _lower_scale(epsilon, theta)
    if theta >= 1.0:
        upper = math.log(params.c1) - _upper_scale(epsilon, theta) / params.c2
    else:
        upper = -_upper_scale(epsilon, theta) / params.c3
    return lower, upper


def _fit_upper(points: list[dict], offset: float) -> float | None:
    """
    1/k for log p <= offset - k b, least squares clipped by the constraint.

    Points at or above the offset (an estimate of one) say nothing about
    the decay rate and are left out.
    """
    b = np.array([_upper_scale(p["epsilon"], p["theta"]) for p in points])
    gap = offset - np.array([p["log_p"] for p in points])
    keep = gap > 0
    if not keep.any():
        logger.warning("No point lies below the upper curve offset")
        return None
    b, gap = b[keep], gap[keep]
    k = min(float(b @ gap / (b @ b)), float(np.min(gap / b)))
    k *= 1.0 - FIT_SLACK
    if k <= 0:
        logger.warning("Upper curve cannot bound the points with a positive constant")
        return None
    return 1.0 / k


def _fit_lower(points: list[dict]) -> float | None:
    """c4 for log p >= -c4 a, least squares raised by the constraint."""
    a = np.array([_lower_scale(p["epsilon"], p["theta"]) for p in points])
    y = np.array([p["log_p"] for p in points])
    c4 = max(float(-(a @ y) / (a @ a)), float(np.max(-y / a)))
    c4 *= 1.0 + FIT_SLACK
    return c4 if c4 > 0 else None


def fit_constants(points: list[dict], c1: float = 1.0) -> FitResult:
    """
    Fit c2 and c3 on plain Monte Carlo points and c4 on all points.

    A constant is skipped and flagged underdetermined unless its points span
    at least two distinct epsilons.
    """
    usable = [
        p
        for p in points
        if _log_eps(p["epsilon"]) is not None
        and p["theta"] > 0
        and math.isfinite(p["log_p"])
    ]
    unbiased = [p for p in usable if p["kind"] in UNBIASED_KINDS]
    groups = {
        "c2": [p for p in unbiased if p["target"] == TARGET_COVER],
        "c3": [p for p in unbiased if p["target"] != TARGET_COVER],
        "c4": usable,
    }
    result = FitResult(c1=c1)
    for name, group in groups.items():
        result.n_points[name] = len(group)
        underdetermined = len({p["epsilon"] for p in group}) < 2
        result.underdetermined[name] = underdetermined
        if underdetermined:
            continue
        if name == "c2":
            result.c2 = _fit_upper(group, math.log(c1))
        elif name == "c3":
            result.c3 = _fit_upper(group, 0.0)
        else:
            result.c4 = _fit_lower(group)
    return result


def _long_rows(points: list[dict], params: BoundParams) -> list[dict]:
    rows = [
        {
            "series": f"{p['kind']}:{p['target']}",
            "epsilon": p["epsilon"],
            "theta": p["theta"],
            "value": p["log_p"],
        }
        for p in points
    ]
    in_range = [p for p in points if _log_eps(p["epsilon"]) is not None]
    if not in_range:
        return rows
    lo = min(p["epsilon"] for p in in_range)
    hi = max(p["epsilon"] for p in in_range)
    grid = np.geomspace(lo, hi, CURVE_POINTS) if hi > lo else np.array([lo])
    for theta in sorted({p["theta"] for p in in_range}):
        for epsilon in grid:
            lower, upper = curves(float(epsilon), theta, params)
            for series, value in (("lower", lower), ("upper", upper)):
                rows.append(
                    {
                        "series": series,
                        "epsilon": float(epsilon),
                        "theta": theta,
                        "value": value,
                    }
                )
    return rows


def build_report(results_dir: Path, params: BoundParams | None = None) -> ReportResult:
    """
    Merge all runs under ``results_dir`` and write the report files there.

    Raises:
        ResultIntegrityError: If a manifest does not match its files
        ReportConflictError: If two configurations measured the same point
    """
    results_dir = Path(results_dir)
    defaults = params or BoundParams()
    runs = collect_runs(results_dir) if results_dir.is_dir() else []
    warnings = []
    if not runs:
        warnings.append(f"No result manifests found in {results_dir}")
        logger.warning(warnings[-1])

    conflicts = find_conflicts(runs)
    if conflicts:
        raise ReportConflictError(conflicts)

    points = [point for run in runs for point in run.points()]
    fit = fit_constants(points, c1=defaults.c1)
    for name, flag in fit.underdetermined.items():
        if flag and points:
            warnings.append(f"Fit of {name} is underdetermined")
            logger.warning(warnings[-1])
    fitted = fit.params()

    rows = []
    for p in points:
        lower, upper = curves(p["epsilon"], p["theta"], fitted)
        lower_default, upper_default = curves(p["epsilon"], p["theta"], defaults)
        rows.append(
            {
                **{key: p.get(key) for key in REPORT_COLUMNS[:8]},
                "log_lower": lower,
                "log_upper": upper,
                "log_lower_default": lower_default,
                "log_upper_default": upper_default,
            }
        )
    long_rows = _long_rows(points, fitted)

    if results_dir.is_dir():
        write_atomic(results_dir / REPORT_FILE, rows_to_csv(rows, REPORT_COLUMNS))
        write_atomic(
            results_dir / REPORT_LONG_FILE, rows_to_csv(long_rows, LONG_COLUMNS)
        )
        fit_doc = {
            "c1": fit.c1,
            "c2": fit.c2,
            "c3": fit.c3,
            "c4": fit.c4,
            "underdetermined": fit.underdetermined,
            "n_points": fit.n_points,
            "runs": [run.name for run in runs],
            "warnings": warnings,
        }
        write_atomic(results_dir / FIT_FILE, dumps_json(fit_doc))
    logger.info("Report over %d runs with %d points", len(runs), len(rows))
    return ReportResult(
        rows=rows,
        long_rows=long_rows,
        fit=fit,
        runs=[run.name for run in runs],
        warnings=warnings,
    )
