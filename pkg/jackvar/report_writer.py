import logging
import math
import os
import sys
from enum import Enum
from typing import Any, Dict, List, Optional, TextIO

import pandas as pd
import ujson as json

from jackvar.simulation.models import RateStudyResult, RateFit, NormalityReport, ConsistencyReport
from jackvar.statistics.models import Estimates, VarianceEstimate

FLOAT_FORMAT = "%.17g"


class OutputFormat(Enum):
    CSV = "csv"
    RECORD = "record"


def _number(value: Optional[float]) -> Optional[float]:
    if value is None:
        return None
    value = float(value)
    if not math.isfinite(value):
        return None
    return value


def fit_record(fit: RateFit) -> Dict[str, Any]:
    return {
        "slope": _number(fit.slope),
        "stderr": _number(fit.slope_stderr),
        "intercept": _number(fit.intercept),
        "points": [[_number(x), _number(y)] for x, y in fit.points],
    }


def rate_frame(results: List[RateStudyResult]) -> pd.DataFrame:
    rows = []
    for result in results:
        for row in result.rows:
            rows.append({"contrast": result.contrast.value, "n": row.n, "summary_abs_diff": row.summary_abs_diff,
                         "replicates_used": row.replicates_used, "excluded": row.excluded})
    frame = pd.DataFrame(rows, columns=["contrast", "n", "summary_abs_diff", "replicates_used", "excluded"])
    if len(results) == 1:
        frame = frame.drop(columns="contrast")
    return frame


def normality_frame(report: NormalityReport) -> pd.DataFrame:
    return pd.DataFrame([{"estimator": item.estimator.value, "mean": item.mean, "var": item.variance,
                          "skew": item.skewness, "exkurt": item.excess_kurtosis, "ks_distance": item.ks_distance,
                          "degenerate": item.degenerate} for item in report.estimators],
                        columns=["estimator", "mean", "var", "skew", "exkurt", "ks_distance", "degenerate"])


def consistency_frame(report: ConsistencyReport) -> pd.DataFrame:
    return pd.DataFrame([{"estimator": row.estimator.value, "truth": report.truth, "mean_estimate": row.mean_estimate,
                          "median_relative_error": row.median_relative_error} for row in report.rows],
                        columns=["estimator", "truth", "mean_estimate", "median_relative_error"])


def _estimate_entry(estimate: Optional[VarianceEstimate]) -> Optional[Dict[str, Any]]:
    if estimate is None:
        return None
    entry = {"value": _number(estimate.value), "standard_error": _number(estimate.standard_error)}
    if estimate.bootstrap is not None:
        entry["b"] = estimate.bootstrap.b
        entry["seed"] = estimate.bootstrap.seed
    return entry


def estimates_frame(estimates: Estimates) -> pd.DataFrame:
    row = {"n": estimates.n, "statistic": estimates.statistic,
           "v_jack": estimates.jackknife.value, "v_ijack": estimates.infinitesimal_jackknife.value,
           "se_jack": estimates.jackknife.standard_error,
           "se_ijack": estimates.infinitesimal_jackknife.standard_error}
    if estimates.bootstrap is not None:
        row["v_boot"] = estimates.bootstrap.value
        row["se_boot"] = estimates.bootstrap.standard_error
    return pd.DataFrame([row], columns=list(row.keys()))


def estimates_record(estimates: Estimates) -> Dict[str, Any]:
    return {"n": estimates.n, "statistic": _number(estimates.statistic),
            "jackknife": _estimate_entry(estimates.jackknife),
            "infinitesimal_jackknife": _estimate_entry(estimates.infinitesimal_jackknife),
            "bootstrap": _estimate_entry(estimates.bootstrap)}


def _frame_record(frame: pd.DataFrame) -> List[Dict[str, Any]]:
    records = []
    for row in frame.to_dict(orient="records"):
        clean = {}
        for key, value in row.items():
            if isinstance(value, bool) or isinstance(value, str):
                clean[key] = value
            elif hasattr(value, "item"):
                value = value.item()
                clean[key] = _number(value) if isinstance(value, float) else value
            elif isinstance(value, float):
                clean[key] = _number(value)
            else:
                clean[key] = value
        records.append(clean)
    return records


class ReportWriter:
    """
    Writes study results below a ``#`` provenance header: the tool version and the resolved configuration.
    CSV bodies carry 17 significant digits. Without an output path everything goes to stdout.
    """
    header: List[str]
    output: Optional[str]
    output_format: OutputFormat
    log = logging.getLogger(__name__)

    def __init__(self, header: List[str], output: Optional[str] = None,
                 output_format: OutputFormat = OutputFormat.CSV, stream: TextIO = None):
        self.header = header
        self.output = output
        self.output_format = output_format
        self.stream = stream

    def _header_text(self) -> str:
        return "".join(f"# {line}\n" for line in self.header)

    def _emit(self, path: Optional[str], body: str) -> None:
        text = self._header_text() + body
        if path is None:
            (self.stream or sys.stdout).write(text)
            return
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
        self.log.info(f"Wrote {path}")

    @staticmethod
    def _csv(frame: pd.DataFrame) -> str:
        return frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")

    @staticmethod
    def _json(document: Dict[str, Any]) -> str:
        return json.dumps(document, sort_keys=True, indent=2) + "\n"

    def fit_path(self) -> Optional[str]:
        if self.output is None:
            return None
        stem, _ = os.path.splitext(self.output)
        return f"{stem}.fit"

    def write_frame(self, frame: pd.DataFrame, record: Optional[Dict[str, Any]] = None) -> None:
        if self.output_format == OutputFormat.RECORD:
            document = record if record is not None else {"rows": _frame_record(frame)}
            self._emit(self.output, self._json(document))
        else:
            self._emit(self.output, self._csv(frame))

    def write_rate(self, results: List[RateStudyResult]) -> None:
        frame = rate_frame(results)
        fits = {result.contrast.value: fit_record(result.fit) for result in results}
        if self.output_format == OutputFormat.RECORD:
            self.write_frame(frame, {"rows": _frame_record(frame), "fits": fits})
            return

        self.write_frame(frame)
        fit_text = self._json(fits)
        if self.output is None:
            (self.stream or sys.stdout).write(fit_text)
        else:
            self._emit(self.fit_path(), fit_text)

    def write_normality(self, report: NormalityReport) -> None:
        frame = normality_frame(report)
        self.write_frame(frame, {"rows": _frame_record(frame), "n": report.n, "replicates": report.replicates,
                                 "excluded": report.excluded, "ks_critical_value": report.ks_critical_value})

    def write_consistency(self, report: ConsistencyReport) -> None:
        frame = consistency_frame(report)
        self.write_frame(frame, {"rows": _frame_record(frame), "n": report.n, "replicates": report.replicates,
                                 "excluded": report.excluded, "truth": report.truth})

    def write_estimates(self, estimates: Estimates) -> None:
        self.write_frame(estimates_frame(estimates), estimates_record(estimates))
