"""CSV ingestion and JSON-ready views of reports.

Datasets are CSV with an ``x,y`` header, one pair per row. Lines starting with
``#`` and blank lines are skipped; LF and CRLF endings are both accepted.
Floats are written with 17 significant digits so they re-read losslessly.
"""

from __future__ import annotations

import math
from typing import IO, Iterable, Iterator

import numpy as np

from .engine import SensitivityReport, StreamRecord
from .errors import InputError
from .moments import Point2
from .oracle import OracleReport

__all__ = [
    "iter_points",
    "read_points",
    "write_points",
    "format_float",
    "report_to_dict",
    "stream_record_to_dict",
    "oracle_report_to_dict",
]


def format_float(v: float) -> str:
    return format(v, ".17g")


def iter_points(lines: Iterable[str]) -> Iterator[tuple[int, Point2]]:
    """Yield ``(line_number, point)`` lazily; line numbers are 1-based."""
    header_seen = False
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\r\n").strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in line.split(",")]
        if not header_seen:
            if [f.lower() for f in fields] != ["x", "y"]:
                raise InputError(f"line {lineno}: expected header 'x,y', got {line!r}")
            header_seen = True
            continue
        if len(fields) != 2:
            raise InputError(f"line {lineno}: expected 2 fields, got {len(fields)}")
        try:
            x, y = float(fields[0]), float(fields[1])
        except ValueError:
            raise InputError(f"line {lineno}: could not parse {line!r} as two numbers") from None
        if not (math.isfinite(x) and math.isfinite(y)):
            raise InputError(f"line {lineno}: non-finite value")
        yield lineno, Point2(x, y)
    if not header_seen:
        raise InputError("empty input: missing 'x,y' header")


def read_points(stream: IO[str]) -> np.ndarray:
    pts = [p for _, p in iter_points(stream)]
    return np.asarray(pts, dtype=float).reshape(-1, 2)


def write_points(points, stream: IO[str]) -> None:
    stream.write("x,y\n")
    for x, y in np.asarray(points, dtype=float).reshape(-1, 2).tolist():
        stream.write(f"{format_float(x)},{format_float(y)}\n")


def report_to_dict(report: SensitivityReport) -> dict:
    wr = report.witness_r
    out = {
        "r": report.r_current,
        "p": report.p_current,
        "delta_r": report.delta_r,
        "delta_p": report.delta_p,
        "straddle": report.straddle,
        "witness_r": {"x": wr.point.x, "y": wr.point.y, "label": wr.label, "r_aug": wr.value},
        "witness_p": None,
        "candidates": [
            {"x": c.point.x, "y": c.point.y, "label": c.label, "r_aug": c.r_aug, "p_aug": c.p_aug}
            for c in report.candidates
        ],
    }
    wp = report.witness_p
    if wp is not None:
        if wp.point is None:
            out["witness_p"] = {"label": wp.label, "p_aug": wp.value}
        else:
            out["witness_p"] = {"x": wp.point.x, "y": wp.point.y, "label": wp.label, "p_aug": wp.value}
    if report.reduced:
        out["reduced"] = True
    return out


def stream_record_to_dict(rec: StreamRecord) -> dict:
    return {
        "index": rec.index,
        "status": "ok",
        "observed_delta_r": rec.observed_delta_r,
        "predicted_delta_r": rec.report_before.delta_r,
        "within_prediction": rec.within_prediction,
        "point_in_region": rec.point_in_region,
        "report_before": report_to_dict(rec.report_before),
    }


def oracle_report_to_dict(rep: OracleReport) -> dict:
    return {
        "grid_delta_r": rep.grid_delta_r,
        "grid_delta_p": rep.grid_delta_p,
        "grid_witness": {"x": rep.grid_witness.x, "y": rep.grid_witness.y},
        "grid_resolution": rep.grid_resolution,
        "grid_straddle": rep.grid_straddle,
        "engine_delta_r": rep.engine_delta_r,
        "engine_delta_p": rep.engine_delta_p,
        "agree_within": rep.agree_within,
    }
