"""Command-line front end.

Subcommands::

    pccsens analyze [-i FILE] [--bounds auto|LX,UX,LY,UY] [--format json|csv]
    pccsens stream  [-i FILE] [--bounds ...] [--format json|csv]
    pccsens oracle  [-i FILE] [--bounds ...] [--grid N]
    pccsens synth   --kind KIND --n N [--seed S]
    pccsens bench   [--trials T] [--sizes 10,50,100] [--grid N] [--rel-tol TOL] [--seed S]

Input defaults to stdin. Negative bounds need the ``--bounds=-1,2,0,1`` form.
The default seed comes from ``SENS_SEED`` when set. Failures exit with status
1 for bad input or 2 for an internal invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from typing import IO, Sequence

import numpy as np

from . import datagen
from .engine import primary_sensitivities, stream_step
from .errors import DegenerateVarianceError, InputError, InsufficientDataError, InternalError
from .formats import (
    format_float,
    iter_points,
    oracle_report_to_dict,
    read_points,
    report_to_dict,
    stream_record_to_dict,
    write_points,
)
from .geometry import FeasibleRegion
from .moments import OnlineMoments, from_dataset, summarize, update
from .oracle import grid_sensitivities

__all__ = ["build_parser", "run", "main"]

SMALL_SAMPLE_NOTE = 5


def _parse_bounds(text: str) -> FeasibleRegion | None:
    if text.strip().lower() == "auto":
        return None
    parts = text.split(",")
    if len(parts) != 4:
        raise InputError(f"--bounds needs 'auto' or four values lx,ux,ly,uy; got {text!r}")
    try:
        lx, ux, ly, uy = (float(p) for p in parts)
    except ValueError:
        raise InputError(f"--bounds: could not parse {text!r}") from None
    return FeasibleRegion(lx, ux, ly, uy)


def _default_seed() -> int:
    env = os.environ.get("SENS_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise InputError(f"SENS_SEED must be an integer, got {env!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pccsens",
        description="Worst-case change of a Pearson correlation and its p-value from one new point.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def data_args(p: argparse.ArgumentParser) -> None:
        p.add_argument("-i", "--input", default="-", help="CSV file with an x,y header ('-' for stdin)")
        p.add_argument("--bounds", default="auto", help="'auto' (bounding box) or lx,ux,ly,uy")
        p.add_argument("--format", choices=("json", "csv"), default="json")

    data_args(sub.add_parser("analyze", help="sensitivity report for a dataset"))
    data_args(sub.add_parser("stream", help="per-row prediction vs. observed change"))
    p = sub.add_parser("oracle", help="cross-check the engine against a lattice search")
    data_args(p)
    p.add_argument("--grid", type=int, default=101, help="lattice points per axis")

    p = sub.add_parser("synth", help="write a synthetic dataset as CSV")
    p.add_argument("--kind", choices=datagen.KINDS, default="uniform")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("bench", help="engine vs. grid agreement over synthetic data")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--sizes", default="10,50,100")
    p.add_argument("--kinds", default=",".join(datagen.KINDS))
    p.add_argument("--grid", type=int, default=10)
    p.add_argument("--rel-tol", type=float, default=1e-5)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--format", choices=("json", "csv"), default="csv")
    return parser


def _open_input(path: str, stdin: IO[str]) -> IO[str]:
    if path == "-":
        return stdin
    return open(path, encoding="utf-8", newline="")


def _note_small(count: int, stderr: IO[str]) -> None:
    if count < SMALL_SAMPLE_NOTE:
        stderr.write(
            f"note: only {count} points; p-values from very small samples are "
            "sensitive to floating-point precision\n"
        )


def _write_rows(rows: list[dict], stdout: IO[str]) -> None:
    writer = csv.DictWriter(stdout, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: format_float(v) if isinstance(v, float) else v for k, v in row.items()})


def _flat_report(d: dict) -> dict:
    wr, wp = d["witness_r"], d["witness_p"] or {}
    return {
        "r": d["r"],
        "p": d["p"],
        "delta_r": d["delta_r"],
        "delta_p": d["delta_p"],
        "straddle": d["straddle"],
        "witness_r_x": wr["x"],
        "witness_r_y": wr["y"],
        "witness_r_label": wr["label"],
        "witness_p_x": wp.get("x", ""),
        "witness_p_y": wp.get("y", ""),
        "witness_p_label": wp.get("label", ""),
    }


def _emit(obj: dict, fmt: str, stdout: IO[str]) -> None:
    if fmt == "json":
        json.dump(obj, stdout, indent=2)
        stdout.write("\n")
    else:
        _write_rows([obj], stdout)


def _load(args, stdin) -> tuple[np.ndarray, FeasibleRegion]:
    fh = _open_input(args.input, stdin)
    try:
        pts = read_points(fh)
    finally:
        if fh is not stdin:
            fh.close()
    region = _parse_bounds(args.bounds)
    if region is None:
        if not len(pts):
            raise InsufficientDataError()
        region = datagen.bounding_box(pts)
    return pts, region


def _cmd_analyze(args, stdin, stdout, stderr) -> None:
    pts, region = _load(args, stdin)
    summary = summarize(from_dataset(pts))
    _note_small(summary.count, stderr)
    report = primary_sensitivities(summary, region, allow_reduced=True)
    d = report_to_dict(report)
    _emit(d if args.format == "json" else _flat_report(d), args.format, stdout)


def _cmd_oracle(args, stdin, stdout, stderr) -> None:
    pts, region = _load(args, stdin)
    _note_small(len(pts), stderr)
    _emit(oracle_report_to_dict(grid_sensitivities(pts, region, args.grid)), args.format, stdout)


def _cmd_stream(args, stdin, stdout, stderr) -> None:
    fixed = _parse_bounds(args.bounds)
    fh = _open_input(args.input, stdin)
    state = OnlineMoments()
    box = None
    writer = None
    index = 0
    try:
        for _, p in iter_points(fh):
            region = fixed if fixed is not None else box
            try:
                if state.count < 3 or region is None:
                    raise InsufficientDataError()
                rec, state = stream_step(state, p, region)
                row = stream_record_to_dict(rec)
            except (InsufficientDataError, DegenerateVarianceError) as exc:
                state = update(state, p)
                row = {"index": index, "status": "warmup", "count": state.count, "reason": str(exc)}
            if args.format == "json":
                stdout.write(json.dumps(row) + "\n")
            else:
                flat = {k: row.get(k, "") for k in (
                    "index", "status", "observed_delta_r", "predicted_delta_r",
                    "within_prediction", "point_in_region",
                )}
                if writer is None:
                    writer = csv.DictWriter(stdout, fieldnames=list(flat), lineterminator="\n")
                    writer.writeheader()
                writer.writerow({k: format_float(v) if isinstance(v, float) else v for k, v in flat.items()})
            stdout.flush()
            if fixed is None:
                box = _grow(box, p)
            index += 1
    finally:
        if fh is not stdin:
            fh.close()


def _grow(box: FeasibleRegion | None, p) -> FeasibleRegion:
    if box is None:
        return FeasibleRegion(p.x, p.x, p.y, p.y)
    return FeasibleRegion(min(box.lx, p.x), max(box.ux, p.x), min(box.ly, p.y), max(box.uy, p.y))


def _cmd_synth(args, stdin, stdout, stderr) -> None:
    seed = args.seed if args.seed is not None else _default_seed()
    write_points(datagen.sample(datagen.DistributionSpec(args.kind, args.n, seed)), stdout)


def _int_list(text: str, what: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise InputError(f"--{what}: expected comma-separated integers, got {text!r}") from None


def _cmd_bench(args, stdin, stdout, stderr) -> None:
    seed = args.seed if args.seed is not None else _default_seed()
    kinds = [k.strip() for k in args.kinds.split(",") if k.strip()]
    report = datagen.run_benchmark(
        trials=args.trials,
        sizes=_int_list(args.sizes, "sizes"),
        grid_resolution=args.grid,
        rel_tol=args.rel_tol,
        seed=seed,
        kinds=kinds,
    )
    rows = report.rows()
    if args.format == "json":
        json.dump({"agreement_rate": report.agreement_rate, "trials": report.trials, "cells": rows}, stdout, indent=2)
        stdout.write("\n")
    else:
        _write_rows(rows, stdout)
        stderr.write(f"overall agreement: {report.agree_count}/{report.trials} = {report.agreement_rate:.4f}\n")


_COMMANDS = {
    "analyze": _cmd_analyze,
    "stream": _cmd_stream,
    "oracle": _cmd_oracle,
    "synth": _cmd_synth,
    "bench": _cmd_bench,
}


def run(
    argv: Sequence[str] | None = None,
    stdin: IO[str] | None = None,
    stdout: IO[str] | None = None,
    stderr: IO[str] | None = None,
) -> int:
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    args = build_parser().parse_args(argv)
    try:
        _COMMANDS[args.command](args, stdin, stdout, stderr)
    except InternalError as exc:
        stderr.write(f"internal error: {exc}\n")
        return 2
    except (InputError, OSError) as exc:
        stderr.write(f"error: {exc}\n")
        return 1
    return 0


def main() -> None:
    sys.exit(run())
