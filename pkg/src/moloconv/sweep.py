"""Scalar figures of merit over 1D/2D parameter grids.

Every grid point rebuilds the dynamical system, classifies stability and
evaluates the requested metrics; unstable points carry the string sentinel
"unstable" so no NaN/Inf ever reaches a numeric CSV column.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynmat import Detuning, rwa_from_params, system_from_params
from .params import SystemParams
from .rwa import rwa_scattering
from .scattering import (ANTI_STOKES_SIGN, STOKES_SIGN, SingularAtFrequency,
                         ZERO_EFFICIENCY_FLOOR, format_sig, s_a_add,
                         scattering_matrix, t_matrix)
from .stability import AxisSpec, EigensolverFailure, apply_axis, classify, pmap
from .params import TWO_PI

UNSTABLE = "unstable"

METRICS = ("t_ac_AS", "t_ac_S", "n_add_AS", "n_add_S",
           "t_ac_rwa_AS", "t_ac_rwa_S", "margin")


class AllUnstable(RuntimeError):
    """No stable grid point carries the requested metric."""


@dataclass(frozen=True)
class SweepTable:
    axes: tuple              # 1 or 2 AxisSpec
    columns: tuple           # metric names
    rows: list               # dicts: axis values, metrics, "stable" flag


def _point_metrics(p: SystemParams, metrics) -> dict:
    sys = system_from_params(p)
    try:
        verdict = classify(sys)
    except EigensolverFailure:
        return {"stable": False, "_flag": "eigensolver-failure"}
    out = {"stable": verdict.stable}
    if not verdict.stable:
        return out
    wb = p.omega_b_thz
    need_full = {"t_ac_AS", "t_ac_S", "n_add_AS", "n_add_S"} & set(metrics)
    try:
        if need_full:
            t_as = t_matrix(scattering_matrix(sys, ANTI_STOKES_SIGN * wb))
            t_s = t_matrix(scattering_matrix(sys, STOKES_SIGN * wb))
            if "t_ac_AS" in metrics:
                out["t_ac_AS"] = t_as[0, 1]
            if "t_ac_S" in metrics:
                out["t_ac_S"] = t_s[0, 1]
            if "n_add_AS" in metrics:
                out["n_add_AS"] = (s_a_add(t_as) / t_as[0, 1]
                                   if t_as[0, 1] > ZERO_EFFICIENCY_FLOOR
                                   else None)
            if "n_add_S" in metrics:
                out["n_add_S"] = (s_a_add(t_s) / t_s[0, 1]
                                  if t_s[0, 1] > ZERO_EFFICIENCY_FLOOR
                                  else None)
        rwa_wanted = {"t_ac_rwa_AS", "t_ac_rwa_S"} & set(metrics)
        if rwa_wanted:
            kind = Detuning.RED if sys.snapshot.delta >= 0 else Detuning.BLUE
            r = rwa_from_params(p, kind)
            if "t_ac_rwa_AS" in metrics:
                out["t_ac_rwa_AS"] = rwa_scattering(
                    r, ANTI_STOKES_SIGN * wb).t_ac
            if "t_ac_rwa_S" in metrics:
                out["t_ac_rwa_S"] = rwa_scattering(r, STOKES_SIGN * wb).t_ac
    except SingularAtFrequency:
        # a pole on the evaluation frequency: treat like instability
        out["stable"] = False
        out["_flag"] = "pole"
        return out
    if "margin" in metrics:
        out["margin"] = verdict.margin / TWO_PI
    return out


def run_sweep(base: SystemParams, axes, metrics) -> SweepTable:
    """Evaluate ``metrics`` over a 1- or 2-axis grid of parameter points."""
    axes = tuple(axes)
    if not 1 <= len(axes) <= 2:
        raise ValueError("run_sweep takes one or two axes")
    for m in metrics:
        if m not in METRICS:
            raise ValueError(f"unknown metric {m!r}")
    if len(axes) == 1:
        points = [{axes[0].param_name: float(xv)} for xv in axes[0].grid()]
    else:
        points = [{axes[0].param_name: float(xv), axes[1].param_name: float(yv)}
                  for yv in axes[1].grid() for xv in axes[0].grid()]

    def one(rec):
        p = base
        for name, value in rec.items():
            p = apply_axis(p, name, value)
        return {**rec, **_point_metrics(p, metrics)}

    rows = pmap(one, points)
    return SweepTable(axes=axes, columns=tuple(metrics), rows=rows)


def argmax(table: SweepTable, metric: str) -> dict:
    """Stable grid point maximizing ``metric``; ties break toward the
    earlier (smaller-axis-value) point by grid order."""
    if metric not in table.columns:
        raise ValueError(f"metric {metric!r} not in table")
    best = None
    for row in table.rows:
        if not row.get("stable"):
            continue
        v = row.get(metric)
        if v is None:
            continue
        if best is None or v > best[1]:
            best = (row, v)
    if best is None:
        raise AllUnstable(f"no stable point carries {metric!r}")
    return {"point": best[0], "value": best[1]}


def write_sweep_csv(path, table: SweepTable) -> None:
    axis_names = [a.param_name for a in table.axes]
    header = ",".join(axis_names + list(table.columns) + ["stable"])
    with open(path, "w", newline="") as fh:
        fh.write(header + "\n")
        for row in table.rows:
            cells = [format_sig(row[n]) for n in axis_names]
            for m in table.columns:
                v = row.get(m)
                cells.append(format_sig(v) if isinstance(v, float) and row.get("stable")
                             else UNSTABLE if not row.get("stable") else "undefined")
            cells.append(str(int(bool(row.get("stable")))))
            fh.write(",".join(cells) + "\n")
