#!/usr/bin/env python3
"""Regenerate the publication-style figures from the simulator's CSV tables.

Usage:
    python3 figures.py --figure fig4 --in-dir out/ --out fig4.png

This script never recomputes any physics: it only reads the documented CSV
contracts (spectrum tables, sweep tables, stability maps) written by the
`moloconv reproduce` pipeline, and renders them with the pinned style file
from the repository root so reruns are pixel-identical.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np
import pandas as pd

STYLE_FILE = Path(__file__).resolve().parent.parent / "figstyle.mplstyle"

SENTINELS = ["unstable", "undefined"]


class MissingColumn(KeyError):
    def __init__(self, column, path):
        self.column = column
        super().__init__(f"column {column!r} missing from {path}")


@dataclass(frozen=True)
class PanelSpec:
    csv_path: Path
    x_column: str
    y_columns: tuple
    axis_scales: tuple = ("linear", "linear")   # (x, y)
    shade_column: str | None = None             # instability sentinel source
    title: str = ""
    kind: str = "curves"                        # or "map"
    labels: tuple = field(default_factory=tuple)


def load_table(spec: PanelSpec) -> pd.DataFrame:
    df = pd.read_csv(spec.csv_path, na_values=SENTINELS)
    if df.empty:
        raise ValueError(f"empty CSV: {spec.csv_path}")
    needed = [spec.x_column, *spec.y_columns]
    if spec.shade_column:
        needed.append(spec.shade_column)
    for col in needed:
        if col not in df.columns:
            raise MissingColumn(col, spec.csv_path)
    return df


def _shade_unstable(ax, x, stable):
    # contiguous runs of unstable grid points become gray spans
    unstable = ~stable.astype(bool).to_numpy()
    if not unstable.any():
        return
    xv = x.to_numpy(dtype=float)
    start = None
    for i, bad in enumerate(unstable):
        if bad and start is None:
            start = i
        elif not bad and start is not None:
            ax.axvspan(xv[start], xv[i - 1], color="0.85", zorder=0)
            start = None
    if start is not None:
        ax.axvspan(xv[start], xv[-1], color="0.85", zorder=0)


def draw_curves(ax, spec: PanelSpec):
    df = load_table(spec)
    x = df[spec.x_column]
    for i, col in enumerate(spec.y_columns):
        label = spec.labels[i] if i < len(spec.labels) else col
        ax.plot(x, df[col], label=label)
    if spec.shade_column:
        _shade_unstable(ax, x, df[spec.shade_column].fillna(0))
    ax.set_xscale(spec.axis_scales[0])
    ax.set_yscale(spec.axis_scales[1])
    ax.set_xlabel(spec.x_column)
    ax.set_title(spec.title)
    if len(spec.y_columns) > 1:
        ax.legend()
    else:
        ax.set_ylabel(spec.y_columns[0])


def draw_map(ax, spec: PanelSpec):
    df = load_table(spec)
    xs = np.unique(df[spec.x_column].to_numpy(dtype=float))
    ys = np.unique(df["y"].to_numpy(dtype=float))
    grid = df[spec.y_columns[0]].to_numpy(dtype=float).reshape(len(ys), len(xs))
    # white where stable, gray where not
    ax.pcolormesh(xs, ys, grid, cmap="gray", vmin=0.0, vmax=1.0,
                  shading="nearest")
    ax.set_xscale(spec.axis_scales[0])
    ax.set_yscale(spec.axis_scales[1])
    ax.set_xlabel(spec.x_column)
    ax.set_ylabel("y")
    ax.set_title(spec.title)


def render(panel_specs, out_path, ncols) -> None:
    n = len(panel_specs)
    nrows = (n + ncols - 1) // ncols
    with plt.style.context(str(STYLE_FILE)):
        fig, axes = plt.subplots(nrows, ncols,
                                 figsize=(3.2 * ncols, 2.4 * nrows),
                                 squeeze=False)
        for ax in axes.flat[n:]:
            ax.set_visible(False)
        for ax, spec in zip(axes.flat, panel_specs):
            if spec.kind == "map":
                draw_map(ax, spec)
            else:
                draw_curves(ax, spec)
        fig.savefig(out_path)
        plt.close(fig)


def figure_panels(figure, in_dir: Path):
    d = in_dir
    if figure == "fig2":
        return [
            PanelSpec(d / "fig2a.csv", "x", ("stable",), ("linear", "log"),
                      title="(a) stability vs |gA|, N", kind="map"),
            PanelSpec(d / "fig2b.csv", "x", ("stable",), ("log", "log"),
                      title="(b) stability vs kappa_a, N", kind="map"),
        ], 2
    if figure == "fig4":
        spectra = [
            PanelSpec(d / "fig4a.csv", "omega_thz", ("T_ac",),
                      ("linear", "log"), title="(a) red spectrum"),
            PanelSpec(d / "fig4b.csv", "omega_thz", ("T_ac",),
                      ("linear", "log"), title="(b) blue spectrum"),
        ]
        sweeps = [
            PanelSpec(d / f"fig4{p}.csv", "gA", cols, ("linear", "log"),
                      shade_column="stable", title=t,
                      labels=("full", "RWA"))
            for p, cols, t in (
                ("c", ("t_ac_S", "t_ac_rwa_S"), "(c) red Stokes"),
                ("d", ("t_ac_S", "t_ac_rwa_S"), "(d) blue Stokes"),
                ("e", ("t_ac_AS", "t_ac_rwa_AS"), "(e) red anti-Stokes"),
                ("f", ("t_ac_AS", "t_ac_rwa_AS"), "(f) blue anti-Stokes"),
            )
        ]
        return spectra + sweeps, 2
    if figure == "fig5":
        panels = []
        for side in ("red", "blue"):
            for ga in (1, 2, 3):
                panels.append(PanelSpec(
                    d / f"fig5_{side}_gA{ga}.csv", "omega_thz",
                    ("S_a_add", "n_add_point"), ("linear", "log"),
                    title=f"{side}, |gA| = {ga}",
                    labels=("S_a,add", "n_add")))
        return panels, 3
    if figure == "fig6":
        return [
            PanelSpec(d / "fig6a.csv", "gA", ("t_ac_AS", "n_add_AS"),
                      ("linear", "log"), shade_column="stable",
                      title="(a) red vs |gA|", labels=("T_ac", "n_add")),
            PanelSpec(d / "fig6b.csv", "gA", ("t_ac_S", "n_add_S"),
                      ("linear", "log"), shade_column="stable",
                      title="(b) blue vs |gA|", labels=("T_ac", "n_add")),
            PanelSpec(d / "fig6c.csv", "kappa_a", ("t_ac_AS", "n_add_AS"),
                      ("log", "log"), shade_column="stable",
                      title="(c) red vs kappa_a", labels=("T_ac", "n_add")),
            PanelSpec(d / "fig6d.csv", "kappa_a", ("t_ac_S", "n_add_S"),
                      ("log", "log"), shade_column="stable",
                      title="(d) blue vs kappa_a", labels=("T_ac", "n_add")),
        ], 2
    raise ValueError(f"unknown figure id {figure!r}")


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--figure", required=True,
                    choices=["fig2", "fig4", "fig5", "fig6"])
    ap.add_argument("--in-dir", required=True)
    ap.add_argument("--out", required=True)
    args = ap.parse_args(argv)
    try:
        panels, ncols = figure_panels(args.figure, Path(args.in_dir))
        render(panels, args.out, ncols)
    except MissingColumn as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
