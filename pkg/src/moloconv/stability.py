"""Linear stability of the full 6x6 system and 2D stability maps.

With the sign convention dV/dt = -M V, the system is stable when every
eigenvalue of M has positive real part (equivalent to the Routh-Hurwitz
condition on the characteristic polynomial).  The margin is the smallest
real part, in angular frequency units.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .dynmat import DynamicalSystem, build_full
from .params import TWO_PI, DriveDirect, SystemParams


class EigensolverFailure(RuntimeError):
    pass


@dataclass(frozen=True)
class StabilityVerdict:
    stable: bool
    margin: float            # min Re(lambda), angular units
    eigenvalues: np.ndarray  # the six eigenvalues of M


@dataclass(frozen=True)
class AxisSpec:
    """A sweepable parameter axis."""

    param_name: str
    start: float
    stop: float
    points: int
    scale: str = "linear"    # or "log"

    def grid(self) -> np.ndarray:
        if self.points < 1:
            raise ValueError("points must be >= 1")
        if self.points > 1 and not self.start < self.stop:
            raise ValueError("start must be < stop")
        if self.scale == "log":
            if self.start <= 0:
                raise ValueError("log axes need start > 0")
            return np.geomspace(self.start, self.stop, self.points)
        if self.scale != "linear":
            raise ValueError(f"unknown scale {self.scale!r}")
        return np.linspace(self.start, self.stop, self.points)


@dataclass(frozen=True)
class StabilityMap:
    x_axis: AxisSpec
    y_axis: AxisSpec
    verdicts: np.ndarray   # 2D bool, shape (len(y), len(x))
    margins: np.ndarray    # 2D float, same shape, angular units


SWEEPABLE = ("gA", "N", "kappa_a", "kappa_c", "gamma_B", "delta", "g_c")


def worker_count() -> int:
    """Worker cap from MOLOCONV_THREADS (default 1)."""
    import os
    try:
        return max(1, int(os.environ.get("MOLOCONV_THREADS", "1")))
    except ValueError:
        return 1


def pmap(fn, items) -> list:
    """Order-preserving map, threaded when MOLOCONV_THREADS > 1.

    Grid points are independent and numpy's eig/solve release the GIL, so
    threads help; results come back in deterministic grid order either way.
    """
    n = worker_count()
    items = list(items)
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    from concurrent.futures import ThreadPoolExecutor
    with ThreadPoolExecutor(max_workers=n) as ex:
        return list(ex.map(fn, items))


def classify(sys: DynamicalSystem, tol_margin: float | None = None) -> StabilityVerdict:
    """Eigenvalue stability verdict for one dynamical system."""
    if not np.all(np.isfinite(sys.m)):
        raise EigensolverFailure("coefficient matrix contains non-finite entries")
    try:
        eig = np.linalg.eigvals(sys.m)
    except np.linalg.LinAlgError as exc:
        raise EigensolverFailure(str(exc))
    margin = float(eig.real.min())
    if tol_margin is None:
        tol_margin = 1e-9 * float(np.max(np.abs(sys.m)))
    return StabilityVerdict(stable=margin > tol_margin, margin=margin,
                            eigenvalues=eig)


def apply_axis(p: SystemParams, name: str, value: float) -> SystemParams:
    """Return a copy of ``p`` with one sweepable parameter replaced.

    ``gA`` overrides the enhanced coupling magnitude (direct drives only);
    ``N`` rescales the collective coupling through sqrt(N).
    """
    if name not in SWEEPABLE:
        raise ValueError(f"parameter {name!r} is not sweepable")
    if name == "gA":
        if not isinstance(p.drive, DriveDirect):
            raise ValueError("gA sweeps need a direct drive")
        return replace(p, drive=replace(p.drive, g_a_enh_thz=complex(value)))
    if name == "N":
        n = int(round(value))
        if n < 1:
            raise ValueError("N must be >= 1")
        return replace(p, n_molecules=n)
    if name == "delta":
        if not isinstance(p.drive, DriveDirect):
            raise ValueError("delta sweeps need a direct drive")
        return replace(p, drive=replace(p.drive, delta_thz=float(value)))
    field = {"kappa_a": "kappa_a_thz", "kappa_c": "kappa_c_thz",
             "gamma_B": "gamma_B_thz", "g_c": "g_c_thz"}[name]
    return replace(p, **{field: float(value)})


def stability_map(base: SystemParams, x: AxisSpec, y: AxisSpec) -> StabilityMap:
    """Classify stability on the full x-y grid (row-major, y outer)."""
    from .dynmat import system_from_params
    xg = x.grid()
    yg = y.grid()

    def one(point):
        yv, xv = point
        p = apply_axis(apply_axis(base, y.param_name, yv), x.param_name, xv)
        try:
            v = classify(system_from_params(p))
        except EigensolverFailure:
            return False, float("-inf")
        return v.stable, v.margin

    points = [(yv, xv) for yv in yg for xv in xg]
    flat = pmap(one, points)
    verdicts = np.array([s for s, _ in flat], dtype=bool).reshape(len(yg), len(xg))
    margins = np.array([m for _, m in flat]).reshape(len(yg), len(xg))
    return StabilityMap(x_axis=x, y_axis=y, verdicts=verdicts, margins=margins)


def write_map_csv(path, m: StabilityMap) -> None:
    from .scattering import format_sig
    xg = m.x_axis.grid()
    yg = m.y_axis.grid()
    with open(path, "w", newline="") as fh:
        fh.write("x,y,stable,margin_thz\n")
        for i, yv in enumerate(yg):
            for j, xv in enumerate(xg):
                margin_thz = m.margins[i, j] / TWO_PI
                cell = format_sig(margin_thz) if np.isfinite(margin_thz) else "-inf"
                fh.write(f"{format_sig(xv)},{format_sig(yv)},"
                         f"{int(m.verdicts[i, j])},{cell}\n")
