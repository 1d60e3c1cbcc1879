"""Frequency-domain scattering: U(omega), T(omega), spectra and added noise.

Sideband sign convention (single source of truth, do not duplicate):
the anti-Stokes output at omega_p + omega_b corresponds to Fourier
frequency omega = -omega_b, the Stokes output at omega_p - omega_b to
omega = +omega_b.  Swapping these signs silently exchanges every
red/blue-detuned result, so both sideband helpers below read the constants
ANTI_STOKES_SIGN / STOKES_SIGN instead of hard-coding a sign.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .dynmat import DynamicalSystem, ParamsSnapshot
from .params import TWO_PI

ANTI_STOKES_SIGN = -1.0
STOKES_SIGN = +1.0

# condition-number cutoff above which (M + i*omega*I) is treated as singular
COND_LIMIT = 1e12

# conversion efficiencies below this are treated as zero (added noise undefined)
ZERO_EFFICIENCY_FLOOR = 1e-30

CSV_HEADER = ("omega_thz,T_aa,T_ac,T_aB,T_ca,T_cc,T_cB,"
              "T_Ba,T_Bc,T_BB,S_a_add,n_add_point")


class SingularAtFrequency(ArithmeticError):
    """(M + i*omega*I) is numerically singular: a pole sits at this omega."""


class PoleAtFrequency(ArithmeticError):
    """A closed-form denominator vanished relative to its term magnitudes."""


class ZeroEfficiency(ArithmeticError):
    """Conversion efficiency is numerically zero; added noise is undefined."""


class Regime(enum.Enum):
    RED = "red"
    BLUE = "blue"
    OTHER = "other"


@dataclass(frozen=True)
class ScatteringResult:
    """U, T and added-noise spectrum at a single Fourier frequency."""

    omega_thz: float
    u: np.ndarray          # 6x6 complex
    t: np.ndarray          # 3x3 real, nonnegative
    s_add: float           # (T_aa + T_aB)/2


@dataclass(frozen=True)
class SidebandReport:
    t_ac_AS: float
    t_ac_S: float
    n_add_AS: float
    n_add_S: float
    detuning_regime: Regime


def scattering_matrix(sys: DynamicalSystem, omega_thz: float) -> np.ndarray:
    """U(omega) = L (M + i*omega*I)^-1 L - I via a dense linear solve."""
    w = TWO_PI * omega_thz
    a = sys.m + 1j * w * np.eye(6)
    if np.linalg.cond(a) > COND_LIMIT:
        raise SingularAtFrequency(
            f"(M + i*omega*I) singular at omega = {omega_thz} THz")
    x = np.linalg.solve(a, sys.l)
    return sys.l @ x - np.eye(6)


def scattering_result(sys: DynamicalSystem, omega_thz: float) -> ScatteringResult:
    u = scattering_matrix(sys, omega_thz)
    t = t_matrix(u)
    return ScatteringResult(omega_thz=omega_thz, u=u, t=t, s_add=s_a_add(t))


def t_matrix(u: np.ndarray) -> np.ndarray:
    """Scattering probabilities T_oo' = |U_jk|^2 + |U_j,k+3|^2."""
    t = np.empty((3, 3))
    for j in range(3):
        for k in range(3):
            t[j, k] = abs(u[j, k]) ** 2 + abs(u[j, k + 3]) ** 2
    return t


def s_a_add(t: np.ndarray) -> float:
    """Added-noise spectrum of the VIS output: vacuum leakage from a and B."""
    return 0.5 * (t[0, 0] + t[0, 2])


def output_spectrum(t: np.ndarray, s_in) -> np.ndarray:
    """S_out = T (S_in + 1/2), the half accounting for vacuum input."""
    s_in = np.asarray(s_in, dtype=float)
    if np.any(s_in < 0):
        raise ValueError("input spectra must be nonnegative")
    return t @ (s_in + 0.5)


def closed_form_u1j(s: ParamsSnapshot, omega_thz: float) -> np.ndarray:
    """First row of U(omega) from the explicit analytic expressions.

    Independent oracle for :func:`scattering_matrix`; evaluates the printed
    closed forms term by term rather than inverting anything.
    """
    w = TWO_PI * omega_thz
    d, ka, kc, gB = s.delta, s.kappa_a, s.kappa_c, s.gamma_B
    wb, wc = s.omega_b, s.omega_c
    ga = s.g_a_enh
    gc = s.g_c_coll
    ga2 = abs(ga) ** 2

    f1 = ((gB ** 2 + 2j * gB * w) * (d ** 2 + (ka + 1j * w) ** 2)
          - 4.0 * ga2 * d * wb) * ((kc + 1j * w) ** 2 + wc ** 2)
    f2 = (d ** 2 + (ka + 1j * w) ** 2) * (
        (wb ** 2 - w ** 2) * (wc ** 2 + (kc + 1j * w) ** 2)
        - 4.0 * gc ** 2 * wb * wc)
    f = f1 + f2
    if abs(f) < 1e-14 * max(abs(f1), abs(f2), 1e-300):
        raise PoleAtFrequency(
            f"closed-form denominator vanishes at omega = {omega_thz} THz")

    u11 = (((kc + 1j * w) ** 2 + wc ** 2)
           * (((d + 1j * ka) ** 2 - w ** 2) * ((w - 1j * gB) ** 2 - wb ** 2)
              + 4.0 * ga2 * wb * (d + 1j * ka))
           + 4.0 * gc ** 2 * wb * wc * ((d + 1j * ka) ** 2 - w ** 2)) / f
    u12 = (4.0 * gc * ga * np.sqrt(ka * kc) * wb * (d - w + 1j * ka)
           * (kc + 1j * (w - wc))) / f
    u13 = (2j * ga * np.sqrt(ka * gB) * (d - w + 1j * ka)
           * (w - wb - 1j * gB) * ((w - 1j * kc) ** 2 - wc ** 2)) / f
    u14 = 4j * ga ** 2 * ka * wb * ((kc + 1j * w) ** 2 + wc ** 2) / f
    u15 = (4.0 * gc * ga * np.sqrt(ka * kc) * wb * (d - w + 1j * ka)
           * (kc + 1j * (w + wc))) / f
    u16 = (2j * ga * np.sqrt(ka * gB) * (d - w + 1j * ka)
           * (w + wb - 1j * gB) * ((w - 1j * kc) ** 2 - wc ** 2)) / f
    return np.array([u11, u12, u13, u14, u15, u16])


def sideband_report(sys: DynamicalSystem, omega_b_thz: float,
                    rel_tol: float = 1e-6) -> SidebandReport:
    """Conversion efficiencies and added-noise quanta at both sidebands."""
    t_as = t_matrix(scattering_matrix(sys, ANTI_STOKES_SIGN * omega_b_thz))
    t_s = t_matrix(scattering_matrix(sys, STOKES_SIGN * omega_b_thz))
    t_ac_as = t_as[0, 1]
    t_ac_s = t_s[0, 1]
    if t_ac_as < ZERO_EFFICIENCY_FLOOR or t_ac_s < ZERO_EFFICIENCY_FLOOR:
        raise ZeroEfficiency("conversion efficiency is numerically zero")
    wb = TWO_PI * omega_b_thz
    delta = sys.snapshot.delta
    scale = max(abs(delta), abs(wb), 1e-300)
    if abs(delta - wb) <= rel_tol * scale:
        regime = Regime.RED
    elif abs(delta + wb) <= rel_tol * scale:
        regime = Regime.BLUE
    else:
        regime = Regime.OTHER
    return SidebandReport(
        t_ac_AS=t_ac_as, t_ac_S=t_ac_s,
        n_add_AS=s_a_add(t_as) / t_ac_as,
        n_add_S=s_a_add(t_s) / t_ac_s,
        detuning_regime=regime)


def default_grid(omega_b_thz: float, points: int = 2001) -> np.ndarray:
    """Uniform frequency grid covering both sidebands, +-1.2*omega_b."""
    lim = 1.2 * omega_b_thz
    return np.linspace(-lim, lim, points)


def format_sig(x: float, digits: int = 12) -> str:
    """Format with a fixed number of significant digits (round-half-even)."""
    return np.format_float_scientific(
        x, precision=digits - 1, unique=False, trim="k")


def spectrum_rows(sys: DynamicalSystem, grid) -> list:
    """Per-frequency CSV rows; pole frequencies yield a sentinel row.

    Each row is ``(omega_thz, fields)`` where ``fields`` is either the
    11-tuple of numeric columns or the string sentinel ``"unstable"``.
    """
    rows = []
    for omega in grid:
        try:
            res = scattering_result(sys, float(omega))
        except SingularAtFrequency:
            rows.append((float(omega), "unstable"))
            continue
        t = res.t
        t_ac = t[0, 1]
        n_add = res.s_add / t_ac if t_ac > ZERO_EFFICIENCY_FLOOR else float("inf")
        rows.append((float(omega),
                     (t[0, 0], t[0, 1], t[0, 2], t[1, 0], t[1, 1], t[1, 2],
                      t[2, 0], t[2, 1], t[2, 2], res.s_add, n_add)))
    return rows


def _cell(v: float) -> str:
    if not np.isfinite(v):
        return "inf" if v > 0 else ("-inf" if v < 0 else "nan")
    return format_sig(v)


def write_spectrum_csv(path, rows) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(CSV_HEADER + "\n")
        for omega, fields in rows:
            if isinstance(fields, str):
                fh.write(format_sig(omega) + "," + ",".join([fields] * 11) + "\n")
            else:
                cells = [format_sig(omega)] + [_cell(v) for v in fields]
                fh.write(",".join(cells) + "\n")
