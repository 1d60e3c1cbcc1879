"""Linearized dynamical matrices for the three-mode model.

Fluctuation-vector ordering is fixed here and relied on everywhere
downstream: (da, dc, dB, da+, dc+, dB+).  Index 0 is the VIS mode, 1 the
IR mode, 2 the collective vibration; indices 3-5 are the conjugates.
The equations of motion read dV/dt = -M V + L V_in with M = [[P, Q],
[Q*, P*]] and L = diag(sqrt(2 kappa_a), sqrt(2 kappa_c), sqrt(2 gamma_B),
...repeated).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .params import (TWO_PI, DriveDirect, DrivePhysical, SystemParams,
                     collective_couplings)

# Mode indices within each 3-block of the fluctuation vector.
MODE_A, MODE_C, MODE_B = 0, 1, 2


class Detuning(enum.Enum):
    RED = "red"     # Delta = +omega_b: beam-splitter-like conversion
    BLUE = "blue"   # Delta = -omega_b: amplifier-like conversion


@dataclass(frozen=True)
class ParamsSnapshot:
    """Angular-unit parameters a matrix was built from."""

    delta: float
    g_a_enh: complex
    g_c_coll: float
    omega_b: float
    omega_c: float
    kappa_a: float
    kappa_c: float
    gamma_B: float


@dataclass(frozen=True)
class DynamicalSystem:
    """6x6 coefficient matrix M, damping matrix L and their provenance."""

    m: np.ndarray
    l: np.ndarray
    snapshot: ParamsSnapshot


@dataclass(frozen=True)
class RwaSystem:
    """3x3 rotating-wave model: P (red detuning) or its blue counterpart."""

    kind: Detuning
    m3: np.ndarray
    j3: np.ndarray
    snapshot: ParamsSnapshot


def _p_block(s: ParamsSnapshot) -> np.ndarray:
    return np.array([
        [1j * s.delta + s.kappa_a, 0.0, 1j * s.g_a_enh],
        [0.0, 1j * s.omega_c + s.kappa_c, 1j * s.g_c_coll],
        [1j * np.conj(s.g_a_enh), 1j * s.g_c_coll, 1j * s.omega_b + s.gamma_B],
    ], dtype=complex)


def _q_block(s: ParamsSnapshot) -> np.ndarray:
    q = np.zeros((3, 3), dtype=complex)
    q[0, 2] = q[2, 0] = 1j * s.g_a_enh
    q[1, 2] = q[2, 1] = 1j * s.g_c_coll
    return q


def build_full(delta_thz: float, g_a_enh_thz: complex, g_c_coll_thz: float,
               omega_b_thz: float, omega_c_thz: float, kappa_a_thz: float,
               kappa_c_thz: float, gamma_B_thz: float) -> DynamicalSystem:
    """Assemble the full 6x6 system from THz-valued parameters."""
    _require_positive_rates(kappa_a_thz, kappa_c_thz, gamma_B_thz)
    s = ParamsSnapshot(
        delta=TWO_PI * delta_thz,
        g_a_enh=TWO_PI * complex(g_a_enh_thz),
        g_c_coll=TWO_PI * g_c_coll_thz,
        omega_b=TWO_PI * omega_b_thz,
        omega_c=TWO_PI * omega_c_thz,
        kappa_a=TWO_PI * kappa_a_thz,
        kappa_c=TWO_PI * kappa_c_thz,
        gamma_B=TWO_PI * gamma_B_thz,
    )
    p = _p_block(s)
    q = _q_block(s)
    m = np.block([[p, q], [np.conj(q), np.conj(p)]])
    damp = np.sqrt(2.0 * np.array([s.kappa_a, s.kappa_c, s.gamma_B] * 2))
    return DynamicalSystem(m=m, l=np.diag(damp), snapshot=s)


def build_rwa(kind: Detuning, delta_thz: float, g_a_enh_thz: complex,
              g_c_coll_thz: float, omega_b_thz: float, omega_c_thz: float,
              kappa_a_thz: float, kappa_c_thz: float,
              gamma_B_thz: float) -> RwaSystem:
    """Assemble the 3x3 rotating-wave system for either detuning regime."""
    _require_positive_rates(kappa_a_thz, kappa_c_thz, gamma_B_thz)
    s = ParamsSnapshot(
        delta=TWO_PI * delta_thz,
        g_a_enh=TWO_PI * complex(g_a_enh_thz),
        g_c_coll=TWO_PI * g_c_coll_thz,
        omega_b=TWO_PI * omega_b_thz,
        omega_c=TWO_PI * omega_c_thz,
        kappa_a=TWO_PI * kappa_a_thz,
        kappa_c=TWO_PI * kappa_c_thz,
        gamma_B=TWO_PI * gamma_B_thz,
    )
    if kind is Detuning.RED:
        m3 = _p_block(s)
    else:
        # blue detuning couples da to dB+ and dc+; rotating frame flips the
        # signs of the IR and vibrational rows
        m3 = np.array([
            [1j * s.delta + s.kappa_a, 0.0, 1j * s.g_a_enh],
            [0.0, -1j * s.omega_c + s.kappa_c, -1j * s.g_c_coll],
            [-1j * np.conj(s.g_a_enh), -1j * s.g_c_coll,
             -1j * s.omega_b + s.gamma_B],
        ], dtype=complex)
    j3 = np.diag(np.sqrt(2.0 * np.array([s.kappa_a, s.kappa_c, s.gamma_B])))
    return RwaSystem(kind=kind, m3=m3, j3=j3, snapshot=s)


def _require_positive_rates(*rates_thz: float) -> None:
    for r in rates_thz:
        if not r > 0:
            raise ValueError("decay rates must be > 0")


def system_from_params(p: SystemParams) -> DynamicalSystem:
    """Build the full system from validated parameters.

    Direct drives feed (Delta, enhanced coupling) straight in; physical
    drives are routed through the steady-state solve first.
    """
    delta_thz, g_enh_thz = effective_drive(p)
    g_c_coll, _ = collective_couplings(p)
    return build_full(delta_thz, g_enh_thz, g_c_coll, p.omega_b_thz,
                      p.omega_c_thz, p.kappa_a_thz, p.kappa_c_thz,
                      p.gamma_B_thz)


def rwa_from_params(p: SystemParams, kind: Detuning) -> RwaSystem:
    delta_thz, g_enh_thz = effective_drive(p)
    g_c_coll, _ = collective_couplings(p)
    return build_rwa(kind, delta_thz, g_enh_thz, g_c_coll, p.omega_b_thz,
                     p.omega_c_thz, p.kappa_a_thz, p.kappa_c_thz,
                     p.gamma_B_thz)


def effective_drive(p: SystemParams):
    """(effective detuning, enhanced coupling) in THz for either variant."""
    if isinstance(p.drive, DriveDirect):
        return p.drive.delta_thz, p.drive.g_a_enh_thz
    from .steady_state import solve_steady_state
    sol = solve_steady_state(p)
    return sol.delta_eff_thz, sol.g_a_enh_thz


def matrices_as_json(sys: DynamicalSystem) -> dict:
    """M and L as nested [re, im] arrays for golden-file dumps."""
    return {
        "m": [[[z.real, z.imag] for z in row] for row in sys.m],
        "l": [[float(x) for x in row] for row in sys.l.real],
    }
