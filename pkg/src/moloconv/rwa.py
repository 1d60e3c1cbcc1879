"""Rotating-wave 3x3 models: resolvent scattering and closed-form sidebands.

The red-detuned model keeps the beam-splitter terms (da-dB and dc-dB
exchange); the blue-detuned model keeps the two-mode-squeezing channel
between da and dB+ instead.  Both take the same effective drive as the full
model: no separate steady state is solved under the RWA.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynmat import Detuning, ParamsSnapshot, RwaSystem
from .params import TWO_PI
from .scattering import PoleAtFrequency, SingularAtFrequency, COND_LIMIT

# relative closeness to the blue parametric threshold that is reported as a
# pole instead of a huge finite gain
THRESHOLD_GUARD = 1e-6


class PrereqViolation(ValueError):
    """Sideband closed forms need Delta = +-omega_b and omega_c = omega_b."""


@dataclass(frozen=True)
class RwaScattering:
    kind: Detuning
    omega_thz: float
    u3: np.ndarray
    t_ac: float
    s_add: float


def rwa_scattering(r: RwaSystem, omega_thz: float) -> RwaScattering:
    """U = J (m3 + i*omega*I)^-1 J - I and the VIS-row figures of merit."""
    w = TWO_PI * omega_thz
    a = r.m3 + 1j * w * np.eye(3)
    if np.linalg.cond(a) > COND_LIMIT:
        raise SingularAtFrequency(
            f"RWA system singular at omega = {omega_thz} THz")
    u3 = r.j3 @ np.linalg.solve(a, r.j3) - np.eye(3)
    return RwaScattering(
        kind=r.kind, omega_thz=omega_thz, u3=u3,
        t_ac=abs(u3[0, 1]) ** 2,
        s_add=0.5 * (abs(u3[0, 0]) ** 2 + abs(u3[0, 2]) ** 2))


def closed_form_rwa_u12(kind: Detuning, s: ParamsSnapshot,
                        omega_thz: float) -> complex:
    """The printed analytic U_12 of the requested rotating-wave model."""
    w = TWO_PI * omega_thz
    d, ka, kc, gB = s.delta, s.kappa_a, s.kappa_c, s.gamma_B
    wb, wc = s.omega_b, s.omega_c
    ga, gc = s.g_a_enh, s.g_c_coll
    ga2 = abs(ga) ** 2
    if kind is Detuning.RED:
        den = (gc ** 2 * (1j * d + 1j * w + ka)
               + (ga2 + (1j * d + 1j * w + ka) * (1j * wb + 1j * w + gB))
               * (1j * wc + 1j * w + kc))
        num = -2.0 * gc * ga * np.sqrt(ka * kc)
    else:
        den = (gc ** 2 * (1j * d + 1j * w + ka)
               + ((1j * d + 1j * w + ka) * (1j * w - 1j * wb + gB) - ga2)
               * (1j * w - 1j * wc + kc))
        num = 2.0 * gc * ga * np.sqrt(ka * kc)
    scale = max(abs(gc ** 2 * (1j * d + 1j * w + ka)), abs(den - gc ** 2 * (1j * d + 1j * w + ka)), 1e-300)
    if abs(den) < 1e-14 * scale:
        raise PoleAtFrequency(
            f"RWA closed-form pole at omega = {omega_thz} THz")
    return num / den


def _check_resonance(kind: Detuning, s: ParamsSnapshot,
                     rel_tol: float = 1e-6) -> None:
    wb = s.omega_b
    want = wb if kind is Detuning.RED else -wb
    scale = max(abs(wb), 1e-300)
    if abs(s.delta - want) > rel_tol * scale:
        raise PrereqViolation(
            f"{kind.value}-detuned closed forms require Delta = "
            f"{'+' if kind is Detuning.RED else '-'}omega_b")
    if abs(s.omega_c - wb) > rel_tol * scale:
        raise PrereqViolation("closed forms require omega_c = omega_b")


def sideband_closed_forms(kind: Detuning, s: ParamsSnapshot) -> dict:
    """Closed-form conversion efficiencies at both sidebands.

    Requires the resonance conditions Delta = +omega_b (red) or -omega_b
    (blue) and omega_c = omega_b.  Within THRESHOLD_GUARD of the blue
    parametric divergence a :class:`PoleAtFrequency` is raised so sweeps can
    distinguish large gain from past-threshold.
    """
    _check_resonance(kind, s)
    ka, kc, gB = s.kappa_a, s.kappa_c, s.gamma_B
    wb = s.omega_b
    ga2 = abs(s.g_a_enh) ** 2
    gc2 = s.g_c_coll ** 2
    num = abs(2.0 * s.g_c_coll * s.g_a_enh * np.sqrt(ka * kc)) ** 2
    gamma_a = 2j * wb + ka
    gamma_c = 2j * wb + kc
    gamma_b = 2j * wb + gB
    if kind is Detuning.RED:
        den_as = gc2 * ka + ga2 * kc + ka * kc * gB
        den_s = abs(gc2 * gamma_a + ga2 * gamma_c
                    + gamma_a * gamma_c * gamma_b) ** 2
        return {"t_AS": num / den_as ** 2, "t_S": num / den_s}
    den_as = abs(gc2 * gamma_a - ga2 * gamma_c
                 + gamma_a * gamma_c * gamma_b) ** 2
    den_s_lin = gc2 * ka + ka * kc * gB - ga2 * kc
    if abs(den_s_lin) <= THRESHOLD_GUARD * (gc2 * ka + ka * kc * gB):
        raise PoleAtFrequency("blue Stokes gain diverges at this coupling")
    return {"t_AS": num / den_as, "t_S": num / den_s_lin ** 2}


def optimal_coupling(kind: Detuning, g_c_coll_thz: float, kappa_a_thz: float,
                     kappa_c_thz: float, gamma_B_thz: float) -> float:
    """|enhanced coupling| (THz) maximizing the dominant sideband.

    Red detuning: impedance matching of the two beam-splitter channels.
    Blue detuning: the parametric threshold, where the Stokes gain diverges.
    """
    if kind is Detuning.RED:
        return g_c_coll_thz * np.sqrt(kappa_a_thz / kappa_c_thz)
    return float(np.sqrt(g_c_coll_thz ** 2 * kappa_a_thz / kappa_c_thz
                         + kappa_a_thz * gamma_B_thz))
