"""Hard-coded parameter presets for the published figure reproductions.

Single source of truth for the figure pipelines and the acceptance tests.

Preset-to-source mapping (all frequencies in THz of the 2*pi x X THz
convention):

    base       omega_b = omega_c = 30, kappa_a = 30, kappa_c = 0.5,
               gamma_B = 0.1, g_c = 1e-4 (0.1 GHz), N = 1e7
    fig2       blue detuning, stability maps over (|gA|, N) and (kappa_a, N)
    fig4       spectra at |gA| = 3 plus sideband sweeps over |gA| in [0, 5]
    fig5       spectra at |gA| = 1, 2, 3 for both detunings
    fig6       sideband sweeps at kappa_a = 2 (over |gA|) and |gA| = 0.75
               (over kappa_a)
"""

from __future__ import annotations

from .params import DriveDirect, SystemParams
from .stability import AxisSpec

OMEGA_B_THZ = 30.0
G_C_THZ = 1e-4
N_MOLECULES = 10_000_000
SWEEP_GA = AxisSpec("gA", 0.0, 5.0, 501)


def base_params(delta_thz: float, g_a_enh_thz: complex = 3.0,
                kappa_a_thz: float = 30.0) -> SystemParams:
    return SystemParams(
        omega_b_thz=OMEGA_B_THZ,
        omega_c_thz=OMEGA_B_THZ,
        kappa_a_thz=kappa_a_thz,
        kappa_c_thz=0.5,
        gamma_B_thz=0.1,
        g_c_thz=G_C_THZ,
        n_molecules=N_MOLECULES,
        drive=DriveDirect(delta_thz=delta_thz, g_a_enh_thz=g_a_enh_thz),
    )


def red(g_a_enh_thz: complex = 3.0, kappa_a_thz: float = 30.0) -> SystemParams:
    return base_params(+OMEGA_B_THZ, g_a_enh_thz, kappa_a_thz)


def blue(g_a_enh_thz: complex = 3.0, kappa_a_thz: float = 30.0) -> SystemParams:
    return base_params(-OMEGA_B_THZ, g_a_enh_thz, kappa_a_thz)


FIG2_AXES = {
    # (x axis, y axis); N axes are logarithmic
    "fig2a": (AxisSpec("gA", 0.0, 5.0, 201),
              AxisSpec("N", 1e5, 1e9, 201, "log")),
    "fig2b": (AxisSpec("kappa_a", 0.5, 100.0, 201, "log"),
              AxisSpec("N", 1e5, 1e9, 201, "log")),
}

FIG6_GA_AXIS = AxisSpec("gA", 0.0, 1.5, 501)
FIG6_KAPPA_AXIS = AxisSpec("kappa_a", 0.1, 10.0, 501)

FIGURE_IDS = ("fig2", "fig4", "fig5", "fig6")
