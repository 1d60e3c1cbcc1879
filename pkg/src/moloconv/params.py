"""Physical parameters and unit conventions.

Every frequency or rate in the public API is the ordinary-frequency number X
of the "2*pi x X THz" notation used throughout the literature on molecular
optomechanics.  Internal physics code works in angular units (multiply by
TWO_PI); all dimensionless outputs (scattering probabilities, added noise)
are independent of that factor because the scattering matrix is homogeneous
of degree zero in frequency.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Union

TWO_PI = 2.0 * math.pi


class ValidationError(ValueError):
    """A parameter set violates an invariant.

    Attributes
    ----------
    field : str
        Dotted path of the offending field, e.g. ``"drive.eps_p_thz"``.
    reason : str
        Human-readable description of the violated invariant.
    """

    def __init__(self, field: str, reason: str):
        self.field = field
        self.reason = reason
        super().__init__(f"{field}: {reason}")


@dataclass(frozen=True)
class DriveDirect:
    """Drive specified by the effective detuning and the enhanced coupling.

    The standard figure pipelines are parameterized this way: the effective
    detuning Delta and the pump-enhanced collective optomechanical coupling
    are given directly, bypassing the steady-state solve.
    """

    delta_thz: float
    g_a_enh_thz: complex  # may carry a phase; observables depend on |g_a_enh| only

    mode = "direct"


@dataclass(frozen=True)
class DrivePhysical:
    """Drive specified by bare detuning, single-molecule coupling and pump.

    Requires the self-consistent steady-state solve to obtain the effective
    detuning and enhanced coupling.
    """

    delta0_thz: float
    g_a_thz: float
    eps_p_thz: float

    mode = "physical"


DriveSpec = Union[DriveDirect, DrivePhysical]


@dataclass(frozen=True)
class SystemParams:
    """All physical rates, frequencies and couplings of the three-mode model.

    Parameters
    ----------
    omega_b_thz : float
        Molecular vibrational frequency.
    omega_c_thz : float
        IR cavity mode frequency.
    kappa_a_thz, kappa_c_thz : float
        Decay rates of the VIS and IR modes (single-sided cavity).
    gamma_B_thz : float
        Decay rate of the collective vibrational mode.
    g_c_thz : float
        Single-molecule bilinear (electric-dipole) coupling.
    n_molecules : int
        Number of identical molecules N; collective couplings scale as sqrt(N).
    drive : DriveDirect or DrivePhysical
    """

    omega_b_thz: float
    omega_c_thz: float
    kappa_a_thz: float
    kappa_c_thz: float
    gamma_B_thz: float
    g_c_thz: float
    n_molecules: int
    drive: DriveSpec

    def __post_init__(self):
        validate(self)


def _check_finite(field: str, value: float) -> None:
    if not math.isfinite(value):
        raise ValidationError(field, "must be finite")


def validate(p: SystemParams) -> None:
    """Raise :class:`ValidationError` on the first violated invariant."""
    for field in ("omega_b_thz", "omega_c_thz"):
        v = getattr(p, field)
        _check_finite(field, v)
        if v < 0:
            raise ValidationError(field, "resonance frequency must be >= 0")
    for field in ("kappa_a_thz", "kappa_c_thz", "gamma_B_thz"):
        v = getattr(p, field)
        _check_finite(field, v)
        if v <= 0:
            raise ValidationError(field, "must be > 0")
    _check_finite("g_c_thz", p.g_c_thz)
    if p.g_c_thz < 0:
        raise ValidationError("g_c_thz", "must be >= 0")
    if not isinstance(p.n_molecules, int) or p.n_molecules < 1:
        raise ValidationError("n_molecules", "must be an integer >= 1")
    d = p.drive
    if isinstance(d, DriveDirect):
        _check_finite("drive.delta_thz", d.delta_thz)
        g = complex(d.g_a_enh_thz)
        if not (math.isfinite(g.real) and math.isfinite(g.imag)):
            raise ValidationError("drive.g_a_enh_thz", "must be finite")
    elif isinstance(d, DrivePhysical):
        _check_finite("drive.delta0_thz", d.delta0_thz)
        _check_finite("drive.g_a_thz", d.g_a_thz)
        if d.g_a_thz < 0:
            raise ValidationError("drive.g_a_thz", "must be >= 0")
        _check_finite("drive.eps_p_thz", d.eps_p_thz)
        if d.eps_p_thz < 0:
            raise ValidationError("drive.eps_p_thz", "must be >= 0")
    else:
        raise ValidationError("drive", "must be DriveDirect or DrivePhysical")
    if not math.isfinite(p.g_c_thz * math.sqrt(p.n_molecules)):
        raise ValidationError("g_c_thz", "collective coupling overflows")


def collective_couplings(p: SystemParams):
    """Return (G_c, G_a) collective couplings in THz.

    G_c = g_c * sqrt(N) always; G_a = g_a * sqrt(N) for physical drives,
    None for direct drives (where the enhanced coupling is given instead).
    """
    root_n = math.sqrt(p.n_molecules)
    g_c_coll = p.g_c_thz * root_n
    if isinstance(p.drive, DrivePhysical):
        return g_c_coll, p.drive.g_a_thz * root_n
    return g_c_coll, None


_CONFIG_KEYS = {
    "omega_b_thz", "omega_c_thz", "kappa_a_thz", "kappa_c_thz",
    "gamma_B_thz", "g_c_thz", "n_molecules",
    "drive.mode", "drive.delta_thz", "drive.g_a_enh_thz",
    "drive.delta0_thz", "drive.g_a_thz", "drive.eps_p_thz",
}

_DIRECT_KEYS = {"drive.delta_thz", "drive.g_a_enh_thz"}
_PHYSICAL_KEYS = {"drive.delta0_thz", "drive.g_a_thz", "drive.eps_p_thz"}


def params_from_config(cfg: dict) -> SystemParams:
    """Build a validated :class:`SystemParams` from a flat key-value mapping.

    Unknown keys are an error; the drive variant is selected by
    ``"drive.mode"`` ("direct" or "physical") and only that variant's keys
    may be present.  ``drive.g_a_enh_thz`` accepts a real number or a
    ``[re, im]`` pair.
    """
    unknown = set(cfg) - _CONFIG_KEYS
    if unknown:
        raise ValidationError(sorted(unknown)[0], "unknown configuration key")
    try:
        mode = cfg["drive.mode"]
    except KeyError:
        raise ValidationError("drive.mode", "missing required key")
    if mode == "direct":
        bad = _PHYSICAL_KEYS & set(cfg)
        if bad:
            raise ValidationError(sorted(bad)[0], "not allowed for drive.mode=direct")
        g = cfg.get("drive.g_a_enh_thz", 0.0)
        if isinstance(g, (list, tuple)):
            if len(g) != 2:
                raise ValidationError("drive.g_a_enh_thz", "expected [re, im]")
            g = complex(g[0], g[1])
        else:
            g = complex(g)
        drive: DriveSpec = DriveDirect(
            delta_thz=float(cfg.get("drive.delta_thz", 0.0)), g_a_enh_thz=g)
    elif mode == "physical":
        bad = _DIRECT_KEYS & set(cfg)
        if bad:
            raise ValidationError(sorted(bad)[0], "not allowed for drive.mode=physical")
        drive = DrivePhysical(
            delta0_thz=float(cfg.get("drive.delta0_thz", 0.0)),
            g_a_thz=float(cfg.get("drive.g_a_thz", 0.0)),
            eps_p_thz=float(cfg.get("drive.eps_p_thz", 0.0)))
    else:
        raise ValidationError("drive.mode", "must be 'direct' or 'physical'")
    try:
        return SystemParams(
            omega_b_thz=float(cfg["omega_b_thz"]),
            omega_c_thz=float(cfg["omega_c_thz"]),
            kappa_a_thz=float(cfg["kappa_a_thz"]),
            kappa_c_thz=float(cfg["kappa_c_thz"]),
            gamma_B_thz=float(cfg["gamma_B_thz"]),
            g_c_thz=float(cfg["g_c_thz"]),
            n_molecules=int(cfg["n_molecules"]),
            drive=drive,
        )
    except KeyError as exc:
        raise ValidationError(exc.args[0], "missing required key")


def load_config(path) -> SystemParams:
    """Load and validate a JSON configuration file."""
    with open(path) as fh:
        cfg = json.load(fh)
    if not isinstance(cfg, dict):
        raise ValidationError("<root>", "config must be a JSON object")
    return params_from_config(cfg)
