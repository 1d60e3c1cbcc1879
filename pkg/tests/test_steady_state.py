import warnings

import numpy as np
import pytest

from moloconv.params import DriveDirect, DrivePhysical, SystemParams
from moloconv.steady_state import (MultistableWarning, enhanced_coupling,
                                   fixed_point_iterate, residual,
                                   solve_steady_state)
from moloconv.dynmat import system_from_params
from moloconv.scattering import scattering_matrix


def make(delta0=30.0, g_a=1e-5, eps_p=500.0, **over):
    kwargs = dict(omega_b_thz=30.0, omega_c_thz=30.0, kappa_a_thz=30.0,
                  kappa_c_thz=0.5, gamma_B_thz=0.1, g_c_thz=1e-4,
                  n_molecules=10**7,
                  drive=DrivePhysical(delta0, g_a, eps_p))
    kwargs.update(over)
    return SystemParams(**kwargs)


def test_undriven_system_is_trivial():
    sol = solve_steady_state(make(eps_p=0.0))
    assert sol.a_ss == 0
    assert sol.c_ss == 0
    assert sol.B_ss == 0
    assert sol.delta_eff_thz == pytest.approx(30.0, rel=1e-14)


def test_decoupled_drive_g_a_zero():
    sol = solve_steady_state(make(g_a=0.0))
    expect = 500.0 / (1j * 30.0 + 30.0)
    assert sol.a_ss == pytest.approx(expect, rel=1e-12)
    assert sol.B_ss == 0
    assert sol.c_ss == 0
    assert sol.delta_eff_thz == pytest.approx(30.0, rel=1e-14)


def test_weak_coupling_photon_number():
    # |a_ss|^2 -> eps_p^2/(delta0^2 + kappa_a^2) = 500^2/(2*30^2) as g_a -> 0
    sol = solve_steady_state(make(g_a=1e-12))
    assert abs(sol.a_ss) ** 2 == pytest.approx(500.0 ** 2 / 1800.0, rel=1e-6)


def test_fixed_point_oracle_agreement():
    rng = np.random.default_rng(11)
    for _ in range(20):
        p = make(delta0=float(rng.uniform(5.0, 60.0)),
                 g_a=float(rng.uniform(1e-7, 3e-5)),
                 eps_p=float(rng.uniform(10.0, 800.0)))
        sol = solve_steady_state(p)
        beta_oracle = fixed_point_iterate(p)
        beta = sol.branches[sol.selected].beta
        assert beta == pytest.approx(beta_oracle, rel=1e-8, abs=1e-12)


def test_residuals_below_threshold():
    rng = np.random.default_rng(5)
    for _ in range(20):
        p = make(g_a=float(rng.uniform(1e-7, 3e-5)),
                 eps_p=float(rng.uniform(10.0, 800.0)))
        sol = solve_steady_state(p)
        for br in sol.branches:
            assert residual(p, br) < 1e-10


def test_branch_count_is_odd():
    rng = np.random.default_rng(19)
    for _ in range(30):
        p = make(delta0=float(rng.uniform(-60.0, 60.0)),
                 g_a=float(rng.uniform(1e-7, 1e-4)),
                 eps_p=float(rng.uniform(10.0, 2000.0)))
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", MultistableWarning)
            sol = solve_steady_state(p)
        assert len(sol.branches) in (1, 3)


def test_continuity_toward_undriven():
    # |beta| of the selected branch shrinks monotonically as the pump ramps off
    p0 = make(g_a=2e-5, eps_p=800.0)
    last = float("inf")
    for eps in np.geomspace(800.0, 0.8, 12):
        sol = solve_steady_state(make(g_a=2e-5, eps_p=float(eps)))
        beta = abs(sol.branches[sol.selected].beta)
        assert beta <= last * (1.0 + 1e-12)
        last = beta
    del p0


def test_delta_eff_consistency():
    p = make(g_a=2e-5, eps_p=600.0)
    sol = solve_steady_state(p)
    g_a_coll = p.drive.g_a_thz * np.sqrt(p.n_molecules)
    want = p.drive.delta0_thz + g_a_coll * 2.0 * sol.B_ss.real
    assert sol.delta_eff_thz == pytest.approx(want, rel=1e-10)


def test_enhanced_coupling_definition():
    p = make(g_a=2e-5, eps_p=600.0)
    sol = solve_steady_state(p)
    want = p.drive.g_a_thz * np.sqrt(p.n_molecules) * sol.a_ss
    assert enhanced_coupling(sol, p) == pytest.approx(want, rel=1e-12)
    assert sol.g_a_enh_thz == pytest.approx(want, rel=1e-12)


def test_variant_round_trip_spectra():
    # solve variant B, feed (Delta, enhanced coupling) into variant A, spectra agree
    p = make(g_a=2e-5, eps_p=600.0)
    sol = solve_steady_state(p)
    direct = SystemParams(
        p.omega_b_thz, p.omega_c_thz, p.kappa_a_thz, p.kappa_c_thz,
        p.gamma_B_thz, p.g_c_thz, p.n_molecules,
        DriveDirect(sol.delta_eff_thz, sol.g_a_enh_thz))
    u_b = scattering_matrix(system_from_params(p), -30.0)
    u_a = scattering_matrix(system_from_params(direct), -30.0)
    assert np.max(np.abs(u_b - u_a)) / np.max(np.abs(u_a)) < 1e-12


def test_direct_drive_rejected():
    p = SystemParams(30.0, 30.0, 30.0, 0.5, 0.1, 1e-4, 10**7,
                     DriveDirect(30.0, 3.0))
    with pytest.raises(ValueError):
        solve_steady_state(p)
