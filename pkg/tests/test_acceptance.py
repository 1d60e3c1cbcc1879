"""Acceptance gate: one test and one printed verdict line per criterion.

Each test prints `ACCEPTANCE <name>: PASS|FAIL (<detail>)` before asserting,
so the pass/fail status of every criterion is visible in one place even when
some assertions trip.
"""

import sys
import time
import warnings

import numpy as np
import pytest

from moloconv import presets
from moloconv.params import DrivePhysical, SystemParams
from moloconv.dynmat import Detuning, rwa_from_params, system_from_params
from moloconv.rwa import rwa_scattering
from moloconv.scattering import (ANTI_STOKES_SIGN, STOKES_SIGN,
                                 closed_form_u1j, output_spectrum,
                                 scattering_matrix, sideband_report, s_a_add,
                                 t_matrix)
from moloconv.stability import AxisSpec, classify, stability_map
from moloconv.steady_state import MultistableWarning, residual, solve_steady_state
from moloconv.sweep import argmax, run_sweep

from draws import random_stable_systems


def report(name, ok, detail):
    print(f"\nACCEPTANCE {name}: {'PASS' if ok else 'FAIL'} ({detail})",
          file=sys.stderr)
    assert ok, f"{name}: {detail}"


def test_criterion_1_closed_form_oracle():
    t0 = time.perf_counter()
    rng = np.random.default_rng(101)
    worst = 0.0
    for sys_full in random_stable_systems(101, 100, complex_ga=True):
        wb = sys_full.snapshot.omega_b / (2.0 * np.pi)
        grid = np.concatenate([
            -np.geomspace(1e-3 * wb, 1.5 * wb, 25),
            np.geomspace(1e-3 * wb, 1.5 * wb, 25)])
        for w in rng.permutation(grid):
            u = scattering_matrix(sys_full, float(w))
            row = closed_form_u1j(sys_full.snapshot, float(w))
            scale = max(np.max(np.abs(row)), 1e-300)
            worst = max(worst, float(np.max(np.abs(u[0, :] - row)) / scale))
    dt = time.perf_counter() - t0
    report("closed-form-oracle",
           worst < 1e-9 and dt < 5.0,
           f"worst rel err {worst:.2e}, runtime {dt:.2f} s")


def test_criterion_2_fig4_peak_values():
    t0 = time.perf_counter()
    targets = (("rd_S", presets.red, "t_ac_S", 0.13),
               ("bd_S", presets.blue, "t_ac_S", 12.0),
               ("rd_AS", presets.red, "t_ac_AS", 0.66),
               ("bd_AS", presets.blue, "t_ac_AS", 2.39))
    details = []
    ok = True
    for name, make, metric, want in targets:
        table = run_sweep(make(0.0), [presets.SWEEP_GA], [metric])
        am = argmax(table, metric)
        val, loc = am["value"], am["point"]["gA"]
        good = abs(val - want) <= 0.10 * want and abs(loc - 3.48) <= 0.1
        ok = ok and good
        details.append(f"{name}={val:.4g}@{loc:.3g} (want {want}@3.48)")
    dt = time.perf_counter() - t0
    ok = ok and dt < 10.0
    report("fig4-peak-values", ok, "; ".join(details) + f"; runtime {dt:.2f} s")


def test_criterion_3_fig5_noise_limits():
    t0 = time.perf_counter()
    rep_red = sideband_report(system_from_params(presets.red(3.0)), 30.0)
    rep_blue = sideband_report(system_from_params(presets.blue(2.0)), 30.0)
    ok_red = 0.5 <= rep_red.n_add_AS <= 0.7
    ok_blue = abs(rep_blue.n_add_S - 1.3) <= 0.15 * 1.3
    dt = time.perf_counter() - t0
    report("fig5-noise-limits",
           ok_red and ok_blue and dt < 1.0,
           f"n_add_AS(red,3)={rep_red.n_add_AS:.4f} want [0.5,0.7]; "
           f"n_add_S(blue,2)={rep_blue.n_add_S:.4f} want 1.3+-15%; "
           f"runtime {dt:.2f} s")


def test_criterion_4_fig6_amplification_point():
    t0 = time.perf_counter()
    rep = sideband_report(
        system_from_params(presets.blue(0.75, kappa_a_thz=2.0)), 30.0)
    ok = 3e2 <= rep.t_ac_S <= 3e3 and 1.0 <= rep.n_add_S <= 1.3
    dt = time.perf_counter() - t0
    report("fig6-amplification",
           ok and dt < 1.0,
           f"t_ac_S={rep.t_ac_S:.4g} want [3e2,3e3]; "
           f"n_add_S={rep.n_add_S:.4f} want [1.0,1.3]; runtime {dt:.2f} s")


def test_criterion_5_stability_facts():
    red_map = stability_map(presets.red(0.0),
                            AxisSpec("gA", 0.0, 5.0, 101),
                            AxisSpec("N", 1e5, 1e9, 101, "log"))
    red_ok = bool(red_map.verdicts.all())

    flip = None
    grid = np.linspace(2.5, 3.5, 1001)
    prev = classify(system_from_params(presets.blue(float(grid[0])))).stable
    for ga in grid[1:]:
        cur = classify(system_from_params(presets.blue(float(ga)))).stable
        if prev and not cur:
            flip = float(ga)
            break
        prev = cur
    blue_ok = flip is not None and abs(flip - 3.0) <= 0.1
    report("stability-facts",
           red_ok and blue_ok,
           f"red all-stable={red_ok}; blue flip at {flip} want 3.0+-0.1")


def _dominant_deviation(make, kind, sign, ga):
    p = make(ga)
    sys_full = system_from_params(p)
    t_full = t_matrix(scattering_matrix(sys_full, sign * 30.0))[0, 1]
    t_rwa = rwa_scattering(rwa_from_params(p, kind), sign * 30.0).t_ac
    return abs(t_full - t_rwa) / max(t_full, 1e-300)


def test_criterion_6_rwa_convergence():
    devs_small = []
    for ga in (0.05, 0.1):
        devs_small.append(_dominant_deviation(
            presets.red, Detuning.RED, ANTI_STOKES_SIGN, ga))
        devs_small.append(_dominant_deviation(
            presets.blue, Detuning.BLUE, STOKES_SIGN, ga))
    dev_large = _dominant_deviation(
        presets.red, Detuning.RED, ANTI_STOKES_SIGN, 3.0)
    ok = max(devs_small) < 0.05 and dev_large > 0.05
    report("rwa-convergence", ok,
           f"max small-coupling dev {max(devs_small):.2e} < 5%; "
           f"dev at |gA|=3 is {dev_large:.1%} > 5%")


def test_criterion_7_property_suites():
    failures = []
    rng = np.random.default_rng(77)

    # conjugation symmetry of U
    for sys_full in random_stable_systems(701, 10, complex_ga=True):
        w = float(rng.uniform(-40.0, 40.0))
        up = scattering_matrix(sys_full, w)
        um = scattering_matrix(sys_full, -w)
        scale = np.max(np.abs(up))
        for j in range(3):
            for k in range(3):
                if abs(up[j + 3, k + 3] - np.conj(um[j, k])) > 1e-9 * scale:
                    failures.append("conjugation")
                if abs(up[j + 3, k] - np.conj(um[j, k + 3])) > 1e-9 * scale:
                    failures.append("conjugation")

    # phase invariance of T
    from moloconv.dynmat import build_full
    t0 = t_matrix(scattering_matrix(system_from_params(presets.red(3.0)), -30.0))
    for _ in range(5):
        phi = rng.uniform(0.0, 2.0 * np.pi)
        sysp = build_full(30.0, 3.0 * np.exp(1j * phi), 0.31622776601683794,
                          30.0, 30.0, 30.0, 0.5, 0.1)
        tp = t_matrix(scattering_matrix(sysp, -30.0))
        if not np.allclose(tp, t0, rtol=1e-12, atol=1e-15):
            failures.append("phase-invariance")

    # decoupled reflection T = I3
    sys_dec = build_full(10.0, 0.0, 0.0, 30.0, 30.0, 30.0, 0.5, 0.1)
    for w in np.linspace(-40.0, 40.0, 9):
        if not np.allclose(t_matrix(scattering_matrix(sys_dec, float(w))),
                           np.eye(3), atol=1e-12):
            failures.append("decoupled-reflection")

    # output floor S_a,out >= T_ac/2
    for sys_full in random_stable_systems(703, 10):
        w = float(rng.uniform(-40.0, 40.0))
        t = t_matrix(scattering_matrix(sys_full, w))
        if output_spectrum(t, np.zeros(3))[0] < t[0, 1] / 2.0 - 1e-15:
            failures.append("output-floor")

    # steady-state residual < 1e-10
    for _ in range(10):
        p = SystemParams(30.0, 30.0, 30.0, 0.5, 0.1, 1e-4, 10**7,
                         DrivePhysical(float(rng.uniform(5.0, 60.0)),
                                       float(rng.uniform(1e-7, 3e-5)),
                                       float(rng.uniform(10.0, 800.0))))
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", MultistableWarning)
            sol = solve_steady_state(p)
        for br in sol.branches:
            if residual(p, br) >= 1e-10:
                failures.append("steady-residual")

    report("property-suites", not failures,
           "all property suites green" if not failures
           else "failed: " + ",".join(sorted(set(failures))))
