import numpy as np
import pytest

from moloconv.dynmat import Detuning, build_rwa
from moloconv.rwa import (PoleAtFrequency, PrereqViolation,
                          closed_form_rwa_u12, optimal_coupling,
                          rwa_scattering, sideband_closed_forms)

GC = 0.31622776601683794


def rwa(kind, delta, ga, kappa_a=30.0, gc=GC, gamma_B=0.1):
    return build_rwa(kind, delta, ga, gc, 30.0, 30.0, kappa_a, 0.5, gamma_B)


def test_decoupled_red_unit_modulus():
    r = rwa(Detuning.RED, 30.0, 0.0, gc=0.0)
    res = rwa_scattering(r, -30.0)
    assert res.t_ac == 0.0
    assert np.allclose(np.abs(np.diag(res.u3)), 1.0, rtol=0, atol=1e-12)


def test_resolvent_matches_closed_form_red():
    rng = np.random.default_rng(31)
    for _ in range(40):
        r = rwa(Detuning.RED, 30.0, float(rng.uniform(0.1, 4.0)),
                kappa_a=float(rng.uniform(1.0, 50.0)))
        w = float(rng.uniform(-45.0, 45.0))
        num = rwa_scattering(r, w).u3[0, 1]
        form = closed_form_rwa_u12(Detuning.RED, r.snapshot, w)
        assert num == pytest.approx(form, rel=1e-9, abs=1e-15)


def test_resolvent_matches_closed_form_blue():
    rng = np.random.default_rng(37)
    for _ in range(40):
        r = rwa(Detuning.BLUE, -30.0, float(rng.uniform(0.1, 2.5)),
                kappa_a=float(rng.uniform(1.0, 50.0)))
        w = float(rng.uniform(-45.0, 45.0))
        num = rwa_scattering(r, w).u3[0, 1]
        form = closed_form_rwa_u12(Detuning.BLUE, r.snapshot, w)
        assert num == pytest.approx(form, rel=1e-9, abs=1e-15)


def test_closed_form_zero_gc():
    r = rwa(Detuning.RED, 30.0, 3.0, gc=0.0)
    assert closed_form_rwa_u12(Detuning.RED, r.snapshot, -30.0) == 0.0


def test_red_anti_stokes_reduction():
    # at omega = -omega_b with Delta = omega_c = omega_b the red U12 reduces
    # to the simple real impedance-matching amplitude
    r = rwa(Detuning.RED, 30.0, 3.0)
    s = r.snapshot
    form = closed_form_rwa_u12(Detuning.RED, s, -30.0)
    ka, kc, gB = s.kappa_a, s.kappa_c, s.gamma_B
    gc, ga = s.g_c_coll, s.g_a_enh
    want = -2.0 * gc * ga * np.sqrt(ka * kc) / (
        gc ** 2 * ka + abs(ga) ** 2 * kc + ka * kc * gB)
    assert form == pytest.approx(want, rel=1e-12)
    forms = sideband_closed_forms(Detuning.RED, s)
    assert forms["t_AS"] == pytest.approx(abs(want) ** 2, rel=1e-12)


def test_blue_stokes_closed_form_denominator():
    r = rwa(Detuning.BLUE, -30.0, 2.0)
    s = r.snapshot
    form = closed_form_rwa_u12(Detuning.BLUE, s, 30.0)
    forms = sideband_closed_forms(Detuning.BLUE, s)
    assert forms["t_S"] == pytest.approx(abs(form) ** 2, rel=1e-12)
    # frozen value at |gA| = 2 with the standard parameter set
    assert forms["t_S"] == pytest.approx(3.84, rel=1e-12)


def test_red_sidebands_ordering():
    forms = sideband_closed_forms(Detuning.RED, rwa(Detuning.RED, 30.0, 3.0).snapshot)
    assert forms["t_AS"] > forms["t_S"]
    assert forms["t_AS"] == pytest.approx(2.0 / 3.0, rel=1e-12)


def test_red_matched_efficiency_approaches_one():
    # kappa_a*kappa_c*gamma_B << the coupling terms and matched couplings
    gc = 0.5
    ka, kc, gB = 10.0, 10.0, 1e-9
    ga = gc * np.sqrt(ka / kc)
    r = build_rwa(Detuning.RED, 30.0, ga, gc, 30.0, 30.0, ka, kc, gB)
    forms = sideband_closed_forms(Detuning.RED, r.snapshot)
    assert forms["t_AS"] == pytest.approx(1.0, abs=1e-6)


def test_blue_threshold_pole():
    with pytest.raises(PoleAtFrequency):
        sideband_closed_forms(Detuning.BLUE, rwa(Detuning.BLUE, -30.0, 3.0).snapshot)


def test_blue_monotone_gain_below_threshold():
    last = -1.0
    for ga in np.linspace(0.05, 2.95, 59):
        forms = sideband_closed_forms(
            Detuning.BLUE, rwa(Detuning.BLUE, -30.0, float(ga)).snapshot)
        assert forms["t_S"] > last
        last = forms["t_S"]


def test_prereq_violation():
    with pytest.raises(PrereqViolation):
        sideband_closed_forms(Detuning.RED, rwa(Detuning.RED, 12.0, 3.0).snapshot)
    with pytest.raises(PrereqViolation):
        sideband_closed_forms(Detuning.BLUE, rwa(Detuning.BLUE, 30.0, 1.0).snapshot)


def test_optimal_coupling_values():
    assert optimal_coupling(Detuning.RED, GC, 30.0, 0.5, 0.1) == pytest.approx(
        2.449489742783178, rel=1e-12)
    assert optimal_coupling(Detuning.BLUE, GC, 30.0, 0.5, 0.1) == pytest.approx(
        3.0, rel=1e-12)


def test_optimal_coupling_symmetric_limit():
    assert optimal_coupling(Detuning.RED, 0.4, 1.0, 1.0, 1e-15) == pytest.approx(0.4)
    assert optimal_coupling(Detuning.BLUE, 0.4, 1.0, 1.0, 1e-15) == pytest.approx(0.4)


def test_red_optimum_is_local_maximum():
    opt = optimal_coupling(Detuning.RED, GC, 30.0, 0.5, 0.1)
    vals = {}
    for f in (0.5, 1.0, 2.0):
        s = rwa(Detuning.RED, 30.0, f * opt).snapshot
        vals[f] = sideband_closed_forms(Detuning.RED, s)["t_AS"]
    assert vals[1.0] >= vals[0.5]
    assert vals[1.0] >= vals[2.0]


def test_red_exact_stationary_point_against_grid_argmax():
    # the matching rule |gA|^2 kc = Gc^2 ka drops the ka*kc*gB damping term;
    # the exact maximizer of the printed anti-Stokes efficiency keeps it:
    # d/dx [x/(A + kc*x + ka*kc*gB)^2] = 0 at x = (Gc^2 ka + ka kc gB)/kc
    grid = np.linspace(0.01, 5.0, 2000)
    best = max(grid, key=lambda ga: sideband_closed_forms(
        Detuning.RED, rwa(Detuning.RED, 30.0, float(ga)).snapshot)["t_AS"])
    exact = np.sqrt(GC ** 2 * 30.0 / 0.5 + 30.0 * 0.1)
    assert abs(best - exact) < (grid[1] - grid[0]) * 1.5
    # the damping term is not negligible here, so the matching rule sits
    # visibly below the exact optimum
    opt = optimal_coupling(Detuning.RED, GC, 30.0, 0.5, 0.1)
    assert opt < exact
