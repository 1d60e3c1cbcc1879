"""Self-consistent mean-field steady state for physically-specified drives.

The three coupled mean-field relations reduce to a single real cubic in the
static vibrational displacement beta = <B> + <B>*:

    a_ss = eps_p / (i*Delta + kappa_a),        Delta = Delta0 + G_a*beta
    c_ss + c_ss* = -2*G_c*omega_c*beta / (omega_c^2 + kappa_c^2)
    beta = -2*omega_b*[G_a*|a_ss|^2 + G_c*(c_ss + c_ss*)] / (omega_b^2 + gamma_B^2)

Substituting the first two into the third and clearing the denominator of
|a_ss|^2 gives

    A * beta * ((Delta0 + G_a*beta)^2 + kappa_a^2) + C1 * G_a * eps_p^2 = 0

with C1 = 2*omega_b/(omega_b^2 + gamma_B^2), C2 = 2*G_c^2*omega_c/(omega_c^2
+ kappa_c^2) and A = 1 - C1*C2.  All real roots are reported as branches;
the selected branch is the one continuously connected to beta = 0 as the
pump is turned off.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .params import TWO_PI, DrivePhysical, SystemParams, collective_couplings


class NoConvergence(RuntimeError):
    """The steady-state root search failed to converge."""


class MultistableWarning(UserWarning):
    """More than one real steady-state branch exists."""


@dataclass(frozen=True)
class SteadyBranch:
    a_ss: complex
    c_ss: complex
    B_ss: complex
    beta: float
    delta_eff_thz: float


@dataclass(frozen=True)
class SteadyStateSolution:
    """Mean fields, effective detuning and enhanced coupling.

    ``branches`` lists every real solution of the reduced cubic;
    ``selected`` indexes the branch connected to the undriven solution.
    All complex amplitudes are dimensionless field amplitudes; the enhanced
    coupling ``g_a_enh_thz`` = G_a * a_ss is in THz.
    """

    a_ss: complex
    c_ss: complex
    B_ss: complex
    delta_eff_thz: float
    g_a_enh_thz: complex
    branches: list = field(default_factory=list)
    selected: int = 0


def _branch_from_beta(beta: float, delta0, g_a_coll, g_c_coll, eps_p,
                      omega_b, omega_c, kappa_a, kappa_c, gamma_B) -> SteadyBranch:
    # angular-unit inputs; amplitudes are dimensionless so units cancel
    delta = delta0 + g_a_coll * beta
    a_ss = eps_p / (1j * delta + kappa_a)
    c_ss = -1j * g_c_coll * beta / (1j * omega_c + kappa_c)
    num = g_a_coll * abs(a_ss) ** 2 + g_c_coll * 2.0 * c_ss.real
    B_ss = -1j * num / (1j * omega_b + gamma_B)
    return SteadyBranch(a_ss=a_ss, c_ss=c_ss, B_ss=B_ss, beta=beta,
                        delta_eff_thz=delta / TWO_PI)


def solve_steady_state(p: SystemParams, rel_tol: float = 1e-12) -> SteadyStateSolution:
    """Solve the mean-field equations for a physical drive.

    Returns every real branch and selects the one continuously connected to
    the undriven (beta = 0) solution by continuation along a geometric ramp
    of the pump amplitude.  Issues :class:`MultistableWarning` when more
    than one branch exists.
    """
    if not isinstance(p.drive, DrivePhysical):
        raise ValueError("steady-state solve requires a physical drive")
    g_c_coll, g_a_coll = collective_couplings(p)
    # work in angular units
    wb = TWO_PI * p.omega_b_thz
    wc = TWO_PI * p.omega_c_thz
    ka = TWO_PI * p.kappa_a_thz
    kc = TWO_PI * p.kappa_c_thz
    gB = TWO_PI * p.gamma_B_thz
    Gc = TWO_PI * g_c_coll
    Ga = TWO_PI * g_a_coll
    d0 = TWO_PI * p.drive.delta0_thz
    ep = TWO_PI * p.drive.eps_p_thz

    C1 = 2.0 * wb / (wb ** 2 + gB ** 2)
    C2 = 2.0 * Gc ** 2 * wc / (wc ** 2 + kc ** 2)
    A = 1.0 - C1 * C2

    def real_roots(eps):
        if Ga == 0.0 or eps == 0.0:
            return np.array([0.0])
        coeffs = [A * Ga ** 2, 2.0 * A * Ga * d0,
                  A * (d0 ** 2 + ka ** 2), C1 * Ga * eps ** 2]
        if A == 0.0:
            # degenerate: equation has no beta dependence left unless forced
            raise NoConvergence("degenerate mean-field reduction (A = 0)")
        roots = np.roots(coeffs)
        scale = max(1.0, float(np.max(np.abs(roots))))
        betas = sorted(float(r.real) for r in roots
                       if abs(r.imag) <= 1e-9 * scale)
        return np.array(betas)

    def polish(beta, eps):
        # Newton refinement of f(b) = A*b*((d0+Ga*b)^2+ka^2) + C1*Ga*eps^2
        for _ in range(60):
            d = d0 + Ga * beta
            f = A * beta * (d ** 2 + ka ** 2) + C1 * Ga * eps ** 2
            fp = A * (d ** 2 + ka ** 2) + 2.0 * A * beta * Ga * d
            if fp == 0.0:
                break
            step = f / fp
            beta -= step
            if abs(step) <= rel_tol * max(1.0, abs(beta)):
                break
        return beta

    betas = real_roots(ep)
    if betas.size == 0:
        raise NoConvergence("no real steady-state branch found")
    betas = np.array([polish(b, ep) for b in betas])
    if betas.size > 1:
        warnings.warn(
            f"{betas.size} steady-state branches exist; selecting the one "
            "connected to the undriven solution", MultistableWarning)

    # continuation from eps_p -> 0: track the root nearest the previous one
    tracked = 0.0
    for frac in np.geomspace(1e-6, 1.0, 40):
        roots = real_roots(ep * frac)
        tracked = float(roots[np.argmin(np.abs(roots - tracked))])
    tracked = polish(tracked, ep)
    selected = int(np.argmin(np.abs(betas - tracked)))

    branches = [
        _branch_from_beta(float(b), d0, Ga, Gc, ep, wb, wc, ka, kc, gB)
        for b in betas
    ]
    sel = branches[selected]
    _check_residual(sel, d0, Ga, Gc, ep, wb, wc, ka, kc, gB)
    return SteadyStateSolution(
        a_ss=sel.a_ss, c_ss=sel.c_ss, B_ss=sel.B_ss,
        delta_eff_thz=sel.delta_eff_thz,
        g_a_enh_thz=(Ga / TWO_PI) * sel.a_ss,
        branches=branches, selected=selected)


def _check_residual(br: SteadyBranch, d0, Ga, Gc, ep, wb, wc, ka, kc, gB,
                    tol: float = 1e-10) -> None:
    delta = d0 + Ga * br.beta
    r1 = br.a_ss - ep / (1j * delta + ka)
    r2 = br.c_ss + 1j * Gc * (br.B_ss.conjugate() + br.B_ss) / (1j * wc + kc)
    num = Ga * abs(br.a_ss) ** 2 + Gc * 2.0 * br.c_ss.real
    r3 = br.B_ss + 1j * num / (1j * wb + gB)
    scale = max(abs(br.a_ss), abs(br.c_ss), abs(br.B_ss), 1.0)
    worst = max(abs(r1), abs(r2), abs(r3)) / scale
    if worst > tol:
        raise NoConvergence(f"steady-state residual {worst:.3e} exceeds {tol:g}")


def residual(p: SystemParams, branch: SteadyBranch) -> float:
    """Worst relative residual of the three mean-field relations."""
    g_c_coll, g_a_coll = collective_couplings(p)
    wb = TWO_PI * p.omega_b_thz
    wc = TWO_PI * p.omega_c_thz
    ka = TWO_PI * p.kappa_a_thz
    kc = TWO_PI * p.kappa_c_thz
    gB = TWO_PI * p.gamma_B_thz
    Gc = TWO_PI * g_c_coll
    Ga = TWO_PI * g_a_coll
    d0 = TWO_PI * p.drive.delta0_thz
    ep = TWO_PI * p.drive.eps_p_thz
    delta = d0 + Ga * branch.beta
    r1 = branch.a_ss - ep / (1j * delta + ka)
    r2 = branch.c_ss + 1j * Gc * (branch.B_ss.conjugate() + branch.B_ss) / (1j * wc + kc)
    num = Ga * abs(branch.a_ss) ** 2 + Gc * 2.0 * branch.c_ss.real
    r3 = branch.B_ss + 1j * num / (1j * wb + gB)
    scale = max(abs(branch.a_ss), abs(branch.c_ss), abs(branch.B_ss), 1.0)
    return max(abs(r1), abs(r2), abs(r3)) / scale


def enhanced_coupling(sol: SteadyStateSolution, p: SystemParams) -> complex:
    """Enhanced collective optomechanical coupling G_a * a_ss, in THz."""
    _, g_a_coll = collective_couplings(p)
    if g_a_coll is None:
        raise ValueError("enhanced_coupling requires a physical drive")
    return g_a_coll * sol.a_ss


def fixed_point_iterate(p: SystemParams, n_iter: int = 20000,
                        mix: float = 0.5) -> float:
    """Independent oracle: damped fixed-point iteration for beta from zero.

    Deliberately avoids the cubic reduction used by :func:`solve_steady_state`.
    """
    g_c_coll, g_a_coll = collective_couplings(p)
    wb = TWO_PI * p.omega_b_thz
    wc = TWO_PI * p.omega_c_thz
    ka = TWO_PI * p.kappa_a_thz
    kc = TWO_PI * p.kappa_c_thz
    gB = TWO_PI * p.gamma_B_thz
    Gc = TWO_PI * g_c_coll
    Ga = TWO_PI * g_a_coll
    d0 = TWO_PI * p.drive.delta0_thz
    ep = TWO_PI * p.drive.eps_p_thz
    beta = 0.0
    for _ in range(n_iter):
        delta = d0 + Ga * beta
        n_a = ep ** 2 / (delta ** 2 + ka ** 2)
        c_sum = -2.0 * Gc * wc * beta / (wc ** 2 + kc ** 2)
        new = -2.0 * wb * (Ga * n_a + Gc * c_sum) / (wb ** 2 + gB ** 2)
        beta = (1.0 - mix) * beta + mix * new
    return beta
