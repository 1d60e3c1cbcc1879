"""Mean-field steady state under a physically specified pump.

Instead of handing the linearized model an effective detuning and enhanced
coupling directly, we give it the bare detuning, the single-molecule
coupling and a pump amplitude, and let the self-consistent solve find the
operating point. Ramping the pump shows the static vibrational displacement
dragging the effective detuning away from the bare one.
"""

import numpy as np

from moloconv import DrivePhysical, SystemParams, solve_steady_state
from moloconv.steady_state import fixed_point_iterate


def make(eps_p):
    return SystemParams(30.0, 30.0, 30.0, 0.5, 0.1, 1e-4, 10**7,
                        DrivePhysical(delta0_thz=30.0, g_a_thz=2e-5,
                                      eps_p_thz=eps_p))


print(" eps_p/2pi   |a_ss|^2    delta_eff/2pi   |gA|/2pi   branches")
for eps in np.geomspace(10.0, 1000.0, 10):
    sol = solve_steady_state(make(float(eps)))
    n_a = abs(sol.a_ss) ** 2
    print(f"  {eps:8.2f}   {n_a:9.3f}   {sol.delta_eff_thz:12.6f}  "
          f"{abs(sol.g_a_enh_thz):9.4f}   {len(sol.branches)}")

# sanity check against a deliberately different method: damped fixed-point
# iteration of the raw mean-field relations, no polynomial reduction
p = make(600.0)
sol = solve_steady_state(p)
beta_fp = fixed_point_iterate(p)
beta = sol.branches[sol.selected].beta
print()
print(f"cubic-reduction beta  = {beta:.12e}")
print(f"fixed-point beta      = {beta_fp:.12e}")
print(f"relative disagreement = {abs(beta - beta_fp) / abs(beta):.2e}")
