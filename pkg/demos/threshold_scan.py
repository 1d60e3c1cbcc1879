"""Blue-detuned amplification and its parametric threshold.

Under blue detuning the Stokes channel behaves like a phase-preserving
amplifier: its gain grows with the enhanced coupling and diverges at a
threshold. The 3x3 rotating-wave model predicts the threshold analytically;
the full 6x6 eigenvalue margin shows where the instability actually sets in
once the counter-rotating terms are kept.
"""

import numpy as np

from moloconv import DriveDirect, SystemParams, classify, system_from_params
from moloconv.dynmat import Detuning
from moloconv.rwa import optimal_coupling
from moloconv.params import TWO_PI

G_C = 1e-4 * np.sqrt(10**7)   # collective coupling, 0.3162 THz


def make(ga):
    return SystemParams(30.0, 30.0, 30.0, 0.5, 0.1, 1e-4, 10**7,
                        DriveDirect(-30.0, ga))


rwa_threshold = optimal_coupling(Detuning.BLUE, G_C, 30.0, 0.5, 0.1)
print(f"RWA parametric threshold: |gA|/2pi = {rwa_threshold:.4f} THz")
print()
print("full-model stability margin along the coupling axis:")
print(" |gA|/2pi   margin/2pi (THz)   stable")
for ga in np.linspace(2.8, 3.4, 13):
    v = classify(system_from_params(make(float(ga))))
    print(f"  {ga:6.3f}   {v.margin / TWO_PI:+12.6f}      {v.stable}")

# bisect the actual sign change of the margin
lo, hi = 2.8, 3.4
for _ in range(40):
    mid = 0.5 * (lo + hi)
    if classify(system_from_params(make(mid))).stable:
        lo = mid
    else:
        hi = mid
print()
print(f"full-model flip at |gA|/2pi = {0.5 * (lo + hi):.5f} THz "
      f"(RWA said {rwa_threshold:.2f}; the counter-rotating terms push it up)")
