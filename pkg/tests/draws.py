import numpy as np

from moloconv.dynmat import build_full
from moloconv.stability import classify


def random_stable_systems(seed, count, complex_ga=False):
    """Seeded draws of stable full systems spanning a wide parameter range.

    Draws are rejected until the eigenvalue margin is positive, so every
    yielded system is safely inside the stable region.
    """
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        wb = float(rng.uniform(5.0, 60.0))
        ga = float(rng.uniform(0.0, 2.0))
        if complex_ga:
            ga = ga * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi))
        sys = build_full(
            delta_thz=float(rng.uniform(-1.5, 1.5)) * wb,
            g_a_enh_thz=ga,
            g_c_coll_thz=float(rng.uniform(0.0, 1.0)),
            omega_b_thz=wb,
            omega_c_thz=wb * float(rng.uniform(0.8, 1.2)),
            kappa_a_thz=float(rng.uniform(1.0, 50.0)),
            kappa_c_thz=float(rng.uniform(0.05, 5.0)),
            gamma_B_thz=float(rng.uniform(0.01, 1.0)),
        )
        if classify(sys).stable:
            out.append(sys)
    return out
