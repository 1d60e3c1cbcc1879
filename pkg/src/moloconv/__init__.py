"""moloconv: frequency-domain simulator for IR-to-VIS upconversion in
molecular optomechanical cavities."""

__version__ = "0.1.0"

from .params import (DriveDirect, DrivePhysical, SystemParams,
                     ValidationError, collective_couplings, load_config,
                     params_from_config)
from .steady_state import (MultistableWarning, NoConvergence,
                           SteadyStateSolution, enhanced_coupling,
                           solve_steady_state)
from .dynmat import (Detuning, DynamicalSystem, RwaSystem, build_full,
                     build_rwa, rwa_from_params, system_from_params)
from .scattering import (ScatteringResult, SidebandReport, Regime,
                         PoleAtFrequency, SingularAtFrequency, ZeroEfficiency,
                         closed_form_u1j, output_spectrum, s_a_add,
                         scattering_matrix, scattering_result,
                         sideband_report, t_matrix)
from .rwa import (PrereqViolation, RwaScattering, closed_form_rwa_u12,
                  optimal_coupling, rwa_scattering, sideband_closed_forms)
from .stability import (AxisSpec, EigensolverFailure, StabilityMap,
                        StabilityVerdict, classify, stability_map)
from .sweep import AllUnstable, SweepTable, argmax, run_sweep

__all__ = [name for name in dir() if not name.startswith("_")]
