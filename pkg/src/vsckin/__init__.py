"""Ensemble kinetics of disordered vibrations collectively coupled to a
cavity mode.

The package builds and diagonalizes disordered light-matter
Hamiltonians, dresses the eigenmodes with a reactive electron-transfer
system, assembles detailed-balanced kinetic master equations, fits
apparent rates, and aggregates everything over disorder ensembles and
parameter sweeps (including activation-parameter fits of rate-vs-
temperature series).  See the README for the model and the CLI.
"""

from ._version import __version__
from .analysis import (EnsembleResult, EyringFit, RealizationRecord,
                       SweepPoint, analytical_bare_rate, analytical_vsc_rate,
                       bare_channel_rates, ensemble_average, eyring_fit)
from .config import RunPlan, load_config, plan_from_mapping
from .errors import (ConfigError, DetailedBalanceError, NumericalError,
                     ParameterError, PurePhotonModeError)
from .hamiltonian import (DisorderRealization, Eigensystem, build_hamiltonian,
                          diagonalize, molecular_pr, molecular_prs,
                          photon_fraction, reactive_mode_delocalization,
                          reactive_weights, sample_disorder)
from .master import (RateFit, RateMatrix, Trajectory, assemble_rate_matrix,
                     default_time_grid, fit_rate, propagate,
                     thermal_initial_population)
from .params import EnsembleParams, ReactionParams, default_params
from .rates import (StateLabel, VibronicDressing, decay_rate, fc_factor,
                    fc_table, fc_truncation_defect, mlj_prefactor,
                    reactive_rate, scattering_rate, state_energy, state_space,
                    vibronic_dressing)
from .runner import execute_plan, realization_seed, write_outputs
from .spectra import bin_eigenmode_stats
from .units import UNITS, UnitSystem, thermal_beta

__all__ = [
    "__version__",
    "ConfigError", "DetailedBalanceError", "NumericalError",
    "ParameterError", "PurePhotonModeError",
    "UnitSystem", "UNITS", "thermal_beta",
    "EnsembleParams", "ReactionParams", "default_params",
    "DisorderRealization", "Eigensystem", "sample_disorder",
    "build_hamiltonian", "diagonalize", "photon_fraction", "molecular_pr",
    "molecular_prs", "reactive_mode_delocalization", "reactive_weights",
    "bin_eigenmode_stats",
    "StateLabel", "VibronicDressing", "vibronic_dressing", "state_energy",
    "state_space", "fc_factor", "fc_table", "fc_truncation_defect",
    "mlj_prefactor", "reactive_rate", "decay_rate", "scattering_rate",
    "RateMatrix", "Trajectory", "RateFit", "assemble_rate_matrix",
    "propagate", "thermal_initial_population", "fit_rate",
    "default_time_grid",
    "SweepPoint", "RealizationRecord", "EnsembleResult", "EyringFit",
    "analytical_bare_rate", "analytical_vsc_rate", "bare_channel_rates",
    "ensemble_average", "eyring_fit",
    "RunPlan", "load_config", "plan_from_mapping",
    "execute_plan", "write_outputs", "realization_seed",
]
