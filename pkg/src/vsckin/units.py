"""Unit conventions and physical constants.

Internal conventions used throughout the package:

* energies and frequencies are wavenumbers (cm^-1), with the hbar = 1
  style identification that "hbar*omega" and "omega" are the same number;
* rates are ps^-1; an energy-valued rate expression in cm^-1 is converted
  to ps^-1 by multiplying with ``RAD_PER_PS_PER_WAVENUMBER`` (= 2*pi*c);
* temperatures are kelvin and ``thermal_beta`` returns 1/(k_B T) in
  (cm^-1)^-1.

SI-valued constants (``PLANCK_JS``, ``BOLTZMANN_J_PER_K``, ``GAS_CONSTANT``)
exist only for the Eyring analysis, which needs k_B*T/h in s^-1 and
enthalpies in J/mol.
"""

import math
from dataclasses import dataclass

from .errors import ParameterError

#: Boltzmann constant in cm^-1 per kelvin (CODATA k_B / (h c)).
KB_WAVENUMBER_PER_K = 0.695034800

#: Speed of light in cm per ps.
C_CM_PER_PS = 0.0299792458

#: Angular frequency (rad/ps) per wavenumber: 2*pi*c.
RAD_PER_PS_PER_WAVENUMBER = 2.0 * math.pi * C_CM_PER_PS

#: Planck constant, J*s (exact).
PLANCK_JS = 6.62607015e-34

#: Boltzmann constant, J/K (exact).
BOLTZMANN_J_PER_K = 1.380649e-23

#: Molar gas constant, J/(mol K).
GAS_CONSTANT = 8.31446261815324


@dataclass(frozen=True)
class UnitSystem:
    """Bundle of the conversion constants, mostly for introspection."""

    kb_wavenumber_per_K: float = KB_WAVENUMBER_PER_K
    rad_per_ps_per_wavenumber: float = RAD_PER_PS_PER_WAVENUMBER
    #: hbar in the internal convention, cm^-1 * ps (so that
    #: hbar * omega[rad/ps] == energy[cm^-1]).
    hbar_wavenumber_ps: float = 1.0 / RAD_PER_PS_PER_WAVENUMBER
    h_wavenumber_ps: float = 2.0 * math.pi / RAD_PER_PS_PER_WAVENUMBER


UNITS = UnitSystem()


def thermal_beta(temperature_K: float) -> float:
    """Inverse temperature 1/(k_B T) in (cm^-1)^-1.

    Raises ParameterError for non-positive temperatures.
    """
    if not temperature_K > 0.0:
        raise ParameterError(f"temperature must be positive, got {temperature_K}")
    return 1.0 / (KB_WAVENUMBER_PER_K * temperature_K)


def wavenumber_to_rate_ps(energy_cm1: float) -> float:
    """Convert an energy-valued rate expression (cm^-1) to ps^-1."""
    return energy_cm1 * RAD_PER_PS_PER_WAVENUMBER


def rate_ps_to_wavenumber(rate_ps1: float) -> float:
    """Inverse of :func:`wavenumber_to_rate_ps`."""
    return rate_ps1 / RAD_PER_PS_PER_WAVENUMBER
