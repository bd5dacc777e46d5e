"""Validated parameter sets for the light-matter ensemble and the reaction.

All frequencies/energies are wavenumbers (cm^-1), decay rates are ps^-1,
temperature is kelvin.  Detuning is the canonical cavity input; the cavity
frequency is derived as mean_vib_freq + detuning.
"""

import math
from dataclasses import dataclass, replace

from .errors import ParameterError


@dataclass(frozen=True)
class EnsembleParams:
    """One cavity mode collectively coupled to N disordered vibrations.

    Attributes:
        n_molecules: number of molecular vibrations N (>= 1).
        mean_vib_freq: mean vibrational frequency, cm^-1.
        disorder_sigma: standard deviation of the Gaussian frequency
            offsets, cm^-1.  Capped below mean_vib_freq/10 so sampled
            frequencies stay safely positive.
        detuning: cavity - mean vibration frequency, cm^-1.
        collective_coupling: g*sqrt(N), cm^-1.
    """

    n_molecules: int
    mean_vib_freq: float
    disorder_sigma: float
    detuning: float
    collective_coupling: float

    def __post_init__(self):
        if not isinstance(self.n_molecules, int) or self.n_molecules < 1:
            raise ParameterError(
                f"n_molecules must be an integer >= 1, got {self.n_molecules}")
        if not self.mean_vib_freq > 0.0:
            raise ParameterError(
                f"mean_vib_freq must be positive, got {self.mean_vib_freq}")
        if self.disorder_sigma < 0.0:
            raise ParameterError(
                f"disorder_sigma must be >= 0, got {self.disorder_sigma}")
        if not self.disorder_sigma < self.mean_vib_freq / 10.0:
            raise ParameterError(
                "disorder_sigma must be below mean_vib_freq/10 "
                f"({self.mean_vib_freq / 10.0:g} cm^-1), got {self.disorder_sigma}")
        if not self.cavity_freq > 0.0:
            raise ParameterError(
                f"cavity frequency mean_vib_freq + detuning must be positive, "
                f"got {self.cavity_freq}")
        if self.collective_coupling < 0.0:
            raise ParameterError(
                f"collective_coupling must be >= 0, got {self.collective_coupling}")

    @property
    def cavity_freq(self) -> float:
        return self.mean_vib_freq + self.detuning

    @property
    def per_molecule_coupling(self) -> float:
        """g = collective_coupling / sqrt(N)."""
        return self.collective_coupling / math.sqrt(self.n_molecules)

    def without_cavity_coupling(self) -> "EnsembleParams":
        """Same ensemble with g = 0 (bare reference system)."""
        return replace(self, collective_coupling=0.0)


@dataclass(frozen=True)
class ReactionParams:
    """Electron-transfer and relaxation parameters.

    Attributes:
        e_reactant, e_product: diabatic electronic energies, cm^-1.
        lambda_r, lambda_p: dimensionless vibronic couplings of the
            reactive vibration to reactant/product.
        j_rp: diabatic electronic coupling, cm^-1.
        lambda_s: classical solvent reorganization energy, cm^-1 (> 0).
        temperature: K (> 0).
        kappa: bare cavity leakage rate, ps^-1 (>= 0).
        gamma: bare vibrational decay rate, ps^-1 (>= 0).
        eta: dimensionless coupling of each vibration to its local bath.
        omega_cut: Ohmic spectral-density cutoff, cm^-1 (> 0).
    """

    e_reactant: float
    e_product: float
    lambda_r: float
    lambda_p: float
    j_rp: float
    lambda_s: float
    temperature: float
    kappa: float
    gamma: float
    eta: float
    omega_cut: float

    def __post_init__(self):
        if not self.lambda_s > 0.0:
            raise ParameterError(f"lambda_s must be positive, got {self.lambda_s}")
        if not self.temperature > 0.0:
            raise ParameterError(
                f"temperature must be positive, got {self.temperature}")
        if self.kappa < 0.0:
            raise ParameterError(f"kappa must be >= 0, got {self.kappa}")
        if self.gamma < 0.0:
            raise ParameterError(f"gamma must be >= 0, got {self.gamma}")
        if self.eta < 0.0:
            raise ParameterError(f"eta must be >= 0, got {self.eta}")
        if not self.omega_cut > 0.0:
            raise ParameterError(f"omega_cut must be positive, got {self.omega_cut}")

    def at_temperature(self, temperature: float) -> "ReactionParams":
        return replace(self, temperature=temperature)

    def with_gamma(self, gamma: float) -> "ReactionParams":
        return replace(self, gamma=gamma)


def default_params(n_molecules: int = 256) -> tuple[EnsembleParams, ReactionParams]:
    """Reference parameter set.

    Mean vibration 2000 cm^-1 with 10 cm^-1 inhomogeneous broadening,
    resonant cavity, collective coupling 8*sigma_v; exoergic transfer
    (E_P = -0.6 mean_vib_freq) with lambda_P = 1.5, J_RP = 20 cm^-1,
    lambda_s = 160 cm^-1 at 298 K; kappa = 1 ps^-1, gamma = 0.01 ps^-1,
    Ohmic bath eta = 2e-3 with 50 cm^-1 cutoff.
    """
    mean = 2000.0
    sigma = 10.0
    ens = EnsembleParams(
        n_molecules=n_molecules,
        mean_vib_freq=mean,
        disorder_sigma=sigma,
        detuning=0.0,
        collective_coupling=8.0 * sigma,
    )
    rxn = ReactionParams(
        e_reactant=0.0,
        e_product=-0.6 * mean,
        lambda_r=0.0,
        lambda_p=1.5,
        j_rp=0.01 * mean,
        lambda_s=0.08 * mean,
        temperature=298.0,
        kappa=1.0,
        gamma=0.01,
        eta=2e-3,
        omega_cut=50.0,
    )
    return ens, rxn
