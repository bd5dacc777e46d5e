"""Microscopic transition rates of the charge-transfer kinetic model.

A reaction is a two-surface (reactant R / product P) problem whose
vibrational space is truncated to the ground state and the singly
excited states of the N+1 eigenmodes.  Everything here is built from one
realization's :class:`~vsckin.hamiltonian.Eigensystem` plus a
:class:`~vsckin.params.ReactionParams`:

* per-surface equilibrium displacements of every eigenmode and the
  resulting reorganization-energy shift (``VibronicDressing``),
* squared vibrational overlaps between the displaced surfaces,
* nonadiabatic charge-transfer rates (Gaussian activation law with a
  thermal prefactor),
* one-quantum decay rates (cavity leakage + vibrational relaxation) and
  their detailed-balance reverses,
* bath-mediated scattering between eigenmodes sharing a surface.

Energies are in cm^-1 and rates in ps^-1 throughout.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import ParameterError
from .hamiltonian import REACTIVE_COLUMN, Eigensystem
from .params import ReactionParams
from .units import UNITS, thermal_beta

#: Frequency gap (cm^-1) below which scattering uses its analytic limit.
OMEGA_TOL = 1e-6

_ELECTRONIC = ("R", "P")


@dataclass(frozen=True)
class StateLabel:
    """One kinetic state: electronic surface + vibrational occupation.

    ``mode`` is None for the vibrational vacuum or the 0-based eigenmode
    index carrying a single quantum.
    """

    electronic: str
    mode: int | None = None

    def __post_init__(self):
        if self.electronic not in _ELECTRONIC:
            raise ParameterError(
                f"electronic label must be one of {_ELECTRONIC}, got "
                f"{self.electronic!r}")
        if self.mode is not None and (not isinstance(self.mode, int) or self.mode < 0):
            raise ParameterError(f"mode must be None or a non-negative int, got {self.mode!r}")

    def __str__(self):
        vib = "0" if self.mode is None else f"1_{self.mode}"
        return f"{self.electronic}:{vib}"


def state_space(n_modes: int) -> tuple:
    """Ordered labels [(R,0), (R,1_0..1_{n-1}), (P,0), (P,1_0..)]."""
    labels = []
    for x in _ELECTRONIC:
        labels.append(StateLabel(x, None))
        labels.extend(StateLabel(x, q) for q in range(n_modes))
    return tuple(labels)


@dataclass(frozen=True)
class VibronicDressing:
    """Displaced equilibria of the eigenmodes on both surfaces.

    Mode q shifts by lambda_X * c_qr * (omega_r / omega_q) on surface X,
    where r is the reactive bare vibration and omega_r its bare
    frequency.  delta_x is the reorganization-energy correction
    lambda_X^2*omega_r - sum_q lambda_Xq^2*omega_q entering every state
    energy of surface X; huang_rhys holds S_q = (lambda_Pq-lambda_Rq)^2.
    """

    lambda_rq: np.ndarray
    lambda_pq: np.ndarray
    delta_r: float
    delta_p: float
    huang_rhys: np.ndarray
    omega_r: float

    @property
    def s_total(self) -> float:
        return float(self.huang_rhys.sum())

    def displacement(self, electronic: str) -> np.ndarray:
        if electronic == "R":
            return self.lambda_rq
        if electronic == "P":
            return self.lambda_pq
        raise ParameterError(f"unknown electronic label {electronic!r}")

    def delta(self, electronic: str) -> float:
        if electronic == "R":
            return self.delta_r
        if electronic == "P":
            return self.delta_p
        raise ParameterError(f"unknown electronic label {electronic!r}")


def vibronic_dressing(eig: Eigensystem, reaction: ReactionParams,
                      omega_r: float) -> VibronicDressing:
    """Dress an eigensystem with the per-surface displacements.

    ``omega_r`` is the bare frequency of the reactive vibration for this
    realization (its sampled diagonal entry, not an eigenfrequency).
    """
    if omega_r <= 0.0:
        raise ParameterError(f"omega_r must be positive, got {omega_r}")
    scale = eig.coefficients[:, REACTIVE_COLUMN] * (omega_r / eig.frequencies)
    lam_r = reaction.lambda_r * scale
    lam_p = reaction.lambda_p * scale
    delta_r = reaction.lambda_r ** 2 * omega_r - float(np.sum(lam_r ** 2 * eig.frequencies))
    delta_p = reaction.lambda_p ** 2 * omega_r - float(np.sum(lam_p ** 2 * eig.frequencies))
    s_q = (lam_p - lam_r) ** 2
    return VibronicDressing(lambda_rq=lam_r, lambda_pq=lam_p,
                            delta_r=delta_r, delta_p=delta_p,
                            huang_rhys=s_q, omega_r=float(omega_r))


def state_energy(label: StateLabel, dressing: VibronicDressing,
                 eig: Eigensystem, reaction: ReactionParams) -> float:
    """E_X + (one eigenquantum, if any) + reorganization shift, cm^-1."""
    base = reaction.e_reactant if label.electronic == "R" else reaction.e_product
    e = base + dressing.delta(label.electronic)
    if label.mode is not None:
        e += float(eig.frequencies[label.mode])
    return float(e)


def state_energies(dressing: VibronicDressing, eig: Eigensystem,
                   reaction: ReactionParams) -> tuple:
    """(reactant, product) energy vectors over [vacuum, 1_0, .., 1_N]."""
    vib = np.concatenate(([0.0], eig.frequencies))
    e_r = reaction.e_reactant + dressing.delta_r + vib
    e_p = reaction.e_product + dressing.delta_p + vib
    return e_r, e_p


def fc_factor(dressing: VibronicDressing, chi, chi_prime) -> float:
    """Squared vibrational overlap between states of the two surfaces.

    ``chi``/``chi_prime`` follow the StateLabel.mode convention (None =
    vacuum, int = singly excited eigenmode).
    """
    s = dressing.huang_rhys
    es = np.exp(-dressing.s_total)
    if chi is None and chi_prime is None:
        return float(es)
    if chi is None:
        return float(es * s[chi_prime])
    if chi_prime is None:
        return float(es * s[chi])
    if chi == chi_prime:
        return float(es * (1.0 - s[chi]) ** 2)
    return float(es * s[chi] * s[chi_prime])


def fc_table(dressing: VibronicDressing) -> np.ndarray:
    """Full overlap table over [vacuum, 1_0, .., 1_N] x the same."""
    return _kernels.fc_table(dressing.huang_rhys)


def fc_truncation_defect(dressing: VibronicDressing) -> float:
    """Overlap weight lost to states outside the truncated space.

    Starting from the vacuum, the kept overlaps sum to exp(-S)(1+S); the
    remainder sits in multi-quantum states the model drops.
    """
    s = dressing.s_total
    return float(1.0 - np.exp(-s) * (1.0 + s))


def mlj_prefactor(reaction: ReactionParams) -> float:
    """Thermal prefactor sqrt(pi*beta/lambda_s)*J_RP^2 of the
    charge-transfer rate, converted from cm^-1 to ps^-1."""
    beta = thermal_beta(reaction.temperature)
    pref_cm = np.sqrt(np.pi * beta / reaction.lambda_s) * reaction.j_rp ** 2
    return float(pref_cm * UNITS.rad_per_ps_per_wavenumber)


def activation_energy(e_from, e_to, lambda_s: float):
    """(dE + lambda_s)^2 / (4 lambda_s) with dE = e_to - e_from."""
    gap = np.asarray(e_to, dtype=float) - np.asarray(e_from, dtype=float) + lambda_s
    return gap * gap / (4.0 * lambda_s)


def reactive_rate(from_label: StateLabel, to_label: StateLabel,
                  dressing: VibronicDressing, eig: Eigensystem,
                  reaction: ReactionParams) -> float:
    """Charge-transfer rate between two states on opposite surfaces.

    R -> P is the Gaussian activation law; P -> R is obtained from the
    mirror forward rate through detailed balance.
    """
    if from_label.electronic == to_label.electronic:
        raise ParameterError(
            f"reactive transition needs opposite surfaces, got "
            f"{from_label} -> {to_label}")
    beta = thermal_beta(reaction.temperature)
    if from_label.electronic == "R":
        r_label, p_label = from_label, to_label
    else:
        r_label, p_label = to_label, from_label
    e_r = state_energy(r_label, dressing, eig, reaction)
    e_p = state_energy(p_label, dressing, eig, reaction)
    ea = activation_energy(e_r, e_p, reaction.lambda_s)
    fc = fc_factor(dressing, r_label.mode, p_label.mode)
    forward = mlj_prefactor(reaction) * fc * np.exp(-beta * ea)
    if from_label.electronic == "R":
        return float(forward)
    return float(forward * np.exp(beta * (e_p - e_r)))


def reactive_rate_tables(dressing: VibronicDressing, eig: Eigensystem,
                         reaction: ReactionParams) -> tuple:
    """(forward, backward) rate tables over the vibrational space.

    forward[i, j] is the R-state-i -> P-state-j rate and backward[j, i]
    its reverse, with i, j indexing [vacuum, 1_0, ..].  The reverse is
    computed from its own mirrored activation Gaussian, which equals the
    detailed-balance form k_fwd*exp(beta*dE) identically but never
    produces 0*inf at extreme temperatures.
    """
    beta = thermal_beta(reaction.temperature)
    e_r, e_p = state_energies(dressing, eig, reaction)
    fc = _kernels.fc_table(dressing.huang_rhys)
    pref = mlj_prefactor(reaction)
    forward = pref * fc * _kernels.marcus_gaussian(e_r, e_p, reaction.lambda_s, beta)
    backward = pref * fc * _kernels.marcus_gaussian(e_p, e_r, reaction.lambda_s, beta)
    return forward, backward


def decay_rate(eig: Eigensystem, q: int, reaction: ReactionParams) -> tuple:
    """(decay, thermal re-excitation) rates of eigenmode q, ps^-1.

    Decay mixes cavity leakage and vibrational relaxation by the mode's
    photon/molecular weights; the reverse carries the Boltzmann factor
    of the mode quantum.
    """
    ph = float(eig.coefficients[q, 0] ** 2)
    mol = float(np.sum(eig.coefficients[q, 1:] ** 2))
    down = ph * reaction.kappa + mol * reaction.gamma
    beta = thermal_beta(reaction.temperature)
    up = down * np.exp(-beta * eig.frequencies[q])
    return down, float(up)


def decay_rates(eig: Eigensystem, reaction: ReactionParams) -> tuple:
    """Vectorized decay/re-excitation rates over all eigenmodes."""
    ph = eig.photon_fractions()
    down = ph * reaction.kappa + (1.0 - ph) * reaction.gamma
    beta = thermal_beta(reaction.temperature)
    up = down * np.exp(-beta * eig.frequencies)
    return down, up


def _molecular_overlap(eig: Eigensystem) -> np.ndarray:
    w = eig.coefficients[:, 1:] ** 2
    return w @ w.T


def scattering_rate(eig: Eigensystem, q: int, q_prime: int,
                    reaction: ReactionParams) -> float:
    """Bath-mediated q -> q' rate within one surface, ps^-1."""
    if q == q_prime:
        raise ParameterError("scattering requires two distinct modes")
    overlap = float(np.sum(eig.coefficients[q, 1:] ** 2
                           * eig.coefficients[q_prime, 1:] ** 2))
    beta = thermal_beta(reaction.temperature)
    bracket = _kernels.thermal_bracket(
        np.array([eig.frequencies[q], eig.frequencies[q_prime]]),
        beta, reaction.eta, reaction.omega_cut, OMEGA_TOL)[0, 1]
    return float(2.0 * np.pi * overlap * bracket * UNITS.rad_per_ps_per_wavenumber)


def scattering_table(eig: Eigensystem, reaction: ReactionParams) -> np.ndarray:
    """All q -> q' scattering rates (zero diagonal), ps^-1."""
    beta = thermal_beta(reaction.temperature)
    bracket = _kernels.thermal_bracket(eig.frequencies, beta, reaction.eta,
                                       reaction.omega_cut, OMEGA_TOL)
    return (2.0 * np.pi * UNITS.rad_per_ps_per_wavenumber
            * _molecular_overlap(eig) * bracket)
