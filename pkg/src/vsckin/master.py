"""Kinetic master equation: generator assembly, propagation, rate fit.

The state space is the 2(N+2) labels [(R,0), (R,1_0..1_N), (P,0),
(P,1_0..1_N)].  The generator A follows the convention A[j, i] = rate
i -> j for j != i with diagonals closing every column to zero, so
dp/dt = A p conserves probability.  Propagation is spectral: with
Boltzmann weights f_i from the state energies and M = diag(f^-1/2), the
similarity transform B = M A M^-1 is symmetric whenever A satisfies
detailed balance; diagonalizing B once makes p(t) at any t a couple of
matrix-vector products, with none of the instability of inverting an
eigenvector matrix.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import DetailedBalanceError, NumericalError, ParameterError
from .hamiltonian import Eigensystem
from .params import ReactionParams
from .rates import (VibronicDressing, decay_rates, reactive_rate_tables,
                    scattering_table, state_energies, state_space)
from .units import thermal_beta

#: Output grid of the reference kinetics runs: 0..20 ns in 0.2 ns steps.
DEFAULT_DT_PS = 200.0
DEFAULT_N_STEPS = 100

_POPULATION_TOL = 1e-9


def default_time_grid() -> np.ndarray:
    """The 101-point grid 0, 0.2, ..., 20 ns (in ps)."""
    return DEFAULT_DT_PS * np.arange(DEFAULT_N_STEPS + 1, dtype=float)


def boltzmann_weights(energies: np.ndarray, beta: float) -> np.ndarray:
    """Unnormalized exp(-beta (E - E_min)); the shift prevents underflow
    and cancels in every ratio these weights enter."""
    e = np.asarray(energies, dtype=float)
    return np.exp(-beta * (e - e.min()))


@dataclass(frozen=True)
class RateMatrix:
    """Labeled transition-rate generator of one realization.

    generator[j, i] is the i -> j rate (ps^-1) for j != i; energies are
    the state energies (cm^-1) the rates detailed-balance against; beta
    is the inverse temperature the generator was built at.
    """

    labels: tuple
    generator: np.ndarray
    energies: np.ndarray
    beta: float

    @property
    def n_states(self) -> int:
        return len(self.labels)

    @property
    def n_reactant(self) -> int:
        return self.n_states // 2

    def validate(self, colsum_tol: float = 1e-12, balance_tol: float = 1e-10):
        a = self.generator
        off = a - np.diag(np.diag(a))
        if np.any(off < 0.0):
            j, i = np.unravel_index(np.argmin(off), off.shape)
            raise NumericalError(
                f"negative rate {off[j, i]:.3e} for {self.labels[i]} -> "
                f"{self.labels[j]}")
        colsum = np.max(np.abs(a.sum(axis=0)))
        if colsum > colsum_tol:
            raise NumericalError(f"generator column sums reach {colsum:.3e}")
        f = boltzmann_weights(self.energies, self.beta)
        flux = a * f[None, :]  # flux[j, i] = k_(i->j) f_i
        np.fill_diagonal(flux, 0.0)
        scale = np.maximum(flux, flux.T)
        mask = scale > 0.0
        if mask.any():
            rel = np.max(np.abs(flux - flux.T)[mask] / scale[mask])
            if rel > balance_tol:
                raise DetailedBalanceError(
                    f"equilibrium flux asymmetry {rel:.3e} exceeds "
                    f"{balance_tol:.1e}")


@dataclass(frozen=True)
class Trajectory:
    """Populations on a time grid; the first half of the state vector is
    the reactant manifold."""

    times: np.ndarray
    populations: np.ndarray
    n_reactant: int

    @property
    def reactant_population(self) -> np.ndarray:
        return self.populations[:, : self.n_reactant].sum(axis=1)


@dataclass(frozen=True)
class RateFit:
    """Apparent rate from a single-exponential least-squares fit."""

    k: float
    r2_adjusted: float
    warning: str | None = None


def assemble_rate_matrix(eig: Eigensystem, dressing: VibronicDressing,
                         reaction: ReactionParams) -> RateMatrix:
    """Build the full generator of one realization.

    Contains every cross-surface pair (charge transfer), every
    one-quantum decay/re-excitation pair, and every same-surface
    scattering pair; the decay/scattering block is surface-independent
    and shared between the two manifolds.
    """
    labels = state_space(eig.n_modes)
    nv = eig.n_modes + 1
    e_r, e_p = state_energies(dressing, eig, reaction)
    energies = np.concatenate([e_r, e_p])

    flow = np.zeros((2 * nv, 2 * nv))  # flow[i, j] = rate i -> j
    forward, backward = reactive_rate_tables(dressing, eig, reaction)
    flow[:nv, nv:] = forward
    flow[nv:, :nv] = backward

    intra = np.zeros((nv, nv))
    down, up = decay_rates(eig, reaction)
    intra[1:, 0] = down
    intra[0, 1:] = up
    intra[1:, 1:] = scattering_table(eig, reaction)
    flow[:nv, :nv] = intra
    flow[nv:, nv:] = intra

    if np.any(flow < 0.0):
        i, j = np.unravel_index(np.argmin(flow), flow.shape)
        raise NumericalError(
            f"negative rate {flow[i, j]:.3e} for {labels[i]} -> {labels[j]}")

    a = flow.T.copy()
    np.fill_diagonal(a, -flow.sum(axis=1))
    return RateMatrix(labels=labels, generator=a, energies=energies,
                      beta=thermal_beta(reaction.temperature))


def symmetrized_generator(rm: RateMatrix, tol: float = 1e-8) -> tuple:
    """(B, M) with B = M A M^-1 symmetric and M = diag(f^-1/2).

    Raises when the asymmetry of B exceeds ``tol`` (relative to its
    largest entry), which is the operational detailed-balance check.
    """
    f = boltzmann_weights(rm.energies, rm.beta)
    m = 1.0 / np.sqrt(f)
    b = rm.generator * (m[:, None] / m[None, :])
    asym = np.max(np.abs(b - b.T))
    if asym > tol * max(1.0, np.max(np.abs(b))):
        raise DetailedBalanceError(
            f"symmetrized generator asymmetry {asym:.3e} exceeds tolerance"
            f" {tol:.1e}; detailed balance violated")
    return 0.5 * (b + b.T), m


def propagate(rm: RateMatrix, p0: np.ndarray, times=None) -> Trajectory:
    """Solve dp/dt = A p spectrally on the given time grid (ps)."""
    if times is None:
        times = default_time_grid()
    times = np.asarray(times, dtype=float)
    p0 = np.asarray(p0, dtype=float)
    if p0.shape != (rm.n_states,):
        raise ParameterError(
            f"p0 has shape {p0.shape}, expected ({rm.n_states},)")
    if np.any(p0 < 0.0) or abs(p0.sum() - 1.0) > _POPULATION_TOL:
        raise ParameterError("p0 must be non-negative and sum to 1")

    b, m = symmetrized_generator(rm)
    evals, q = np.linalg.eigh(b)
    # a generator's spectrum is non-positive; clip the numerical strays so
    # exp(evals * t) stays bounded at very long times
    evals = np.minimum(evals, 0.0)
    y0 = q.T @ (m * p0)
    amplitudes = np.exp(np.outer(times, evals)) * y0[None, :]
    populations = (amplitudes @ q.T) / m[None, :]

    sums = populations.sum(axis=1)
    if np.max(np.abs(sums - 1.0)) > _POPULATION_TOL:
        raise NumericalError(
            f"probability drift {np.max(np.abs(sums - 1.0)):.3e} during "
            "propagation")
    if populations.min() < -_POPULATION_TOL or populations.max() > 1.0 + _POPULATION_TOL:
        raise NumericalError(
            f"population out of [0, 1]: min {populations.min():.3e}, "
            f"max {populations.max():.3e}")
    return Trajectory(times=times, populations=populations,
                      n_reactant=rm.n_reactant)


def thermal_initial_population(rm: RateMatrix) -> np.ndarray:
    """Boltzmann distribution over the reactant manifold, products empty."""
    nr = rm.n_reactant
    if nr < 1:
        raise ParameterError("no reactant states")
    w = boltzmann_weights(rm.energies[:nr], rm.beta)
    p0 = np.zeros(rm.n_states)
    p0[:nr] = w / w.sum()
    return p0


def _fit_gradient(k: float, times: np.ndarray, pop: np.ndarray) -> float:
    model = np.exp(-k * times)
    return float(np.sum(times * model * (pop - model)))


def fit_rate(traj: Trajectory) -> RateFit:
    """One-parameter least-squares fit of the reactant decay to e^(-kt).

    The sum of squares is minimized over the single rate k by locating
    the root of its gradient (log-linear initial guess, geometric
    bracket expansion, Brent's method).  The returned r2_adjusted is the
    adjusted coefficient of determination of the exponential model; a
    warning string flags non-monotone input or a poor fit, neither of
    which is an error.
    """
    times = traj.times
    pop = traj.reactant_population
    if times.size < 3:
        raise ParameterError("rate fit needs at least 3 time points")
    if abs(pop[0] - 1.0) > 1e-6:
        raise ParameterError(
            f"reactant population must start at 1, got {pop[0]:.8f}")

    warning = None
    rises = np.diff(pop)
    if rises.size and rises.max() > 1e-9:
        warning = (f"reactant population is non-monotone "
                   f"(max rise {rises.max():.3e})")

    if _fit_gradient(0.0, times, pop) >= 0.0:
        k = 0.0  # no net decay
    else:
        positive = pop > 0.0
        if np.count_nonzero(positive) >= 2 and np.ptp(times[positive]) > 0.0:
            slope = np.polyfit(times[positive], np.log(pop[positive]), 1)[0]
            guess = max(-slope, 1e-12)
        else:
            guess = 1.0 / times[-1]
        lo, hi = 0.0, guess
        for _ in range(200):
            if _fit_gradient(hi, times, pop) > 0.0:
                break
            lo, hi = hi, 2.0 * hi
        else:
            raise NumericalError("rate-fit bracket expansion failed")
        k = brentq(_fit_gradient, lo, hi, args=(times, pop),
                   xtol=1e-300, rtol=1e-14)

    model = np.exp(-k * times)
    ss_res = float(np.sum((pop - model) ** 2))
    ss_tot = float(np.sum((pop - pop.mean()) ** 2))
    if ss_tot > 0.0:
        r2 = 1.0 - ss_res / ss_tot
    else:
        r2 = 1.0 if ss_res < 1e-20 else 0.0
    n = times.size
    r2_adj = 1.0 - (1.0 - r2) * (n - 1) / (n - 2)
    if r2_adj < 0.99:
        note = f"low fit quality: adjusted R^2 = {r2_adj:.6f}"
        warning = f"{warning}; {note}" if warning else note
    return RateFit(k=float(k), r2_adjusted=float(r2_adj), warning=warning)
