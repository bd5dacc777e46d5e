"""Closed-form steady-state rates, ensemble aggregation, Eyring fits.

The closed-form rates treat the singly excited product states as fast
intermediates: a forward step k_f feeds them, after which the quantum
either relaxes (gamma, committing the reaction) or drives the back
reaction.  Without a cavity that competition gives
k_f * gamma / (gamma + k_b); with collective coupling the back reaction
out of eigenmode q is suppressed by the mode's reactive weight
w_q = |c_qr|^2, and the committed fraction becomes a w-weighted average
over the dark modes.  Because every factor gamma / (gamma + w_q k_b)
with w_q < 1 exceeds the bare factor, the coupled rate strictly exceeds
the bare one realization by realization.

Ensemble statistics follow the convention that a rate ratio is the
ratio of mean rates (not the mean of per-realization ratios); standard
errors use population variances so replicating the sample exactly
scales them by 1/sqrt(2).
"""

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .hamiltonian import Eigensystem, reactive_weights
from .params import ReactionParams
from .rates import mlj_prefactor
from .units import BOLTZMANN_J_PER_K, GAS_CONSTANT, PLANCK_JS, thermal_beta


def bare_channel_rates(omega_r: float, reaction: ReactionParams) -> tuple:
    """(k_f, k_b) of an isolated reactive molecule with bare frequency
    omega_r: the vacuum -> one-quantum charge-transfer rate and its
    detailed-balance reverse, in ps^-1."""
    if omega_r <= 0.0:
        raise ParameterError(f"omega_r must be positive, got {omega_r}")
    beta = thermal_beta(reaction.temperature)
    s = (reaction.lambda_p - reaction.lambda_r) ** 2
    fc = s * np.exp(-s)
    gap = reaction.e_product + omega_r - reaction.e_reactant
    ea = (gap + reaction.lambda_s) ** 2 / (4.0 * reaction.lambda_s)
    k_f = mlj_prefactor(reaction) * fc * np.exp(-beta * ea)
    k_b = k_f * np.exp(beta * gap)
    return float(k_f), float(k_b)


def analytical_bare_rate(k_f: float, k_b: float, gamma: float) -> float:
    """Steady-state cavity-free rate k_f * gamma / (gamma + k_b)."""
    if k_f < 0.0 or k_b < 0.0 or gamma < 0.0:
        raise ParameterError("rates must be non-negative")
    if gamma + k_b <= 0.0:
        raise ParameterError("gamma + k_b must be positive")
    return k_f * gamma / (gamma + k_b)


def analytical_vsc_rate(eig: Eigensystem, k_f: float, k_b: float,
                        gamma: float) -> float:
    """Steady-state rate under collective coupling.

    k_f * <gamma / (gamma + w_q k_b)> averaged over the dark modes with
    weights w_q = |c_qr|^2.  The average is normalized by the total dark
    reactive weight, so a single dark mode carrying w = 1 reduces
    exactly to the bare formula.
    """
    if k_f < 0.0 or k_b < 0.0 or gamma < 0.0:
        raise ParameterError("rates must be non-negative")
    dark = eig.dark_indices
    if dark.size == 0:
        raise ParameterError("no dark modes: need at least 2 molecules")
    w = reactive_weights(eig)[dark]
    total = float(w.sum())
    if total <= 0.0:
        raise ParameterError("dark modes carry no reactive weight")
    committed = w * gamma / (gamma + w * k_b)
    return k_f * float(committed.sum()) / total


@dataclass(frozen=True)
class SweepPoint:
    """Coordinates of one ensemble in a parameter sweep."""

    n_molecules: int
    detuning: float
    collective_coupling: float
    kappa: float
    temperature: float


@dataclass(frozen=True)
class RealizationRecord:
    """Per-realization outcomes entering the ensemble statistics."""

    index: int
    seed: int
    k_vsc: float
    k_bare: float | None
    k_vsc_analytical: float
    k_bare_analytical: float
    delocalization: float
    dark_pr: float
    r2_vsc: float
    r2_bare: float | None = None


@dataclass(frozen=True)
class EnsembleResult:
    """Disorder-averaged statistics at one sweep point.

    Standard errors are None for single-realization ensembles; the bare
    fields are None when the bare reference was not run.  ``ratio`` is
    mean(k_vsc)/mean(k_bare) with a delta-method standard error that
    accounts for the pairing of the two rates.
    """

    point: SweepPoint
    n_realizations: int
    k_vsc_mean: float
    k_vsc_se: float | None
    k_bare_mean: float | None
    k_bare_se: float | None
    ratio: float | None
    ratio_se: float | None
    deloc_mean: float
    deloc_se: float | None
    dark_pr_mean: float
    dark_pr_se: float | None
    analytical_ratio: float | None


def _mean_se(values: np.ndarray) -> tuple:
    n = values.size
    mean = float(values.mean())
    if n < 2:
        return mean, None
    return mean, float(values.std(ddof=0) / np.sqrt(n))


def ensemble_average(records, point: SweepPoint) -> EnsembleResult:
    """Aggregate per-realization records; order-independent."""
    records = list(records)
    if not records:
        raise ParameterError("no realizations to aggregate")
    n = len(records)
    kv = np.array([r.k_vsc for r in records])
    deloc = np.array([r.delocalization for r in records])
    dark_pr = np.array([r.dark_pr for r in records])
    kv_mean, kv_se = _mean_se(kv)
    deloc_mean, deloc_se = _mean_se(deloc)
    pr_mean, pr_se = _mean_se(dark_pr)

    have_bare = [r.k_bare is not None for r in records]
    if any(have_bare) and not all(have_bare):
        raise ParameterError("mixed records: k_bare present in some only")
    kb_mean = kb_se = ratio = ratio_se = None
    if all(have_bare):
        kb = np.array([r.k_bare for r in records])
        kb_mean, kb_se = _mean_se(kb)
        if kb_mean <= 0.0:
            raise ParameterError("mean bare rate must be positive for a ratio")
        ratio = kv_mean / kb_mean
        if n >= 2:
            var_v = kv.var(ddof=0)
            var_b = kb.var(ddof=0)
            cov = float(np.mean(kv * kb) - kv_mean * kb_mean)
            rel_var = (var_v / kv_mean ** 2 + var_b / kb_mean ** 2
                       - 2.0 * cov / (kv_mean * kb_mean))
            ratio_se = abs(ratio) * np.sqrt(max(rel_var, 0.0) / n)

    ka_v = np.array([r.k_vsc_analytical for r in records])
    ka_b = np.array([r.k_bare_analytical for r in records])
    analytical_ratio = None
    if np.all(ka_b > 0.0):
        analytical_ratio = float(ka_v.mean() / ka_b.mean())

    return EnsembleResult(
        point=point, n_realizations=n,
        k_vsc_mean=kv_mean, k_vsc_se=kv_se,
        k_bare_mean=kb_mean, k_bare_se=kb_se,
        ratio=ratio, ratio_se=ratio_se,
        deloc_mean=deloc_mean, deloc_se=deloc_se,
        dark_pr_mean=pr_mean, dark_pr_se=pr_se,
        analytical_ratio=analytical_ratio,
    )


@dataclass(frozen=True)
class EyringFit:
    """Activation parameters from a linearized k(T) fit."""

    dh_kj_mol: float
    ds_j_mol_k: float
    r2_adjusted: float


def eyring_fit(temperatures, rates_ps1) -> EyringFit:
    """Fit ln(k h / (k_B T)) against 1/T.

    The slope gives -dH/R and the intercept dS/R; the adjusted R^2 is
    evaluated on the k-vs-T form of the model (2 parameters), matching
    how the fit quality of rate data is usually quoted.
    """
    t = np.asarray(temperatures, dtype=float)
    k = np.asarray(rates_ps1, dtype=float)
    if t.size != k.size:
        raise ParameterError("temperatures and rates differ in length")
    if np.unique(t).size < 3:
        raise ParameterError("Eyring fit needs at least 3 distinct temperatures")
    if np.any(t <= 0.0) or np.any(k <= 0.0):
        raise ParameterError("Eyring fit needs positive temperatures and rates")

    k_si = k * 1e12
    x = 1.0 / t
    y = np.log(k_si * PLANCK_JS / (BOLTZMANN_J_PER_K * t))
    slope, intercept = np.polyfit(x, y, 1)
    dh = -slope * GAS_CONSTANT
    ds = intercept * GAS_CONSTANT

    k_model = (BOLTZMANN_J_PER_K * t / PLANCK_JS) * np.exp(intercept + slope * x)
    ss_res = float(np.sum((k_si - k_model) ** 2))
    ss_tot = float(np.sum((k_si - k_si.mean()) ** 2))
    if ss_tot > 0.0:
        r2 = 1.0 - ss_res / ss_tot
    else:
        r2 = 1.0 if ss_res <= 1e-20 * t.size else 0.0
    n = t.size
    # the adjustment needs residual degrees of freedom; with exactly 3
    # points a 2-parameter fit leaves none, so report the plain R^2
    r2_adj = 1.0 - (1.0 - r2) * (n - 1) / (n - 3) if n > 3 else r2
    return EyringFit(dh_kj_mol=float(dh / 1000.0), ds_j_mol_k=float(ds),
                     r2_adjusted=float(r2_adj))
