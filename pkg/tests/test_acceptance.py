"""End-to-end acceptance checks on the reference parameter set.

Each test exercises one headline claim of the toolkit at production
ensemble sizes (N up to 256, hundreds of disorder realizations), so this
file dominates the suite's runtime (a few minutes on one core).  The
module-scoped fixtures run the expensive sweeps once and the tests read
from them.

Disorder seeds depend only on (master seed, N, detuning, coupling,
index), never on kappa or temperature, so sweeps along those axes are
paired realization by realization.  The detuning sweep deliberately
reuses the zero-detuning seed column for every grid point, which makes
its comparisons paired as well.
"""

import dataclasses
import math
import subprocess
import sys

import numpy as np
import pytest
from scipy.stats import norm

from oracles import arrowhead_eigenvalues, fc_oracle, ode_populations
from vsckin.analysis import SweepPoint, ensemble_average, eyring_fit
from vsckin.hamiltonian import (build_hamiltonian, diagonalize,
                                molecular_prs, sample_disorder)
from vsckin.master import (assemble_rate_matrix, boltzmann_weights, propagate,
                           symmetrized_generator, thermal_initial_population)
from vsckin.params import default_params
from vsckin.rates import VibronicDressing, fc_factor, vibronic_dressing
from vsckin.runner import (build_context, realization_seed, run_realization,
                           simulate_kinetics)
from vsckin.spectra import BIN_WIDTH_FRACTION, SpectralBins

MASTER_SEED = 1
N_LIST = (16, 32, 64, 128, 256)
N_SWEEP_REALIZATIONS = 500
DETUNING_REALIZATIONS = 120
KAPPA_REALIZATIONS = 200
EYRING_REALIZATIONS = 100

DETUNING_GRID = (-60.0, -40.0, -20.0, 0.0, 20.0, 40.0, 60.0)
DETUNING_STEP = 20.0
COUPLING_GRID = (40.0, 80.0, 160.0)
KAPPA_GRID = (0.1, 1.0, 10.0)
EYRING_TEMPERATURES = (273.0, 283.0, 288.0, 293.0, 298.0)


def _point(n, detuning=0.0, coupling=80.0, kappa=1.0, temperature=298.0):
    return SweepPoint(n_molecules=n, detuning=detuning,
                      collective_coupling=coupling, kappa=kappa,
                      temperature=temperature)


@pytest.fixture(scope="module")
def n_sweep():
    """Reference sweep over N at defaults: records, spectra, polaritons."""
    per_n = {}
    spectra = {}
    for n in N_LIST:
        ens, reaction = default_params(n)
        records = []
        if n == 256:
            width = BIN_WIDTH_FRACTION * ens.disorder_sigma
            all_bins = SpectralBins(origin=ens.mean_vib_freq, width=width)
            dark_bins = SpectralBins(origin=ens.mean_vib_freq, width=width)
            lower, upper = [], []
        for i in range(N_SWEEP_REALIZATIONS):
            seed = realization_seed(MASTER_SEED, n, ens.detuning,
                                    ens.collective_coupling, i)
            ctx = build_context(ens, seed, i, with_bare=True)
            record, _ = run_realization(ctx, reaction, i, seed)
            records.append(record)
            if n == 256:
                freqs = ctx.eig_vsc.frequencies
                pf = ctx.eig_vsc.photon_fractions()
                prs = molecular_prs(ctx.eig_vsc)
                all_bins.add(freqs, pf, prs)
                dark_bins.add(freqs[1:-1], pf[1:-1], prs[1:-1])
                lower.append(freqs[0])
                upper.append(freqs[-1])
        per_n[n] = (ensemble_average(records, _point(n)), records)
    spectra["all"] = all_bins.table()
    spectra["dark"] = dark_bins.table()
    spectra["lower_mean"] = float(np.mean(lower))
    spectra["upper_mean"] = float(np.mean(upper))
    return per_n, spectra


@pytest.fixture(scope="module")
def detuning_sweep():
    """Delocalization on a (coupling x detuning) grid plus kinetics at the
    largest coupling, all realizations paired via the zero-detuning seeds."""
    ens0, reaction = default_params(256)
    g_top = COUPLING_GRID[-1]
    deloc = {(g, d): [] for g in COUPLING_GRID for d in DETUNING_GRID}
    records = {d: [] for d in DETUNING_GRID}
    for i in range(DETUNING_REALIZATIONS):
        seed = realization_seed(MASTER_SEED, 256, 0.0,
                                ens0.collective_coupling, i)
        k_bare = None
        k_vsc = {}
        for g in COUPLING_GRID:
            for d in DETUNING_GRID:
                ens = dataclasses.replace(ens0, detuning=d,
                                          collective_coupling=g)
                with_bare = g == g_top and d == 0.0
                ctx = build_context(ens, seed, i, with_bare=with_bare)
                deloc[(g, d)].append(ctx.delocalization)
                if g == g_top:
                    if with_bare:
                        k_bare, _ = simulate_kinetics(
                            ctx.eig_bare, ctx.omega_r, reaction)
                    k, fit = simulate_kinetics(ctx.eig_vsc, ctx.omega_r,
                                               reaction)
                    k_vsc[d] = (k, fit.r2_adjusted, ctx)
        for d, (k, r2, ctx) in k_vsc.items():
            records[d].append(_paired_record(i, seed, k, k_bare, r2, ctx))
    results = {d: ensemble_average(records[d],
                                   _point(256, detuning=d, coupling=g_top))
               for d in DETUNING_GRID}
    deloc_mean = {key: float(np.mean(vals)) for key, vals in deloc.items()}
    return deloc_mean, results


def _paired_record(index, seed, k_vsc, k_bare, r2, ctx):
    from vsckin.analysis import RealizationRecord
    return RealizationRecord(
        index=index, seed=seed, k_vsc=k_vsc, k_bare=k_bare,
        k_vsc_analytical=k_vsc, k_bare_analytical=1.0,
        delocalization=ctx.delocalization, dark_pr=ctx.dark_pr,
        r2_vsc=r2, r2_bare=None)


@pytest.fixture(scope="module")
def kappa_sweep():
    """Paired cavity-leakage sweep at N = 256."""
    ens, reaction = default_params(256)
    records = {kap: [] for kap in KAPPA_GRID}
    for i in range(KAPPA_REALIZATIONS):
        seed = realization_seed(MASTER_SEED, 256, ens.detuning,
                                ens.collective_coupling, i)
        ctx = build_context(ens, seed, i, with_bare=True)
        for kap in KAPPA_GRID:
            rxn = dataclasses.replace(reaction, kappa=kap)
            record, _ = run_realization(ctx, rxn, i, seed)
            records[kap].append(record)
    return {kap: ensemble_average(records[kap], _point(256, kappa=kap))
            for kap in KAPPA_GRID}


@pytest.fixture(scope="module")
def temperature_sweep():
    """Paired temperature sweep at N = 256 for the activation fits."""
    ens, reaction = default_params(256)
    k_vsc = {t: [] for t in EYRING_TEMPERATURES}
    k_bare = {t: [] for t in EYRING_TEMPERATURES}
    for i in range(EYRING_REALIZATIONS):
        seed = realization_seed(MASTER_SEED, 256, ens.detuning,
                                ens.collective_coupling, i)
        ctx = build_context(ens, seed, i, with_bare=True)
        for t in EYRING_TEMPERATURES:
            rxn = reaction.at_temperature(t)
            k, _ = simulate_kinetics(ctx.eig_vsc, ctx.omega_r, rxn)
            k_vsc[t].append(k)
            kb, _ = simulate_kinetics(ctx.eig_bare, ctx.omega_r, rxn)
            k_bare[t].append(kb)
    temps = list(EYRING_TEMPERATURES)
    return {
        "temps": temps,
        "vsc": eyring_fit(temps, [np.mean(k_vsc[t]) for t in temps]),
        "bare": eyring_fit(temps, [np.mean(k_bare[t]) for t in temps]),
    }


# --------------------------------------------------------------- criteria

def test_criterion_01_rate_enhancement_at_reference_size(n_sweep):
    per_n, _ = n_sweep
    result, _records = per_n[256]
    assert result.n_realizations >= 500
    assert 1.45 <= result.ratio <= 1.65, (
        f"ensemble ratio at N=256 is {result.ratio:.4f} "
        f"(SE {result.ratio_se:.4f}), outside [1.45, 1.65]")


def test_criterion_02_ratio_monotone_saturation(n_sweep):
    per_n, _ = n_sweep
    ratios = [per_n[n][0].ratio for n in N_LIST]
    ses = [per_n[n][0].ratio_se for n in N_LIST]
    problems = []
    for a, b, se_a, se_b, n_a, n_b in zip(ratios, ratios[1:], ses, ses[1:],
                                          N_LIST, N_LIST[1:]):
        allowed = 2.0 * math.hypot(se_a, se_b)
        if b < a - allowed:
            problems.append(
                f"ratio drops {a:.4f} -> {b:.4f} from N={n_a} to N={n_b} "
                f"(allowed slack {allowed:.4f})")
    flat = abs(ratios[-1] - ratios[-2]) / ratios[-2]
    if flat >= 0.05:
        problems.append(f"last two points differ by {100 * flat:.1f}%")
    summary = ", ".join(f"N={n}: {r:.4f}±{s:.4f}"
                        for n, r, s in zip(N_LIST, ratios, ses))
    assert not problems, f"{'; '.join(problems)} [{summary}]"


def test_criterion_03_dark_mode_semilocalization(n_sweep):
    per_n, _ = n_sweep
    prs = {n: per_n[n][0].dark_pr_mean for n in N_LIST}
    for n, pr in prs.items():
        assert 1.5 <= pr <= 3.5, f"dark-mode PR at N={n} is {pr:.3f}"
    spread = max(prs.values()) / min(prs.values())
    assert spread < 1.3, f"PR varies by factor {spread:.3f} across N: {prs}"


def test_criterion_04_polariton_signature(n_sweep):
    _, spectra = n_sweep
    table = spectra["all"]
    centers = table["bin_center_cm1"]
    pf = table["mean_photon_fraction"]
    # photon character peaks at the two spectral extremes at ~50%
    assert abs(pf[0] - 0.5) <= 0.05, f"lower-edge photon fraction {pf[0]:.3f}"
    assert abs(pf[-1] - 0.5) <= 0.05, f"upper-edge photon fraction {pf[-1]:.3f}"
    # ... and nowhere else: the disorder band in the middle is dark
    dark_band = np.abs(centers - 2000.0) <= 30.0
    assert dark_band.any()
    assert np.nanmax(pf[dark_band]) < 0.1
    assert abs(centers[int(np.nanargmax(pf))] - 2000.0) > 40.0
    # polariton positions: mean vibration 2000 +/- 80, tolerance 1.5 sigma
    assert abs(spectra["lower_mean"] - 1920.0) <= 15.0, spectra["lower_mean"]
    assert abs(spectra["upper_mean"] - 2080.0) <= 15.0, spectra["upper_mean"]


def test_criterion_05_dark_spectrum_matches_disorder_gaussian(n_sweep):
    _, spectra = n_sweep
    table = spectra["dark"]
    centers = table["bin_center_cm1"]
    p = table["probability"]
    half = 0.5 * BIN_WIDTH_FRACTION * 10.0
    q = (norm.cdf(centers + half, loc=2000.0, scale=10.0)
         - norm.cdf(centers - half, loc=2000.0, scale=10.0))
    tv = 0.5 * (np.abs(p - q).sum() + (1.0 - q.sum()))
    assert tv < 0.1, f"total-variation distance {tv:.4f}"


def test_criterion_06_analytical_bracketing(n_sweep):
    per_n, _ = n_sweep
    for n in N_LIST:
        result, records = per_n[n]
        for r in records:
            assert r.k_vsc_analytical > r.k_bare_analytical, (
                f"N={n} realization {r.index}: closed-form coupled rate "
                f"{r.k_vsc_analytical:.3e} <= bare {r.k_bare_analytical:.3e}")
        floor = result.analytical_ratio - 3.0 * result.ratio_se
        assert result.ratio >= floor, (
            f"N={n}: simulated ratio {result.ratio:.4f} below analytical "
            f"{result.analytical_ratio:.4f} - 3 SE")


def test_criterion_07_detuning_response(detuning_sweep):
    deloc_mean, results = detuning_sweep
    problems = []
    for g in COUPLING_GRID:
        profile = [deloc_mean[(g, d)] for d in DETUNING_GRID]
        peak = int(np.argmax(profile))
        desc = ", ".join(f"{d:g}: {v:.4f}"
                         for d, v in zip(DETUNING_GRID, profile))
        if abs(DETUNING_GRID[peak]) > DETUNING_STEP + 1e-9:
            problems.append(
                f"coupling {g:g}: delocalization peaks at detuning "
                f"{DETUNING_GRID[peak]:g}, not near 0 [{desc}]")
        outward_ok = (
            all(profile[k] <= profile[k + 1] for k in range(peak))
            and all(profile[k] >= profile[k + 1]
                    for k in range(peak, len(profile) - 1)))
        if not outward_ok:
            problems.append(
                f"coupling {g:g}: delocalization does not decrease toward "
                f"the grid edges [{desc}]")

    # kinetic ratio follows the same shape at the largest coupling (2 SE)
    ratios = {d: results[d].ratio for d in DETUNING_GRID}
    ses = {d: results[d].ratio_se for d in DETUNING_GRID}
    near_zero = max(ratios[d] for d in DETUNING_GRID
                    if abs(d) <= DETUNING_STEP)
    for d in DETUNING_GRID:
        if abs(d) <= DETUNING_STEP:
            continue
        slack = 2.0 * math.hypot(ses[d], min(ses[x] for x in DETUNING_GRID
                                             if abs(x) <= DETUNING_STEP))
        if ratios[d] > near_zero + slack:
            problems.append(
                f"ratio at detuning {d:g} ({ratios[d]:.4f}) exceeds the "
                f"near-zero peak ({near_zero:.4f}) by more than 2 SE")
    order = [d for d in DETUNING_GRID if d >= 0.0]
    for side in (order, [-d for d in order]):
        for a, b in zip(side, side[1:]):
            slack = 2.0 * math.hypot(ses[a], ses[b])
            if ratios[b] > ratios[a] + slack:
                problems.append(
                    f"ratio rises outward {a:g} -> {b:g} "
                    f"({ratios[a]:.4f} -> {ratios[b]:.4f}) beyond 2 SE")
    assert not problems, "; ".join(problems)


def test_criterion_08_leakage_insensitivity(kappa_sweep):
    ratios = {kap: res.ratio for kap, res in kappa_sweep.items()}
    hi, lo = max(ratios.values()), min(ratios.values())
    assert hi / lo < 1.05, f"ratios across kappa vary by {hi / lo - 1:.2%}: {ratios}"


def test_criterion_09_oracle_equivalence(rng):
    # spectral propagator vs stiff ODE integration, N = 4, full 20 ns
    ens, reaction = default_params(4)
    ctx = build_context(ens, 3, 0, with_bare=False)
    dressing = vibronic_dressing(ctx.eig_vsc, reaction, ctx.omega_r)
    rm = assemble_rate_matrix(ctx.eig_vsc, dressing, reaction)
    p0 = thermal_initial_population(rm)
    traj = propagate(rm, p0)
    ref = ode_populations(rm.generator, p0, traj.times)
    assert np.max(np.abs(traj.populations - ref)) < 1e-8

    # vibrational overlaps vs the displacement-operator series
    lam_p = rng.uniform(-0.6, 0.6, size=5)
    d = VibronicDressing(lambda_rq=np.zeros(5), lambda_pq=lam_p,
                         delta_r=0.0, delta_p=0.0, huang_rhys=lam_p ** 2,
                         omega_r=2000.0)
    for chi, chi_p in ((None, None), (None, 1), (2, 2), (0, 4)):
        occ_from = np.zeros(5, dtype=int)
        occ_to = np.zeros(5, dtype=int)
        if chi is not None:
            occ_from[chi] = 1
        if chi_p is not None:
            occ_to[chi_p] = 1
        want = fc_oracle(occ_from, occ_to, lam_p)
        got = fc_factor(d, chi, chi_p)
        assert abs(got - want) < 1e-10 * want

    # eigenvalues vs the arrowhead secular equation, N = 8
    ens8, _ = default_params(8)
    real = sample_disorder(ens8, 5, 0)
    eig = diagonalize(build_hamiltonian(ens8, real))
    ref_vals = arrowhead_eigenvalues(ens8.cavity_freq,
                                     ens8.mean_vib_freq + real.offsets,
                                     ens8.per_molecule_coupling)
    assert np.max(np.abs(eig.frequencies - ref_vals)) < 1e-8


def test_criterion_10_invariant_suite():
    ens, reaction = default_params(256)
    ctx = build_context(ens, MASTER_SEED, 0, with_bare=False)
    c = ctx.eig_vsc.coefficients
    assert np.max(np.abs(c @ c.T - np.eye(c.shape[0]))) < 1e-10
    assert abs(np.sum(c[:, 1] ** 2) - 1.0) < 1e-12

    dressing = vibronic_dressing(ctx.eig_vsc, reaction, ctx.omega_r)
    rm = assemble_rate_matrix(ctx.eig_vsc, dressing, reaction)
    assert np.max(np.abs(rm.generator.sum(axis=0))) < 1e-12

    b, _ = symmetrized_generator(rm, tol=1e-8)  # raises above 1e-8
    assert np.max(np.abs(b - b.T)) == 0.0

    p0 = thermal_initial_population(rm)
    traj = propagate(rm, p0)
    assert np.max(np.abs(traj.populations.sum(axis=1) - 1.0)) < 1e-9

    late = propagate(rm, p0, np.array([0.0, 5e5, 1e6]))
    w = boltzmann_weights(rm.energies, rm.beta)
    assert np.max(np.abs(late.populations[-1] - w / w.sum())) < 1e-8


def test_criterion_11_fit_quality(n_sweep, temperature_sweep):
    _, records = n_sweep[0][256]
    r2 = [r.r2_vsc for r in records] + [r.r2_bare for r in records]
    assert min(r2) >= 0.999, f"worst exponential fit R2 {min(r2):.6f}"
    for case in ("vsc", "bare"):
        fit = temperature_sweep[case]
        assert fit.r2_adjusted >= 0.999, (
            f"{case} activation fit R2 {fit.r2_adjusted:.6f}")


def test_criterion_12_thread_count_determinism(tmp_path):
    cfg = tmp_path / "run.toml"
    cfg.write_text("""
[ensemble]
n_molecules = 16

[reaction]
temperature = [288.0, 298.0, 308.0]

[run]
realizations = 8
seed = 11
""")
    outputs = {}
    for threads in (1, 3):
        out = tmp_path / f"t{threads}"
        proc = subprocess.run(
            [sys.executable, "-m", "vsckin", "run", "--config", str(cfg),
             "--out-dir", str(out), "--threads", str(threads)],
            capture_output=True, text=True)
        assert proc.returncode == 0, proc.stderr
        outputs[threads] = out
    for name in ("rates.csv", "eigen_stats.csv", "eyring.csv"):
        b1 = (outputs[1] / name).read_bytes()
        b3 = (outputs[3] / name).read_bytes()
        assert b1 == b3, f"{name} differs between thread counts"
