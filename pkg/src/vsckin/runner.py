"""End-to-end ensemble runs.

A run walks the sweep grid in deterministic order.  Points sharing the
same Hamiltonian coordinates (N, detuning, collective coupling) form a
group: disorder and eigensystems are computed once per (group,
realization) and reused for every (kappa, T) combination in the group,
which both saves eigendecompositions and pairs the statistics across
those axes.

Seeding: each realization's disorder seed is derived by hashing
(master seed, group coordinates, realization index), so any sweep point
can be reproduced in isolation and reruns are bit-identical regardless
of thread count (results are reduced in realization order).
"""

import datetime as _dt
import hashlib
import json
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ._version import __version__
from .analysis import (EnsembleResult, RealizationRecord, SweepPoint,
                       analytical_bare_rate, analytical_vsc_rate,
                       bare_channel_rates, ensemble_average, eyring_fit)
from .config import RunPlan
from .hamiltonian import (DisorderRealization, Eigensystem, build_hamiltonian,
                          diagonalize, molecular_prs,
                          reactive_mode_delocalization, sample_disorder)
from .master import (assemble_rate_matrix, fit_rate, propagate,
                     thermal_initial_population)
from .params import EnsembleParams, ReactionParams
from .rates import vibronic_dressing
from .spectra import BIN_WIDTH_FRACTION, SpectralBins

_FLOAT_FMT = "%.12g"


def realization_seed(master_seed: int, n_molecules: int, detuning: float,
                     collective_coupling: float, index: int) -> int:
    """Deterministic 64-bit disorder seed for one (group, realization)."""
    key = (f"{master_seed}|{n_molecules}|{float(detuning)!r}|"
           f"{float(collective_coupling)!r}|{index}")
    digest = hashlib.sha256(key.encode("ascii")).digest()
    return int.from_bytes(digest[:8], "big")


def bare_eigensystem(params: EnsembleParams,
                     realization: DisorderRealization) -> Eigensystem:
    """Eigensystem of the uncoupled (g = 0) Hamiltonian.

    The matrix is diagonal, so the eigenmodes are the bare modes sorted
    by frequency; building the permutation directly is exact and avoids
    an O(n^3) solve.
    """
    freqs = np.concatenate(([params.cavity_freq],
                            params.mean_vib_freq + realization.offsets))
    order = np.argsort(freqs, kind="stable")
    n = freqs.size
    coeff = np.zeros((n, n))
    coeff[np.arange(n), order] = 1.0
    return Eigensystem(frequencies=freqs[order], coefficients=coeff)


@dataclass(frozen=True)
class RealizationContext:
    """Disorder + eigensystems of one realization, shared across the
    kappa and temperature axes."""

    realization: DisorderRealization
    eig_vsc: Eigensystem
    eig_bare: Eigensystem | None
    omega_r: float
    delocalization: float
    dark_pr: float


def build_context(ensemble: EnsembleParams, seed: int, index: int,
                  with_bare: bool) -> RealizationContext:
    real = sample_disorder(ensemble, seed, index)
    h = build_hamiltonian(ensemble, real)
    eig = diagonalize(h, context=f"realization {index} (seed {seed})")
    prs = molecular_prs(eig)[1:-1]
    dark_pr = float(np.nanmean(prs)) if prs.size else math.nan
    return RealizationContext(
        realization=real,
        eig_vsc=eig,
        eig_bare=bare_eigensystem(ensemble.without_cavity_coupling(), real)
        if with_bare else None,
        omega_r=ensemble.mean_vib_freq + real.reactive_offset,
        delocalization=reactive_mode_delocalization(eig),
        dark_pr=dark_pr,
    )


def simulate_kinetics(eig: Eigensystem, omega_r: float,
                      reaction: ReactionParams, times=None):
    """One master-equation run: returns (fitted rate, fit)."""
    dressing = vibronic_dressing(eig, reaction, omega_r)
    rm = assemble_rate_matrix(eig, dressing, reaction)
    traj = propagate(rm, thermal_initial_population(rm), times)
    fit = fit_rate(traj)
    return fit.k, fit


def run_realization(ctx: RealizationContext, reaction: ReactionParams,
                    index: int, seed: int, *,
                    with_gamma100: bool = False) -> tuple:
    """All kinetic quantities of one realization at one (kappa, T);
    returns (record, gamma100 bare rate or None)."""
    k_vsc, fit_vsc = simulate_kinetics(ctx.eig_vsc, ctx.omega_r, reaction)
    k_bare = r2_bare = None
    if ctx.eig_bare is not None:
        k_bare, fit_bare = simulate_kinetics(ctx.eig_bare, ctx.omega_r, reaction)
        r2_bare = fit_bare.r2_adjusted
    k_f, k_b = bare_channel_rates(ctx.omega_r, reaction)
    record = RealizationRecord(
        index=index, seed=seed,
        k_vsc=k_vsc, k_bare=k_bare,
        k_vsc_analytical=analytical_vsc_rate(ctx.eig_vsc, k_f, k_b,
                                             reaction.gamma),
        k_bare_analytical=analytical_bare_rate(k_f, k_b, reaction.gamma),
        delocalization=ctx.delocalization, dark_pr=ctx.dark_pr,
        r2_vsc=fit_vsc.r2_adjusted, r2_bare=r2_bare,
    )
    if with_gamma100 and ctx.eig_bare is not None:
        hot = reaction.with_gamma(100.0 * reaction.gamma)
        k_g100, _ = simulate_kinetics(ctx.eig_bare, ctx.omega_r, hot)
        return record, k_g100
    return record, None


@dataclass
class PointData:
    """Accumulated per-point results (records in realization order)."""

    point: SweepPoint
    records: list
    gamma100_rates: list

    def result(self) -> EnsembleResult:
        return ensemble_average(self.records, self.point)


@dataclass
class RunOutputs:
    plan: RunPlan
    point_data: list
    eigen_tables: list  # [(group_key, table-dict), ...]
    eyring_rows: list  # [(case_label, EyringFit), ...]
    failures: list
    started_at: str
    elapsed_s: float
    trajectory_dumps: dict
    rate_table_dumps: dict


def _group_key(point: SweepPoint) -> tuple:
    return (point.n_molecules, point.detuning, point.collective_coupling)


def _point_tag(point: SweepPoint) -> str:
    return (f"N{point.n_molecules}_d{point.detuning:g}"
            f"_g{point.collective_coupling:g}_k{point.kappa:g}"
            f"_T{point.temperature:g}")


def _trajectory_dump(eig, omega_r, reaction):
    dressing = vibronic_dressing(eig, reaction, omega_r)
    rm = assemble_rate_matrix(eig, dressing, reaction)
    traj = propagate(rm, thermal_initial_population(rm))
    return rm.labels, traj


def _rate_table_rows(eig, omega_r, reaction):
    """Nonzero transitions as (from, to, rate, class) rows."""
    dressing = vibronic_dressing(eig, reaction, omega_r)
    rm = assemble_rate_matrix(eig, dressing, reaction)
    a = rm.generator
    labels = rm.labels
    nv = rm.n_reactant
    rows = []
    for i in range(a.shape[0]):
        for j in range(a.shape[0]):
            if i == j or a[j, i] <= 0.0:
                continue
            src, dst = labels[i], labels[j]
            if src.electronic != dst.electronic:
                cls = "reactive"
            elif dst.mode is None:
                cls = "decay"
            elif src.mode is None:
                cls = "gain"
            else:
                cls = "scatter"
            rows.append((str(src), str(dst), a[j, i], cls))
    return rows


def execute_plan(plan: RunPlan, progress=None) -> RunOutputs:
    """Run every sweep point of a plan; failures are recorded, not fatal."""
    started = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    t0 = time.monotonic()
    say = progress if progress is not None else (lambda msg: None)

    points = list(plan.points())
    groups = {}
    for p in points:
        groups.setdefault(_group_key(p), []).append(p)

    point_data = {p: PointData(point=p, records=[], gamma100_rates=[])
                  for p in points}
    eigen_tables = []
    failures = []
    trajectory_dumps = {}
    rate_table_dumps = {}
    want_g100 = plan.eyring_enabled and plan.bare_reference

    for gi, (key, group_points) in enumerate(groups.items()):
        n, detuning, coupling = key
        ensemble = plan.ensemble_at(group_points[0])
        say(f"group {gi + 1}/{len(groups)}: N={n} detuning={detuning:g} "
            f"coupling={coupling:g} ({plan.realizations} realizations)")
        bins = None
        if ensemble.disorder_sigma > 0.0:
            bins = SpectralBins(
                origin=ensemble.mean_vib_freq,
                width=BIN_WIDTH_FRACTION * ensemble.disorder_sigma)

        def one_realization(index, _ensemble=ensemble, _points=group_points):
            seed = realization_seed(plan.seed, n, detuning, coupling, index)
            ctx = build_context(_ensemble, seed, index, plan.bare_reference)
            out = []
            for p in _points:
                reaction = plan.reaction_at(p)
                record, k_g100 = run_realization(
                    ctx, reaction, index, seed, with_gamma100=want_g100)
                out.append((p, record, k_g100))
            spectral = (ctx.eig_vsc.frequencies.copy(),
                        ctx.eig_vsc.photon_fractions(),
                        molecular_prs(ctx.eig_vsc))
            dumps = None
            if index == 0 and (plan.dump_states or plan.dump_rate_tables):
                dumps = {}
                for p in _points:
                    reaction = plan.reaction_at(p)
                    if plan.dump_states:
                        dumps.setdefault("traj", {})[p] = _trajectory_dump(
                            ctx.eig_vsc, ctx.omega_r, reaction)
                    if plan.dump_rate_tables:
                        dumps.setdefault("rates", {})[p] = _rate_table_rows(
                            ctx.eig_vsc, ctx.omega_r, reaction)
            return out, spectral, dumps

        indices = range(plan.realizations)
        if plan.threads > 1:
            with ThreadPoolExecutor(max_workers=plan.threads) as pool:
                futures = [pool.submit(one_realization, i) for i in indices]
                raw = [(i, f) for i, f in zip(indices, futures)]
                results = []
                for i, fut in raw:
                    try:
                        results.append((i, fut.result(), None))
                    except Exception as exc:  # noqa: BLE001 - recorded, run continues
                        results.append((i, None, exc))
        else:
            results = []
            for i in indices:
                try:
                    results.append((i, one_realization(i), None))
                except Exception as exc:  # noqa: BLE001 - recorded, run continues
                    results.append((i, None, exc))

        # reduce strictly in realization order for bit-reproducibility
        for i, payload, exc in results:
            if exc is not None:
                failures.append({
                    "n_molecules": n, "detuning": detuning,
                    "collective_coupling": coupling, "realization": i,
                    "error": f"{type(exc).__name__}: {exc}",
                })
                continue
            out, spectral, dumps = payload
            for p, record, k_g100 in out:
                point_data[p].records.append(record)
                if k_g100 is not None:
                    point_data[p].gamma100_rates.append(k_g100)
            if bins is not None:
                bins.add(*spectral)
            if dumps:
                for p, payload_t in dumps.get("traj", {}).items():
                    trajectory_dumps[p] = payload_t
                for p, rows in dumps.get("rates", {}).items():
                    rate_table_dumps[p] = rows

        if bins is not None and bins.total_modes > 0:
            eigen_tables.append((key, bins.table()))

    eyring_rows = _eyring_cases(plan, points, point_data) if plan.eyring_enabled else []

    return RunOutputs(
        plan=plan,
        point_data=[point_data[p] for p in points],
        eigen_tables=eigen_tables,
        eyring_rows=eyring_rows,
        failures=failures,
        started_at=started,
        elapsed_s=time.monotonic() - t0,
        trajectory_dumps=trajectory_dumps,
        rate_table_dumps=rate_table_dumps,
    )


def _eyring_cases(plan: RunPlan, points, point_data) -> list:
    """Activation-parameter fits of every temperature series.

    Cases: the coupled system, the bare reference, and the bare
    reference with a 100x faster vibrational decay (same leakage).
    """
    series = {}
    for p in points:
        head = (p.n_molecules, p.detuning, p.collective_coupling, p.kappa)
        series.setdefault(head, []).append(p)
    multi = len(series) > 1
    rows = []
    for head, pts in series.items():
        temps, k_vsc, k_bare, k_g100 = [], [], [], []
        for p in sorted(pts, key=lambda q: q.temperature):
            data = point_data[p]
            if not data.records:
                continue
            res = data.result()
            temps.append(p.temperature)
            k_vsc.append(res.k_vsc_mean)
            k_bare.append(res.k_bare_mean)
            if data.gamma100_rates:
                k_g100.append(float(np.mean(data.gamma100_rates)))
        suffix = ""
        if multi:
            n, d, g, kap = head
            suffix = f"@N{n}_d{d:g}_g{g:g}_k{kap:g}"
        cases = [("vsc", k_vsc)]
        if plan.bare_reference:
            cases.append(("bare", k_bare))
            if len(k_g100) == len(temps):
                cases.append(("bare_gamma_x100", k_g100))
        for label, ks in cases:
            if len(ks) >= 3 and all(k is not None and k > 0 for k in ks):
                rows.append((label + suffix, eyring_fit(temps, ks)))
    return rows


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return _FLOAT_FMT % value
    return str(value)


def _write_csv(path, header, rows):
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def write_outputs(outputs: RunOutputs, out_dir: str) -> dict:
    """Emit eigen_stats.csv, rates.csv, eyring.csv and run_manifest.json;
    returns the file paths."""
    os.makedirs(out_dir, exist_ok=True)
    paths = {}

    rate_rows = []
    for data in outputs.point_data:
        if not data.records:
            continue
        res = data.result()
        p = res.point
        rate_rows.append((
            p.n_molecules, p.detuning, p.collective_coupling, p.kappa,
            p.temperature, res.k_vsc_mean, res.k_vsc_se, res.k_bare_mean,
            res.ratio, res.deloc_mean, res.n_realizations,
        ))
    paths["rates"] = os.path.join(out_dir, "rates.csv")
    _write_csv(paths["rates"],
               ["N", "detuning_cm1", "g_sqrtN_cm1", "kappa_ps1", "T_K",
                "k_vsc_ps1", "k_vsc_se", "k_bare_ps1", "ratio", "deloc_mean",
                "n_realizations"],
               rate_rows)

    eig_rows = []
    for (n, det, coupling), table in outputs.eigen_tables:
        for i in range(table["bin_center_cm1"].size):
            eig_rows.append((
                n, det, coupling,
                table["bin_center_cm1"][i], table["probability"][i],
                table["mean_photon_fraction"][i],
                table["mean_molecular_pr"][i], int(table["n_modes"][i]),
            ))
    paths["eigen_stats"] = os.path.join(out_dir, "eigen_stats.csv")
    _write_csv(paths["eigen_stats"],
               ["n_molecules", "detuning_cm1", "g_sqrtN_cm1",
                "bin_center_cm1", "probability", "mean_photon_fraction",
                "mean_molecular_pr", "n_modes"],
               eig_rows)

    if outputs.eyring_rows:
        paths["eyring"] = os.path.join(out_dir, "eyring.csv")
        _write_csv(paths["eyring"],
                   ["case_label", "dH_kJ_mol", "dS_J_molK", "r2_adjusted"],
                   [(label, fit.dh_kj_mol, fit.ds_j_mol_k, fit.r2_adjusted)
                    for label, fit in outputs.eyring_rows])

    for p, (labels, traj) in outputs.trajectory_dumps.items():
        path = os.path.join(out_dir, f"trajectory_{_point_tag(p)}.csv")
        header = ["time_ns", "p_R"] + [str(lab) for lab in labels]
        rows = []
        for ti in range(traj.times.size):
            rows.append([traj.times[ti] / 1000.0,
                         float(traj.reactant_population[ti])]
                        + list(traj.populations[ti]))
        _write_csv(path, header, rows)
        paths.setdefault("trajectories", []).append(path)

    for p, table_rows in outputs.rate_table_dumps.items():
        path = os.path.join(out_dir, f"rate_table_{_point_tag(p)}.csv")
        _write_csv(path, ["from_state", "to_state", "rate_ps1", "class"],
                   table_rows)
        paths.setdefault("rate_tables", []).append(path)

    manifest = {
        "config": outputs.plan.resolved(),
        "seed": outputs.plan.seed,
        "version": f"vsckin-{__version__}",
        "started_at": outputs.started_at,
        "elapsed_s": round(outputs.elapsed_s, 3),
        "failures": outputs.failures,
    }
    paths["manifest"] = os.path.join(out_dir, "run_manifest.json")
    with open(paths["manifest"], "w", encoding="ascii") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return paths
