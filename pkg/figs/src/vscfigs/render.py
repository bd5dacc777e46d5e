"""Deterministic figure builders over the simulation CSV outputs.

Each kind is a pure function of the table content: fixed geometry,
matplotlib's bundled DejaVu fonts, axis limits derived from the data.
Rendering the same spec twice produces byte-identical PNGs.

The builders draw directly on ``matplotlib.figure.Figure`` objects (no
pyplot state machine) so library use never touches a global backend.
"""

from __future__ import annotations

import math
import os

import matplotlib
import numpy as np
from matplotlib.figure import Figure

from .schemas import FigureSpec, SchemaError, load_inputs

_RC = {
    "font.family": "DejaVu Sans",
    "font.size": 9.0,
    "axes.titlesize": 10.0,
    "axes.labelsize": 9.0,
    "legend.fontsize": 8.0,
    "xtick.labelsize": 8.0,
    "ytick.labelsize": 8.0,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "grid.linewidth": 0.5,
    "lines.linewidth": 1.4,
    "figure.dpi": 100.0,
    "savefig.dpi": 150.0,
}

#: Spectral bins at or below this mean photon share count as dark.
DARK_PHOTON_FRACTION_MAX = 0.25

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
            "#8c564b", "#17becf", "#7f7f7f")

_COORD_NAMES = {
    "n_molecules": "N",
    "N": "N",
    "detuning_cm1": r"$\delta$",
    "g_sqrtN_cm1": r"$g\sqrt{N}$",
    "kappa_ps1": r"$\kappa$",
    "T_K": "T",
}


def _groups(frame, keys):
    """Split a table on whichever of ``keys`` actually vary.

    Returns [(legend label, subframe)] in sorted key order; a
    homogeneous table maps to a single unlabeled group so figures from
    one sweep point carry no redundant legend text.
    """
    varying = [k for k in keys if frame[k].nunique(dropna=False) > 1]
    if not varying:
        return [("", frame)]
    out = []
    for values, sub in frame.groupby(varying, sort=True):
        if not isinstance(values, tuple):
            values = (values,)
        label = ", ".join(f"{_COORD_NAMES.get(k, k)}={v:g}"
                          for k, v in zip(varying, values))
        out.append((label, sub))
    return out


def _bin_width(centers) -> float:
    """Grid pitch of occupied bin centers (smallest positive spacing)."""
    uniq = np.unique(np.asarray(centers, dtype=float))
    if uniq.size < 2:
        return 1.0
    return float(np.min(np.diff(uniq)))


def _spectrum(frame, gaussian_mean: float = 2000.0,
              gaussian_sigma: float = 10.0) -> Figure:
    """Eigenmode histogram plus photon character versus frequency.

    The top panel shows the binned mode probability in density units
    (probability per unit frequency) so the reference normal curve can
    be overlaid directly; the bottom panel shows the mean photon share
    of each occupied bin.
    """
    fig = Figure(figsize=(6.4, 6.2))
    ax_hist, ax_frac = fig.subplots(2, 1, sharex=True,
                                    gridspec_kw={"hspace": 0.08})
    groups = _groups(frame, ("n_molecules", "detuning_cm1", "g_sqrtN_cm1"))
    for i, (label, sub) in enumerate(groups):
        sub = sub.sort_values("bin_center_cm1")
        centers = sub["bin_center_cm1"].to_numpy(dtype=float)
        width = _bin_width(centers)
        density = sub["probability"].to_numpy(dtype=float) / width
        color = _PALETTE[i % len(_PALETTE)]
        ax_hist.bar(centers, density, width=width, align="center",
                    color=color, linewidth=0.0,
                    alpha=0.8 if len(groups) == 1 else 0.55,
                    label=label or "eigenmodes")
        occupied = sub["n_modes"].to_numpy(dtype=float) > 0
        ax_frac.plot(centers[occupied],
                     sub["mean_photon_fraction"].to_numpy(dtype=float)[occupied],
                     marker="o", markersize=3.0, color=color,
                     label=label or None)
    lo = float(frame["bin_center_cm1"].min())
    hi = float(frame["bin_center_cm1"].max())
    pad = 4.0 * gaussian_sigma
    x = np.linspace(min(lo, gaussian_mean) - pad,
                    max(hi, gaussian_mean) + pad, 513)
    pdf = (np.exp(-0.5 * ((x - gaussian_mean) / gaussian_sigma) ** 2)
           / (gaussian_sigma * math.sqrt(2.0 * math.pi)))
    ax_hist.plot(x, pdf, color="black", linestyle="--", linewidth=1.1,
                 label="Gaussian reference")
    ax_hist.set_ylabel("probability density (per cm$^{-1}$)")
    ax_hist.legend(loc="upper right")
    ax_frac.set_ylim(-0.02, 0.62)
    ax_frac.set_ylabel("mean photon fraction")
    ax_frac.set_xlabel("eigenmode frequency (cm$^{-1}$)")
    if len(groups) > 1:
        ax_frac.legend(loc="upper center")
    return fig


def _pr_vs_n(frame) -> Figure:
    """Ensemble dark-mode molecular participation ratio against size.

    Dark bins are selected by photon share; the per-size value is the
    mode-count weighted mean of the per-bin participation ratios.
    """
    fig = Figure(figsize=(5.2, 3.6))
    ax = fig.subplots()
    groups = _groups(frame, ("detuning_cm1", "g_sqrtN_cm1"))
    for i, (label, sub) in enumerate(groups):
        sizes, prs = [], []
        for n, block in sub.groupby("n_molecules", sort=True):
            dark = block[
                (block["mean_photon_fraction"] <= DARK_PHOTON_FRACTION_MAX)
                & (block["n_modes"] > 0)
                & np.isfinite(block["mean_molecular_pr"])]
            if len(dark) == 0:
                raise SchemaError(
                    "no dark spectral bins (mean_photon_fraction <= "
                    f"{DARK_PHOTON_FRACTION_MAX:g}) at n_molecules={n:g}")
            sizes.append(float(n))
            prs.append(float(np.average(
                dark["mean_molecular_pr"].to_numpy(dtype=float),
                weights=dark["n_modes"].to_numpy(dtype=float))))
        ax.plot(sizes, prs, marker="o", markersize=4.0,
                color=_PALETTE[i % len(_PALETTE)], label=label or None)
    ax.set_xscale("log", base=2)
    ax.set_xlabel("number of molecules N")
    ax.set_ylabel("dark-mode molecular participation ratio")
    if any(label for label, _ in groups):
        ax.legend()
    return fig


def _ratio_vs_n(frame) -> Figure:
    """Rate enhancement against system size, one curve per sweep group.

    Error bars propagate the coupled-rate standard error through the
    ratio; the bare denominator's uncertainty is not tabulated.
    """
    usable = frame.dropna(subset=["ratio", "k_bare_ps1"])
    if len(usable) == 0:
        raise SchemaError("no rows with finite 'ratio' and 'k_bare_ps1' "
                          "(run made without the bare reference?)")
    fig = Figure(figsize=(5.2, 3.6))
    ax = fig.subplots()
    groups = _groups(usable, ("detuning_cm1", "g_sqrtN_cm1", "kappa_ps1",
                              "T_K"))
    for i, (label, sub) in enumerate(groups):
        sub = sub.sort_values("N")
        err = (sub["k_vsc_se"].to_numpy(dtype=float)
               / sub["k_bare_ps1"].to_numpy(dtype=float))
        ax.errorbar(sub["N"].to_numpy(dtype=float),
                    sub["ratio"].to_numpy(dtype=float),
                    yerr=np.nan_to_num(err, nan=0.0),
                    marker="o", markersize=4.0, capsize=2.5,
                    color=_PALETTE[i % len(_PALETTE)], label=label or None)
    ax.axhline(1.0, color="0.4", linestyle=":", linewidth=1.0)
    ax.set_xscale("log", base=2)
    ax.set_xlabel("number of molecules N")
    ax.set_ylabel(r"rate enhancement $k_\mathrm{VSC}/k_\mathrm{bare}$")
    if any(label for label, _ in groups):
        ax.legend()
    return fig


def _detuning(frame) -> Figure:
    """Enhancement and reactive-mode delocalization across detuning."""
    fig = Figure(figsize=(5.6, 5.8))
    ax_ratio, ax_deloc = fig.subplots(2, 1, sharex=True,
                                      gridspec_kw={"hspace": 0.08})
    groups = _groups(frame, ("N", "g_sqrtN_cm1", "kappa_ps1", "T_K"))
    for i, (label, sub) in enumerate(groups):
        sub = sub.sort_values("detuning_cm1")
        color = _PALETTE[i % len(_PALETTE)]
        det = sub["detuning_cm1"].to_numpy(dtype=float)
        ratio = sub["ratio"].to_numpy(dtype=float)
        has = np.isfinite(ratio)
        if has.any():
            ax_ratio.plot(det[has], ratio[has], marker="o", markersize=4.0,
                          color=color, label=label or None)
        ax_deloc.plot(det, sub["deloc_mean"].to_numpy(dtype=float),
                      marker="s", markersize=4.0, color=color,
                      label=label or None)
    ax_ratio.set_ylabel(r"rate enhancement $k_\mathrm{VSC}/k_\mathrm{bare}$")
    ax_deloc.set_ylabel("reactive-mode delocalization")
    ax_deloc.set_xlabel(r"cavity detuning $\delta$ (cm$^{-1}$)")
    if any(label for label, _ in groups):
        ax_deloc.legend()
    return fig


def _eyring(frame) -> Figure:
    """Activation enthalpy against activation entropy for every case,
    with a least-squares compensation line through the points."""
    usable = frame.dropna(subset=["dH_kJ_mol", "dS_J_molK"])
    if len(usable) == 0:
        raise SchemaError("no rows with finite 'dH_kJ_mol' and 'dS_J_molK'")
    fig = Figure(figsize=(5.2, 4.0))
    ax = fig.subplots()
    ds = usable["dS_J_molK"].to_numpy(dtype=float)
    dh = usable["dH_kJ_mol"].to_numpy(dtype=float)
    labels = usable["case_label"].astype(str).tolist()
    for i, (x, y, label) in enumerate(zip(ds, dh, labels)):
        ax.plot([x], [y], marker="o", markersize=6.0, linestyle="none",
                color=_PALETTE[i % len(_PALETTE)], label=label)
    if np.unique(ds).size >= 2:
        slope, intercept = np.polyfit(ds, dh, 1)
        pad = 0.08 * (ds.max() - ds.min())
        xfit = np.array([ds.min() - pad, ds.max() + pad])
        ax.plot(xfit, slope * xfit + intercept, color="black",
                linestyle="--", linewidth=1.1, label="least-squares fit")
    ax.set_xlabel(r"activation entropy $\Delta S^\ddagger$"
                  " (J mol$^{-1}$ K$^{-1}$)")
    ax.set_ylabel(r"activation enthalpy $\Delta H^\ddagger$ (kJ mol$^{-1}$)")
    ax.legend(loc="best", ncols=2 if len(labels) > 6 else 1)
    return fig


_BUILDERS = {
    "spectrum": _spectrum,
    "pr_vs_n": _pr_vs_n,
    "ratio_vs_n": _ratio_vs_n,
    "detuning": _detuning,
    "eyring": _eyring,
}


def render(spec: FigureSpec, **options) -> str:
    """Build the figure for ``spec`` and write it to ``spec.output``.

    Keyword options are forwarded to the kind's builder (only
    ``spectrum`` takes any: gaussian_mean, gaussian_sigma).  Returns
    the output path.
    """
    frame = load_inputs(spec)
    builder = _BUILDERS[spec.kind]
    with matplotlib.rc_context(_RC):
        fig = builder(frame, **options)
        out_dir = os.path.dirname(os.path.abspath(spec.output))
        os.makedirs(out_dir, exist_ok=True)
        # pin the metadata so the bytes do not depend on the toolchain
        # version string
        fig.savefig(spec.output, format="png",
                    metadata={"Software": "vscfigs"})
    return spec.output
