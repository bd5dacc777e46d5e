"""Synthetic CSV fixtures shaped like the simulation outputs."""

import numpy as np
import pandas as pd
import pytest


def write_csv(path, frame):
    frame.to_csv(path, index=False)
    return str(path)


@pytest.fixture()
def eigen_stats_frame():
    """Plausible binned spectra for two system sizes at one sweep point."""
    rng = np.random.default_rng(7)
    blocks = []
    for n in (16, 64):
        centers = np.arange(1900.0, 2101.0, 5.0)
        weight = np.exp(-0.5 * ((centers - 2000.0) / 10.0) ** 2)
        weight[0] = weight[-1] = 0.4 * weight.max()  # polariton wings
        prob = weight / weight.sum()
        frac = np.where(np.abs(centers - 2000.0) > 75.0, 0.5, 0.01)
        pr = np.where(frac > 0.25, 1.2,
                      2.4 + 0.2 * rng.standard_normal(centers.size))
        blocks.append(pd.DataFrame({
            "n_molecules": n,
            "detuning_cm1": 0.0,
            "g_sqrtN_cm1": 80.0,
            "bin_center_cm1": centers,
            "probability": prob,
            "mean_photon_fraction": frac,
            "mean_molecular_pr": pr,
            "n_modes": np.maximum(np.rint(prob * (n + 1) * 40), 1).astype(int),
        }))
    return pd.concat(blocks, ignore_index=True)


@pytest.fixture()
def eigen_stats_csv(tmp_path, eigen_stats_frame):
    return write_csv(tmp_path / "eigen_stats.csv", eigen_stats_frame)


@pytest.fixture()
def rates_frame():
    """An N sweep at a single (detuning, coupling, kappa, T) point."""
    ratio = np.array([1.43, 1.50, 1.53, 1.545, 1.55])
    k_bare = 1.66e-4
    return pd.DataFrame({
        "N": [16, 32, 64, 128, 256],
        "detuning_cm1": 0.0,
        "g_sqrtN_cm1": 80.0,
        "kappa_ps1": 1.0,
        "T_K": 298.0,
        "k_vsc_ps1": ratio * k_bare,
        "k_vsc_se": 2.0e-7,
        "k_bare_ps1": k_bare,
        "ratio": ratio,
        "deloc_mean": 2.3,
        "n_realizations": 500,
    })


@pytest.fixture()
def rates_csv(tmp_path, rates_frame):
    return write_csv(tmp_path / "rates.csv", rates_frame)


@pytest.fixture()
def detuning_rates_frame():
    """A detuning grid for two couplings at fixed N."""
    det = np.arange(-60.0, 61.0, 20.0)
    blocks = []
    for g, peak in ((80.0, 1.52), (160.0, 1.55)):
        blocks.append(pd.DataFrame({
            "N": 256,
            "detuning_cm1": det,
            "g_sqrtN_cm1": g,
            "kappa_ps1": 1.0,
            "T_K": 298.0,
            "k_vsc_ps1": 2.5e-4,
            "k_vsc_se": 3.0e-7,
            "k_bare_ps1": 1.66e-4,
            "ratio": peak - 1.0e-4 * det ** 2,
            "deloc_mean": 2.3 - 2.0e-5 * det ** 2,
            "n_realizations": 120,
        }))
    return pd.concat(blocks, ignore_index=True)


@pytest.fixture()
def detuning_rates_csv(tmp_path, detuning_rates_frame):
    return write_csv(tmp_path / "rates_detuning.csv", detuning_rates_frame)


@pytest.fixture()
def eyring_frame():
    return pd.DataFrame({
        "case_label": ["vsc", "bare", "bare_gamma_x100"],
        "dH_kJ_mol": [13.2, 14.5, 12.1],
        "dS_J_molK": [-44.0, -40.5, -48.0],
        "r2_adjusted": [0.99999, 0.999995, 0.99998],
    })


@pytest.fixture()
def eyring_csv(tmp_path, eyring_frame):
    return write_csv(tmp_path / "eyring.csv", eyring_frame)
