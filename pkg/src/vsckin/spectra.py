"""Binned eigenmode statistics accumulated over an ensemble.

Eigenfrequencies are histogrammed relative to the mean vibrational
frequency on a fixed grid of width 0.1 * disorder_sigma anchored so that
bin l covers (delta*(l - 1/2), delta*(l + 1/2)].  Per-bin averages of the
photon fraction and the molecular participation ratio are tracked along
with mode counts, so the result doubles as a density-of-states estimate
and a mode-character map.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError
from .hamiltonian import Eigensystem, molecular_prs
from .params import EnsembleParams

#: Bin width as a fraction of the disorder standard deviation.
BIN_WIDTH_FRACTION = 0.1

_MODE_FILTERS = ("all", "dark", "polariton")


@dataclass
class SpectralBins:
    """Accumulator for binned eigenmode statistics.

    Bin l (an integer, possibly negative) covers the half-open interval
    (width*(l-0.5), width*(l+0.5)] in frequency offset from ``origin``.
    """

    origin: float
    width: float
    counts: dict = field(default_factory=dict)
    photon_sums: dict = field(default_factory=dict)
    pr_sums: dict = field(default_factory=dict)
    pr_counts: dict = field(default_factory=dict)
    total_modes: int = 0

    def add(self, frequencies: np.ndarray, photon: np.ndarray, pr: np.ndarray):
        """Accumulate one realization's modes.  ``pr`` may contain NaN for
        modes whose participation ratio is undefined; those modes still
        count toward the histogram."""
        offsets = np.asarray(frequencies, dtype=float) - self.origin
        # (l-1/2)w < x <= (l+1/2)w  <=>  l = ceil(x/w - 1/2)
        idx = np.ceil(offsets / self.width - 0.5).astype(int)
        for l, ph, p in zip(idx.tolist(), photon.tolist(), pr.tolist()):
            self.counts[l] = self.counts.get(l, 0) + 1
            self.photon_sums[l] = self.photon_sums.get(l, 0.0) + ph
            if not np.isnan(p):
                self.pr_sums[l] = self.pr_sums.get(l, 0.0) + p
                self.pr_counts[l] = self.pr_counts.get(l, 0) + 1
        self.total_modes += idx.size

    def table(self) -> dict:
        """Dense arrays over the occupied bin range, sorted by center.

        probability is counts / total modes, so it sums to 1 over all
        occupied bins.  Mean participation ratio is NaN in bins where no
        mode had a defined one.
        """
        if not self.counts:
            raise ParameterError("no modes accumulated")
        labels = np.array(sorted(self.counts), dtype=int)
        counts = np.array([self.counts[l] for l in labels], dtype=int)
        photon = np.array([self.photon_sums[l] for l in labels])
        pr_sum = np.array([self.pr_sums.get(l, 0.0) for l in labels])
        pr_cnt = np.array([self.pr_counts.get(l, 0) for l in labels])
        mean_pr = np.full(labels.size, np.nan)
        has = pr_cnt > 0
        mean_pr[has] = pr_sum[has] / pr_cnt[has]
        return {
            "bin_center_cm1": self.origin + self.width * labels,
            "probability": counts / self.total_modes,
            "mean_photon_fraction": photon / counts,
            "mean_molecular_pr": mean_pr,
            "n_modes": counts,
        }


def _mode_mask(eig: Eigensystem, modes: str) -> np.ndarray:
    if modes not in _MODE_FILTERS:
        raise ParameterError(f"modes must be one of {_MODE_FILTERS}, got {modes!r}")
    mask = np.ones(eig.n_modes, dtype=bool)
    if modes == "dark":
        lo, hi = eig.polariton_indices
        mask[lo] = mask[hi] = False
    elif modes == "polariton":
        mask[:] = False
        lo, hi = eig.polariton_indices
        mask[lo] = mask[hi] = True
    return mask


def bin_eigenmode_stats(
    eigensystems,
    params: EnsembleParams,
    modes: str = "all",
) -> dict:
    """Histogram the eigenmodes of an ensemble of realizations.

    ``modes`` selects which eigenmodes enter: "all", only the "dark"
    interior modes, or only the two "polariton" extremes.  Probability is
    normalized over the selected modes.
    """
    if params.disorder_sigma <= 0.0:
        raise ParameterError("binning requires positive disorder_sigma")
    bins = SpectralBins(origin=params.mean_vib_freq,
                        width=BIN_WIDTH_FRACTION * params.disorder_sigma)
    n_added = 0
    for eig in eigensystems:
        mask = _mode_mask(eig, modes)
        pr = molecular_prs(eig)
        bins.add(eig.frequencies[mask], eig.photon_fractions()[mask], pr[mask])
        n_added += 1
    if n_added == 0:
        raise ParameterError("no eigensystems supplied")
    return bins.table()
