"""Disorder sampling, arrowhead Hamiltonian construction and eigenanalysis.

The single-excitation Hamiltonian of one cavity mode coupled to N
vibrations is the (N+1) x (N+1) arrowhead matrix

    H[0, 0] = cavity_freq
    H[i, i] = mean_vib_freq + offsets[i-1]      (i = 1..N)
    H[0, i] = H[i, 0] = g

in cm^-1.  Bare-mode column 0 is the cavity and column 1 is the reactive
vibration.  Eigenmode q is stored as row q of the coefficient matrix, so
``coefficients[q, i]`` is the weight of bare mode i in eigenmode q, with
frequencies sorted ascending.  The two spectral extremes (q = 0 and q = N
in 0-based indexing) are the polaritons; everything between is dark.
"""

from dataclasses import dataclass

import numpy as np

from .errors import NumericalError, ParameterError, PurePhotonModeError
from .params import EnsembleParams

#: Bare-mode column of the reactive vibration.
REACTIVE_COLUMN = 1

#: Molecular weight below which a participation ratio is undefined.
PURE_PHOTON_TOL = 1e-14


@dataclass(frozen=True)
class DisorderRealization:
    """One sampled set of Gaussian frequency offsets (cm^-1)."""

    offsets: np.ndarray
    seed: int
    index: int

    @property
    def reactive_offset(self) -> float:
        """Offset of the reactive vibration (bare column 1)."""
        return float(self.offsets[0])


@dataclass(frozen=True)
class Eigensystem:
    """Eigenmodes of the light-matter Hamiltonian.

    frequencies: (N+1,) ascending eigenfrequencies, cm^-1.
    coefficients: (N+1, N+1) real orthogonal matrix; row q holds the
        bare-mode coefficients of eigenmode q (column 0 = cavity).
    """

    frequencies: np.ndarray
    coefficients: np.ndarray

    @property
    def n_modes(self) -> int:
        return self.frequencies.size

    @property
    def n_molecules(self) -> int:
        return self.n_modes - 1

    @property
    def polariton_indices(self) -> tuple[int, int]:
        """Sorted-order extremes (lower and upper polariton)."""
        return (0, self.n_modes - 1)

    @property
    def dark_indices(self) -> np.ndarray:
        return np.arange(1, self.n_modes - 1)

    def photon_fractions(self) -> np.ndarray:
        return self.coefficients[:, 0] ** 2

    def molecular_weights(self) -> np.ndarray:
        """Total molecular weight 1 - |c_q0|^2 of every mode."""
        return np.sum(self.coefficients[:, 1:] ** 2, axis=1)

    def classify_by_photon_fraction(self, threshold: float = 0.25) -> np.ndarray:
        """Diagnostic-only classification: True where the photon fraction
        exceeds ``threshold``.  The canonical polariton/dark split is by
        sorted index extremes, not by this threshold."""
        return self.photon_fractions() > threshold

    def validate(self, orth_tol: float = 1e-10, complete_tol: float = 1e-12):
        """Check orthonormality of the rows and completeness of the columns."""
        c = self.coefficients
        n = self.n_modes
        gram = c @ c.T
        err = np.max(np.abs(gram - np.eye(n)))
        if err > orth_tol:
            raise NumericalError(f"eigenvector rows not orthonormal: {err:.3e}")
        col_norms = np.sum(c ** 2, axis=0)
        err = np.max(np.abs(col_norms - 1.0))
        if err > complete_tol:
            raise NumericalError(f"eigenvector columns not complete: {err:.3e}")
        if np.any(np.diff(self.frequencies) < 0.0):
            raise NumericalError("eigenfrequencies not ascending")
        if not np.all(self.frequencies > 0.0):
            raise NumericalError("non-positive eigenfrequency")


def sample_disorder(params: EnsembleParams, seed: int, index: int) -> DisorderRealization:
    """Draw the N Gaussian frequency offsets of one realization.

    Offsets have mean 0 and standard deviation ``params.disorder_sigma``;
    the generator is seeded from (seed, index) so identical arguments
    reproduce identical vectors bit for bit.
    """
    ss = np.random.SeedSequence([int(seed), int(index)])
    rng = np.random.default_rng(ss)
    offsets = params.disorder_sigma * rng.standard_normal(params.n_molecules)
    offsets.flags.writeable = False
    return DisorderRealization(offsets=offsets, seed=int(seed), index=int(index))


def build_hamiltonian(params: EnsembleParams, realization: DisorderRealization) -> np.ndarray:
    """Assemble the symmetric arrowhead matrix in cm^-1."""
    n = params.n_molecules
    if realization.offsets.shape != (n,):
        raise ParameterError(
            f"realization has {realization.offsets.size} offsets, expected {n}")
    h = np.zeros((n + 1, n + 1))
    h[0, 0] = params.cavity_freq
    diag = params.mean_vib_freq + realization.offsets
    h[np.arange(1, n + 1), np.arange(1, n + 1)] = diag
    g = params.per_molecule_coupling
    h[0, 1:] = g
    h[1:, 0] = g
    return h


def diagonalize(h: np.ndarray, context: str = "", validate: bool = True) -> Eigensystem:
    """Diagonalize a symmetric matrix into an :class:`Eigensystem`.

    Eigenvalues are returned ascending; each eigenvector is sign-fixed so
    its largest-magnitude component is non-negative, which makes the
    coefficients deterministic (all downstream physics uses squares only).
    ``context`` is attached to numerical errors so ensemble drivers can
    name the offending realization.
    """
    h = np.asarray(h, dtype=float)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ParameterError(f"expected a square matrix, got shape {h.shape}")
    if not np.all(np.isfinite(h)):
        raise ParameterError("Hamiltonian contains non-finite entries")
    scale = np.max(np.abs(h))
    if np.max(np.abs(h - h.T)) > 1e-12 * max(scale, 1.0):
        raise ParameterError("Hamiltonian is not symmetric")
    try:
        w, v = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        where = f" ({context})" if context else ""
        raise NumericalError(f"eigensolver failed{where}: {exc}") from exc
    c = v.T  # row q = eigenvector of mode q
    # sign convention: largest-magnitude component non-negative
    pivot = np.argmax(np.abs(c), axis=1)
    signs = np.sign(c[np.arange(c.shape[0]), pivot])
    signs[signs == 0.0] = 1.0
    c = c * signs[:, None]
    eig = Eigensystem(frequencies=w, coefficients=c)
    if validate:
        eig.validate()
        resid = np.max(np.abs(h - c.T @ (w[:, None] * c)))
        if resid > 1e-9 * max(scale, 1.0):
            where = f" ({context})" if context else ""
            raise NumericalError(
                f"eigendecomposition reconstruction residual {resid:.3e}{where}")
    return eig


def photon_fraction(eig: Eigensystem, q: int) -> float:
    """|c_q0|^2 of eigenmode q."""
    return float(eig.coefficients[q, 0] ** 2)


def molecular_pr(eig: Eigensystem, q: int) -> float:
    """Molecular participation ratio of eigenmode q.

    The squared molecular coefficients are renormalized to the mode's
    total molecular weight, so the result estimates over how many
    molecules the mode is spread (1 = fully localized, N = uniform).
    """
    w = eig.coefficients[q, 1:] ** 2
    total = w.sum()
    if total < PURE_PHOTON_TOL:
        raise PurePhotonModeError(
            f"mode {q} has molecular weight {total:.3e}; participation "
            "ratio undefined")
    p = w / total
    return float(1.0 / np.sum(p ** 2))


def molecular_prs(eig: Eigensystem) -> np.ndarray:
    """Participation ratio of every mode; NaN where the molecular weight
    is below the pure-photon tolerance."""
    w = eig.coefficients[:, 1:] ** 2
    total = w.sum(axis=1)
    ok = total >= PURE_PHOTON_TOL
    out = np.full(eig.n_modes, np.nan)
    p = w[ok] / total[ok, None]
    out[ok] = 1.0 / np.sum(p ** 2, axis=1)
    return out


def reactive_mode_delocalization(eig: Eigensystem) -> float:
    """Participation ratio of the reactive vibration in the eigenbasis:
    1 / sum_q |c_q,r|^4."""
    w = eig.coefficients[:, REACTIVE_COLUMN] ** 2
    return float(1.0 / np.sum(w ** 2))


def reactive_weights(eig: Eigensystem) -> np.ndarray:
    """|c_q,r|^2 of every eigenmode (sums to 1 by completeness)."""
    return eig.coefficients[:, REACTIVE_COLUMN] ** 2
