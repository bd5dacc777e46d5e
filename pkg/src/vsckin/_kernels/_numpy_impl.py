"""Vectorized numpy implementation of the hot assembly kernels.

These are the per-realization O(n^2) table builders: the squared
vibrational-overlap table, the thermal-bath emission/absorption bracket,
and the Gaussian activation factor of the charge-transfer rates.  The
compiled backend implements the same three signatures; both must agree
to floating-point reassociation.
"""

import numpy as np

BACKEND_NAME = "numpy"


def fc_table(huang_rhys: np.ndarray) -> np.ndarray:
    """Squared-overlap table between displaced vibrational states.

    Index 0 is the vacuum and index 1+q is one quantum in mode q.  With
    s_q the per-mode Huang-Rhys factors and S their sum, the nonzero
    overlaps of the truncated space are

        F[0, 0]       = exp(-S)
        F[0, 1+q]     = exp(-S) * s_q          (symmetric)
        F[1+q, 1+q]   = exp(-S) * (1 - s_q)^2
        F[1+q, 1+q']  = exp(-S) * s_q * s_q'   (q != q')
    """
    s = np.asarray(huang_rhys, dtype=float)
    n = s.size
    es = np.exp(-s.sum())
    table = np.empty((n + 1, n + 1))
    table[0, 0] = es
    table[0, 1:] = es * s
    table[1:, 0] = es * s
    table[1:, 1:] = es * np.outer(s, s)
    idx = np.arange(1, n + 1)
    table[idx, idx] = es * (1.0 - s) ** 2
    return table


def thermal_bracket(freqs: np.ndarray, beta: float, eta: float,
                    omega_cut: float, omega_tol: float = 1e-6) -> np.ndarray:
    """Bath emission/absorption factor for every ordered mode pair.

    Entry [q, qp] is eta*w*exp(-|w|/omega_cut)/expm1(beta*w) evaluated at
    w = freqs[qp] - freqs[q] (final minus initial), which equals
    J(w)*n(w) uphill and J(|w|)*(n(|w|)+1) downhill, so the matrix
    satisfies detailed balance exactly.  Gaps below ``omega_tol`` use the
    analytic w -> 0 limit eta/beta; the diagonal is zeroed (q' != q).
    """
    f = np.asarray(freqs, dtype=float)
    omega = f[None, :] - f[:, None]
    small = np.abs(omega) <= omega_tol
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        out = eta * omega * np.exp(-np.abs(omega) / omega_cut) / np.expm1(beta * omega)
    out[small] = eta / beta
    np.fill_diagonal(out, 0.0)
    return out


def marcus_gaussian(e_from: np.ndarray, e_to: np.ndarray,
                    lambda_s: float, beta: float) -> np.ndarray:
    """exp(-beta * (dE + lambda_s)^2 / (4 lambda_s)) for every pair.

    Entry [i, j] uses dE = e_to[j] - e_from[i]; this is the activation
    part of the nonadiabatic charge-transfer rate.
    """
    a = np.asarray(e_from, dtype=float)
    b = np.asarray(e_to, dtype=float)
    gap = b[None, :] - a[:, None] + lambda_s
    return np.exp(-beta * gap * gap / (4.0 * lambda_s))
