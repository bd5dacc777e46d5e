"""Input contracts: which CSV columns each figure kind consumes.

Validation happens before any plotting, so a malformed file fails with
the offending column named instead of surfacing as a KeyError somewhere
inside matplotlib.
"""

from __future__ import annotations

from dataclasses import dataclass

import pandas as pd


class SchemaError(ValueError):
    """An input CSV does not match the schema a figure kind expects."""


KINDS = ("spectrum", "pr_vs_n", "ratio_vs_n", "detuning", "eyring")

#: Columns each figure kind reads from its input table(s).
REQUIRED_COLUMNS = {
    "spectrum": ("n_molecules", "detuning_cm1", "g_sqrtN_cm1",
                 "bin_center_cm1", "probability", "mean_photon_fraction",
                 "n_modes"),
    "pr_vs_n": ("n_molecules", "detuning_cm1", "g_sqrtN_cm1",
                "mean_photon_fraction", "mean_molecular_pr", "n_modes"),
    "ratio_vs_n": ("N", "detuning_cm1", "g_sqrtN_cm1", "kappa_ps1", "T_K",
                   "k_vsc_se", "k_bare_ps1", "ratio"),
    "detuning": ("N", "detuning_cm1", "g_sqrtN_cm1", "kappa_ps1", "T_K",
                 "ratio", "deloc_mean"),
    "eyring": ("case_label", "dH_kJ_mol", "dS_J_molK"),
}

# every required column except these must parse as numbers
_TEXT_COLUMNS = frozenset({"case_label"})


@dataclass(frozen=True)
class FigureSpec:
    """One figure request: input table(s), figure kind, output path."""

    inputs: tuple
    kind: str
    output: str

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SchemaError(
                f"unknown figure kind {self.kind!r}; expected one of "
                + ", ".join(KINDS))
        if not self.inputs:
            raise SchemaError("at least one input CSV path is required")


def load_table(path, kind: str) -> pd.DataFrame:
    """Read one CSV and check it carries every column ``kind`` needs.

    Raises SchemaError naming the missing or non-numeric column(s).
    """
    required = REQUIRED_COLUMNS[kind]
    try:
        frame = pd.read_csv(path)
    except FileNotFoundError:
        raise SchemaError(f"{path}: file not found") from None
    except pd.errors.EmptyDataError:
        raise SchemaError(f"{path}: file is empty") from None
    missing = [c for c in required if c not in frame.columns]
    if missing:
        raise SchemaError(
            f"{path}: missing required column(s) "
            + ", ".join(repr(c) for c in missing)
            + f" for figure kind {kind!r}")
    if len(frame) == 0:
        raise SchemaError(f"{path}: no data rows")
    for col in required:
        if col in _TEXT_COLUMNS:
            continue
        try:
            frame[col] = pd.to_numeric(frame[col])
        except (TypeError, ValueError):
            raise SchemaError(f"{path}: column {col!r} is not numeric") from None
    return frame


def load_inputs(spec: FigureSpec) -> pd.DataFrame:
    """Load and concatenate every input table of a figure spec.

    Several files of the same schema (for example a sweep split across
    result directories) stack into one table.
    """
    frames = [load_table(p, spec.kind) for p in spec.inputs]
    if len(frames) == 1:
        return frames[0]
    return pd.concat(frames, ignore_index=True)
