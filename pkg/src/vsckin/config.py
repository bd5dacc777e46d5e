"""Run configuration: TOML ingestion, validation, sweep planning.

A run file has three sections, [ensemble], [reaction] and [run], whose
keys match the parameter dataclasses field for field.  Five keys are
sweepable and may hold either a scalar or a list: n_molecules, detuning,
collective_coupling, kappa, temperature.  Unknown sections or keys are
hard errors (they are almost always typos); omitted keys fall back to
the reference defaults of :func:`vsckin.params.default_params`.
"""

import dataclasses
from dataclasses import dataclass
from itertools import product

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .analysis import SweepPoint
from .errors import ConfigError, ParameterError
from .params import EnsembleParams, ReactionParams, default_params

_SECTIONS = ("ensemble", "reaction", "run")
_ENSEMBLE_KEYS = ("n_molecules", "mean_vib_freq", "disorder_sigma",
                  "detuning", "collective_coupling")
_REACTION_KEYS = ("e_reactant", "e_product", "lambda_r", "lambda_p", "j_rp",
                  "lambda_s", "temperature", "kappa", "gamma", "eta",
                  "omega_cut")
_RUN_DEFAULTS = {
    "realizations": 500,
    "seed": 1,
    "out_dir": "results",
    "threads": 1,
    "dump_states": False,
    "dump_rate_tables": False,
    "bare_reference": True,
}
#: Keys that may carry a list of values to sweep over.
SWEEPABLE = ("n_molecules", "detuning", "collective_coupling", "kappa",
             "temperature")


@dataclass(frozen=True)
class RunPlan:
    """Fully resolved description of one run.

    ``ensemble`` and ``reaction`` are templates carrying the first value
    of every sweep axis; per-point parameter sets come from
    :meth:`ensemble_at` / :meth:`reaction_at`.
    """

    ensemble: EnsembleParams
    reaction: ReactionParams
    n_list: tuple
    detuning_list: tuple
    coupling_list: tuple
    kappa_list: tuple
    temperature_list: tuple
    realizations: int
    seed: int
    out_dir: str
    threads: int
    dump_states: bool
    dump_rate_tables: bool
    bare_reference: bool

    def __post_init__(self):
        if not isinstance(self.realizations, int) or self.realizations < 1:
            raise ConfigError("run.realizations must be a positive integer")
        if not isinstance(self.seed, int) or self.seed < 0:
            raise ConfigError("run.seed must be a non-negative integer")
        if not isinstance(self.threads, int) or self.threads < 1:
            raise ConfigError("run.threads must be a positive integer")

    def points(self):
        """Sweep points in deterministic row order (N, delta, g, kappa, T)."""
        for n, d, g, kap, t in product(self.n_list, self.detuning_list,
                                       self.coupling_list, self.kappa_list,
                                       self.temperature_list):
            yield SweepPoint(n_molecules=n, detuning=d, collective_coupling=g,
                             kappa=kap, temperature=t)

    @property
    def n_points(self) -> int:
        return (len(self.n_list) * len(self.detuning_list)
                * len(self.coupling_list) * len(self.kappa_list)
                * len(self.temperature_list))

    @property
    def work_units(self) -> int:
        return self.n_points * self.realizations

    @property
    def eyring_enabled(self) -> bool:
        """Activation-parameter fits need >= 3 distinct temperatures."""
        return len(set(self.temperature_list)) >= 3

    def ensemble_at(self, point: SweepPoint) -> EnsembleParams:
        return dataclasses.replace(
            self.ensemble, n_molecules=point.n_molecules,
            detuning=point.detuning,
            collective_coupling=point.collective_coupling)

    def reaction_at(self, point: SweepPoint) -> ReactionParams:
        return dataclasses.replace(
            self.reaction, kappa=point.kappa, temperature=point.temperature)

    def resolved(self) -> dict:
        """Nested mapping equivalent to a fully written-out config file;
        feeding it back through plan_from_mapping reproduces this plan."""
        return {
            "ensemble": {
                "n_molecules": list(self.n_list),
                "mean_vib_freq": self.ensemble.mean_vib_freq,
                "disorder_sigma": self.ensemble.disorder_sigma,
                "detuning": list(self.detuning_list),
                "collective_coupling": list(self.coupling_list),
            },
            "reaction": {
                "e_reactant": self.reaction.e_reactant,
                "e_product": self.reaction.e_product,
                "lambda_r": self.reaction.lambda_r,
                "lambda_p": self.reaction.lambda_p,
                "j_rp": self.reaction.j_rp,
                "lambda_s": self.reaction.lambda_s,
                "temperature": list(self.temperature_list),
                "kappa": list(self.kappa_list),
                "gamma": self.reaction.gamma,
                "eta": self.reaction.eta,
                "omega_cut": self.reaction.omega_cut,
            },
            "run": {
                "realizations": self.realizations,
                "seed": self.seed,
                "out_dir": self.out_dir,
                "threads": self.threads,
                "dump_states": self.dump_states,
                "dump_rate_tables": self.dump_rate_tables,
                "bare_reference": self.bare_reference,
            },
        }


def _require_number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where} must be a number, got {value!r}")
    return float(value)


def _require_int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{where} must be an integer, got {value!r}")
    return value


def _axis(section: dict, key: str, default, section_name: str,
          as_int: bool = False) -> tuple:
    """Read a sweepable key as a tuple of values."""
    raw = section.get(key, default)
    if not isinstance(raw, list):
        raw = [raw]
    if not raw:
        raise ConfigError(f"{section_name}.{key} must not be an empty list")
    coerce = _require_int if as_int else _require_number
    return tuple(coerce(v, f"{section_name}.{key}") for v in raw)


def _check_keys(section: dict, allowed, name: str):
    unknown = sorted(set(section) - set(allowed))
    if unknown:
        raise ConfigError(f"unknown key '{unknown[0]}' in [{name}] section")


def plan_from_mapping(data: dict) -> RunPlan:
    """Build a RunPlan from an already-parsed configuration mapping."""
    if not isinstance(data, dict):
        raise ConfigError("configuration root must be a table")
    _check_keys(data, _SECTIONS, "root")
    for section in _SECTIONS:
        if section not in data:
            raise ConfigError(f"missing [{section}] section")
        if not isinstance(data[section], dict):
            raise ConfigError(f"[{section}] must be a table")

    ens_default, rxn_default = default_params()
    ens = data["ensemble"]
    rxn = data["reaction"]
    run = data["run"]
    _check_keys(ens, _ENSEMBLE_KEYS, "ensemble")
    _check_keys(rxn, _REACTION_KEYS, "reaction")
    _check_keys(run, _RUN_DEFAULTS, "run")

    n_list = _axis(ens, "n_molecules", ens_default.n_molecules, "ensemble",
                   as_int=True)
    detuning_list = _axis(ens, "detuning", ens_default.detuning, "ensemble")
    coupling_list = _axis(ens, "collective_coupling",
                          ens_default.collective_coupling, "ensemble")
    kappa_list = _axis(rxn, "kappa", rxn_default.kappa, "reaction")
    temperature_list = _axis(rxn, "temperature", rxn_default.temperature,
                             "reaction")

    scalar_ens = {
        "mean_vib_freq": _require_number(
            ens.get("mean_vib_freq", ens_default.mean_vib_freq),
            "ensemble.mean_vib_freq"),
        "disorder_sigma": _require_number(
            ens.get("disorder_sigma", ens_default.disorder_sigma),
            "ensemble.disorder_sigma"),
    }
    scalar_rxn = {}
    for key in ("e_reactant", "e_product", "lambda_r", "lambda_p", "j_rp",
                "lambda_s", "gamma", "eta", "omega_cut"):
        scalar_rxn[key] = _require_number(
            rxn.get(key, getattr(rxn_default, key)), f"reaction.{key}")

    try:
        ensemble = EnsembleParams(n_molecules=n_list[0],
                                  detuning=detuning_list[0],
                                  collective_coupling=coupling_list[0],
                                  **scalar_ens)
        reaction = ReactionParams(temperature=temperature_list[0],
                                  kappa=kappa_list[0], **scalar_rxn)
        # surface invalid values anywhere on a sweep axis now, not mid-run
        for n, d, g in product(n_list, detuning_list, coupling_list):
            dataclasses.replace(ensemble, n_molecules=n, detuning=d,
                                collective_coupling=g)
        for kap, t in product(kappa_list, temperature_list):
            dataclasses.replace(reaction, kappa=kap, temperature=t)
    except ParameterError as exc:
        raise ConfigError(str(exc)) from exc

    out_dir = run.get("out_dir", _RUN_DEFAULTS["out_dir"])
    if not isinstance(out_dir, str) or not out_dir:
        raise ConfigError("run.out_dir must be a non-empty string")
    toggles = {}
    for key in ("dump_states", "dump_rate_tables", "bare_reference"):
        val = run.get(key, _RUN_DEFAULTS[key])
        if not isinstance(val, bool):
            raise ConfigError(f"run.{key} must be a boolean, got {val!r}")
        toggles[key] = val

    return RunPlan(
        ensemble=ensemble, reaction=reaction,
        n_list=n_list, detuning_list=detuning_list,
        coupling_list=coupling_list, kappa_list=kappa_list,
        temperature_list=temperature_list,
        realizations=_require_int(
            run.get("realizations", _RUN_DEFAULTS["realizations"]),
            "run.realizations"),
        seed=_require_int(run.get("seed", _RUN_DEFAULTS["seed"]), "run.seed"),
        out_dir=out_dir,
        threads=_require_int(run.get("threads", _RUN_DEFAULTS["threads"]),
                             "run.threads"),
        **toggles,
    )


def load_config(path) -> RunPlan:
    """Parse and validate a TOML run file."""
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {path}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid TOML: {exc}") from exc
    return plan_from_mapping(data)
