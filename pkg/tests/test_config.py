import pytest

from vsckin.config import RunPlan, load_config, plan_from_mapping
from vsckin.errors import ConfigError


def _minimal(**overrides):
    data = {"ensemble": {}, "reaction": {}, "run": {}}
    for dotted, value in overrides.items():
        section, key = dotted.split(".")
        data[section][key] = value
    return data


def test_defaults_fill_missing_keys():
    plan = plan_from_mapping(_minimal())
    assert plan.n_list == (256,)
    assert plan.detuning_list == (0.0,)
    assert plan.coupling_list == (80.0,)
    assert plan.kappa_list == (1.0,)
    assert plan.temperature_list == (298.0,)
    assert plan.realizations == 500
    assert plan.seed == 1
    assert plan.threads == 1
    assert plan.bare_reference is True
    assert plan.dump_states is False


def test_sweep_axes_accept_lists():
    plan = plan_from_mapping(_minimal(**{
        "ensemble.n_molecules": [16, 64],
        "ensemble.detuning": [-60.0, 0.0, 60.0],
        "reaction.kappa": [0.1, 1.0],
    }))
    assert plan.n_list == (16, 64)
    assert plan.detuning_list == (-60.0, 0.0, 60.0)
    assert plan.n_points == 2 * 3 * 1 * 2 * 1
    assert plan.work_units == plan.n_points * 500


def test_points_row_order():
    plan = plan_from_mapping(_minimal(**{
        "ensemble.n_molecules": [16, 32],
        "reaction.kappa": [0.1, 1.0],
    }))
    pts = list(plan.points())
    assert [(p.n_molecules, p.kappa) for p in pts] == [
        (16, 0.1), (16, 1.0), (32, 0.1), (32, 1.0)]


def test_point_parameter_construction():
    plan = plan_from_mapping(_minimal(**{
        "ensemble.n_molecules": [16, 32],
        "ensemble.detuning": [0.0, 30.0],
        "reaction.temperature": [288.0, 298.0, 308.0],
    }))
    point = list(plan.points())[-1]
    ens = plan.ensemble_at(point)
    rxn = plan.reaction_at(point)
    assert ens.n_molecules == 32
    assert ens.detuning == 30.0
    assert ens.cavity_freq == 2030.0
    assert rxn.temperature == 308.0


def test_eyring_enabled_needs_three_temperatures():
    assert not plan_from_mapping(_minimal()).eyring_enabled
    assert not plan_from_mapping(
        _minimal(**{"reaction.temperature": [288.0, 298.0]})).eyring_enabled
    assert plan_from_mapping(
        _minimal(**{"reaction.temperature": [288.0, 298.0, 308.0]})).eyring_enabled
    # repeated values do not count twice
    assert not plan_from_mapping(
        _minimal(**{"reaction.temperature": [288.0, 298.0, 298.0]})).eyring_enabled


def test_resolved_round_trip():
    plan = plan_from_mapping(_minimal(**{
        "ensemble.n_molecules": [16, 64],
        "ensemble.disorder_sigma": 12.0,
        "reaction.gamma": 0.02,
        "run.realizations": 7,
        "run.out_dir": "out",
    }))
    again = plan_from_mapping(plan.resolved())
    assert again == plan


def test_unknown_keys_are_named():
    with pytest.raises(ConfigError, match="n_molecule"):
        plan_from_mapping(_minimal(**{"ensemble.n_molecule": 8}))
    with pytest.raises(ConfigError, match="gamme"):
        plan_from_mapping(_minimal(**{"reaction.gamme": 0.1}))
    with pytest.raises(ConfigError, match="thread"):
        plan_from_mapping(_minimal(**{"run.thread": 2}))
    with pytest.raises(ConfigError, match="extra"):
        plan_from_mapping({"ensemble": {}, "reaction": {}, "run": {},
                           "extra": {}})


def test_missing_section_rejected():
    with pytest.raises(ConfigError, match="reaction"):
        plan_from_mapping({"ensemble": {}, "run": {}})


def test_bool_not_a_number():
    with pytest.raises(ConfigError, match="gamma"):
        plan_from_mapping(_minimal(**{"reaction.gamma": True}))
    with pytest.raises(ConfigError, match="n_molecules"):
        plan_from_mapping(_minimal(**{"ensemble.n_molecules": True}))


def test_non_integer_count_rejected():
    with pytest.raises(ConfigError, match="n_molecules"):
        plan_from_mapping(_minimal(**{"ensemble.n_molecules": 16.0}))
    with pytest.raises(ConfigError, match="realizations"):
        plan_from_mapping(_minimal(**{"run.realizations": 2.5}))


def test_invalid_sweep_value_fails_at_load():
    # a bad value deep in a sweep list must fail up front
    with pytest.raises(ConfigError):
        plan_from_mapping(_minimal(**{"ensemble.n_molecules": [16, 0]}))
    with pytest.raises(ConfigError):
        plan_from_mapping(_minimal(**{"reaction.temperature": [298.0, -1.0]}))
    with pytest.raises(ConfigError):
        plan_from_mapping(_minimal(**{"ensemble.detuning": []}))


def test_run_section_validation():
    with pytest.raises(ConfigError, match="realizations"):
        plan_from_mapping(_minimal(**{"run.realizations": 0}))
    with pytest.raises(ConfigError, match="threads"):
        plan_from_mapping(_minimal(**{"run.threads": 0}))
    with pytest.raises(ConfigError, match="out_dir"):
        plan_from_mapping(_minimal(**{"run.out_dir": ""}))
    with pytest.raises(ConfigError, match="dump_states"):
        plan_from_mapping(_minimal(**{"run.dump_states": 1}))


def test_load_config_file(tmp_path):
    cfg = tmp_path / "run.toml"
    cfg.write_text("""
[ensemble]
n_molecules = [16, 32]
detuning = 0.0

[reaction]
kappa = [0.5, 1.0]

[run]
realizations = 3
seed = 9
out_dir = "res"
""")
    plan = load_config(cfg)
    assert isinstance(plan, RunPlan)
    assert plan.n_list == (16, 32)
    assert plan.kappa_list == (0.5, 1.0)
    assert plan.seed == 9


def test_load_config_missing_file(tmp_path):
    with pytest.raises(ConfigError, match="not found"):
        load_config(tmp_path / "nope.toml")


def test_load_config_bad_toml(tmp_path):
    cfg = tmp_path / "broken.toml"
    cfg.write_text("[ensemble\nn_molecules = 3")
    with pytest.raises(ConfigError, match="TOML"):
        load_config(cfg)
