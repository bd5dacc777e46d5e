import dataclasses
import math

import pytest

import vsckin
from vsckin.errors import ParameterError
from vsckin.params import EnsembleParams, ReactionParams, default_params


def test_default_ensemble_values():
    ens, _ = default_params(256)
    assert ens.n_molecules == 256
    assert ens.mean_vib_freq == 2000.0
    assert ens.disorder_sigma == 10.0
    assert ens.detuning == 0.0
    assert ens.collective_coupling == 80.0
    assert ens.cavity_freq == 2000.0
    assert ens.per_molecule_coupling == pytest.approx(5.0)


def test_default_reaction_values():
    _, rxn = default_params(8)
    assert rxn.e_reactant == 0.0
    assert rxn.e_product == pytest.approx(-1200.0)
    assert rxn.lambda_r == 0.0
    assert rxn.lambda_p == 1.5
    assert rxn.j_rp == pytest.approx(20.0)
    assert rxn.lambda_s == pytest.approx(160.0)
    assert rxn.temperature == 298.0
    assert rxn.kappa == 1.0
    assert rxn.gamma == 0.01
    assert rxn.eta == 2e-3
    assert rxn.omega_cut == 50.0


def test_detuning_moves_cavity():
    ens, _ = default_params(8)
    shifted = dataclasses.replace(ens, detuning=-35.0)
    assert shifted.cavity_freq == pytest.approx(1965.0)


def test_per_molecule_coupling_scaling():
    ens, _ = default_params(64)
    assert ens.per_molecule_coupling == pytest.approx(
        ens.collective_coupling / math.sqrt(64))


def test_without_cavity_coupling():
    ens, _ = default_params(16)
    bare = ens.without_cavity_coupling()
    assert bare.collective_coupling == 0.0
    assert bare.n_molecules == ens.n_molecules
    assert bare.cavity_freq == ens.cavity_freq


@pytest.mark.parametrize("kwargs", [
    {"n_molecules": 0},
    {"n_molecules": -4},
    {"mean_vib_freq": 0.0},
    {"mean_vib_freq": -2000.0},
    {"disorder_sigma": -1.0},
    {"disorder_sigma": 250.0},   # >= mean/10 would break the narrow-band assumptions
    {"collective_coupling": -5.0},
])
def test_ensemble_validation(kwargs):
    base = dict(n_molecules=8, mean_vib_freq=2000.0, disorder_sigma=10.0,
                detuning=0.0, collective_coupling=80.0)
    base.update(kwargs)
    with pytest.raises(ParameterError):
        EnsembleParams(**base)


def test_ensemble_rejects_non_integer_count():
    with pytest.raises(ParameterError):
        EnsembleParams(n_molecules=8.5, mean_vib_freq=2000.0,
                       disorder_sigma=10.0, detuning=0.0,
                       collective_coupling=80.0)


def test_cavity_detuned_below_zero_rejected():
    with pytest.raises(ParameterError):
        EnsembleParams(n_molecules=8, mean_vib_freq=2000.0,
                       disorder_sigma=10.0, detuning=-2000.0,
                       collective_coupling=80.0)


def test_reaction_helpers():
    _, rxn = default_params(8)
    cold = rxn.at_temperature(273.0)
    assert cold.temperature == 273.0
    assert cold.e_product == rxn.e_product
    hot_decay = rxn.with_gamma(1.0)
    assert hot_decay.gamma == 1.0
    assert hot_decay.kappa == rxn.kappa
    # originals untouched (frozen dataclasses)
    assert rxn.temperature == 298.0
    assert rxn.gamma == 0.01


@pytest.mark.parametrize("kwargs", [
    {"temperature": 0.0},
    {"temperature": -10.0},
    {"lambda_s": 0.0},
    {"lambda_s": -160.0},
    {"kappa": -1.0},
    {"gamma": -0.01},
    {"eta": -2e-3},
    {"omega_cut": 0.0},
])
def test_reaction_validation(kwargs):
    base = dict(e_reactant=0.0, e_product=-1200.0, lambda_r=0.0,
                lambda_p=1.5, j_rp=20.0, lambda_s=160.0, temperature=298.0,
                kappa=1.0, gamma=0.01, eta=2e-3, omega_cut=50.0)
    base.update(kwargs)
    with pytest.raises(ParameterError):
        ReactionParams(**base)


def test_params_are_frozen():
    ens, rxn = default_params(8)
    with pytest.raises(dataclasses.FrozenInstanceError):
        ens.n_molecules = 9
    with pytest.raises(dataclasses.FrozenInstanceError):
        rxn.kappa = 2.0


def test_default_params_requires_positive_n():
    with pytest.raises(ParameterError):
        vsckin.default_params(0)
