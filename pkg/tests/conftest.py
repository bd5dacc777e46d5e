import os

# Pin BLAS threading before numpy is imported anywhere in the session so
# eigensolver results (and therefore CSV bytes) cannot depend on the
# machine's core count.
for _var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS",
             "NUMEXPR_NUM_THREADS"):
    os.environ.setdefault(_var, "1")

import numpy as np  # noqa: E402
import pytest  # noqa: E402

import vsckin  # noqa: E402
from vsckin import runner  # noqa: E402


@pytest.fixture(scope="session")
def small_pair():
    """(ensemble, reaction) at N=8 for cheap structural tests."""
    return vsckin.default_params(8)


@pytest.fixture(scope="session")
def small_context(small_pair):
    """One diagonalized disordered realization at N=8, with its bare
    counterpart."""
    ens, _ = small_pair
    seed = runner.realization_seed(1, ens.n_molecules, ens.detuning,
                                   ens.collective_coupling, 0)
    return runner.build_context(ens, seed, 0, with_bare=True)


@pytest.fixture(scope="session")
def medium_context():
    """One realization at N=64; big enough for collective behaviour,
    cheap enough to reuse."""
    ens, _ = vsckin.default_params(64)
    seed = runner.realization_seed(1, 64, ens.detuning,
                                   ens.collective_coupling, 0)
    return runner.build_context(ens, seed, 0, with_bare=True)


@pytest.fixture()
def rng():
    return np.random.default_rng(20260815)
