import numpy as np
import pytest

from tlri.config import default_config_path, load_matrix
from tlri.core import Environment, LeakModel, Scenario
from tlri.rng import derive_scenario_seed


@pytest.fixture(scope="session")
def matrix():
    return load_matrix(default_config_path())


@pytest.fixture(scope="session")
def kyber(matrix):
    return matrix.schemes["kyber"]


def make_scenario(scheme="kyber", env="idle", leak="branch", alpha=1.0,
                  n=20_000, master_seed=20260834):
    return Scenario(
        scheme_id=scheme,
        environment=Environment(env),
        leak_model=LeakModel(leak),
        alpha=alpha,
        n_traces=n,
        seed=derive_scenario_seed(master_seed, scheme, env, leak, alpha),
    )


def rng_array(seed, n, lo=-100.0, hi=100.0):
    gen = np.random.Generator(np.random.PCG64(seed))
    return gen.uniform(lo, hi, n)
