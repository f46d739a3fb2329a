import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from wignerbin import GaussianWignerState, sample


@pytest.fixture(scope="session")
def thermal10():
    return GaussianWignerState.thermal(10.0)


@pytest.fixture(scope="session")
def thermal10_ensemble_10m(thermal10):
    return sample(thermal10, 10**7, seed=501)


@pytest.fixture(scope="session")
def vacuum_ensemble_1m():
    return sample(GaussianWignerState.vacuum(), 10**6, seed=502)
