"""Shared fixtures and parameter-set generators for the test suite."""

import numpy as np
import pytest

from gtld.model import ParamVector
from gtld.transforms import SUBFAMILY_IDS, SUBFAMILY_SHAPES


def random_params(family: str, rng: np.random.Generator) -> ParamVector:
    """Draw a valid, numerically comfortable parameter set for a sub-family."""
    shape = {}
    for name in SUBFAMILY_SHAPES[family]:
        if family == "gtmw" and name == "gamma":
            shape[name] = float(rng.uniform(0.05, 1.5))
        else:
            shape[name] = float(rng.uniform(0.4, 3.0))
    return ParamVector(
        beta=float(rng.uniform(0.3, 3.0)),
        theta=float(rng.uniform(0.3, 3.0)),
        lam=float(rng.uniform(-0.95, 0.95)),
        shape=shape,
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)


@pytest.fixture(params=sorted(SUBFAMILY_IDS))
def family(request):
    return request.param
