import json
from pathlib import Path

import pytest

from deltamm.bridge import q3_of
from deltamm.harness.examples import example_delta_matroid, plane_theta

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def d_ex():
    return example_delta_matroid()


@pytest.fixture(scope="session")
def q_ex(d_ex):
    return q3_of(d_ex)


@pytest.fixture(scope="session")
def g_star():
    return plane_theta()


@pytest.fixture(scope="session")
def regression():
    return json.loads((FIXTURES / "regression.json").read_text())
