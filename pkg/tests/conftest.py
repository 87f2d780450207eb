import pathlib

import numpy as np
import pytest

from gainrank.theorems import templates

SAMPLE_GRAPHS = pathlib.Path(__file__).parent.parent / 'sample_graphs'


@pytest.fixture
def rng():
    return np.random.default_rng(7)


@pytest.fixture
def k32():
    return templates.k32_example()


@pytest.fixture
def reducible_triangle():
    return templates.reducible_triangle_example()


@pytest.fixture
def theta_111():
    return templates.theta_111_example()


@pytest.fixture
def sample_graph():
    def _path(name: str) -> str:
        return str(SAMPLE_GRAPHS / name)

    return _path
