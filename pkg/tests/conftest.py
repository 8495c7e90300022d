import numpy as np
import pytest

from taylorspec import build_pair


@pytest.fixture(scope="session")
def zero_pair():
    return build_pair(np.zeros((3, 3)), np.zeros((3, 3)))


@pytest.fixture(scope="session")
def diag_pair():
    return build_pair(np.diag([0.1, 0.2]), np.diag([0.3, 0.4]))


@pytest.fixture(scope="session")
def nilp_pair():
    # strictly upper triangular, purity 0.45, joint spectrum {(0,0)} twice
    return build_pair(np.array([[0, 0.6], [0, 0]]), np.array([[0, 0.3], [0, 0]]))


@pytest.fixture(scope="session")
def nonpure_pair():
    c = 1 / np.sqrt(2)
    return build_pair(c * np.eye(2), c * np.eye(2))
