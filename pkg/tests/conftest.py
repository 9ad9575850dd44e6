import math

import numpy as np
import pytest

from oscnet import OscillatorNetwork


def random_network(rng, n=None, eps=0.1):
    """Masses log-uniform in [0.1, 10], V = M^T M + eps I with Gaussian M."""
    if n is None:
        n = int(rng.integers(2, 9))
    masses = np.exp(rng.uniform(math.log(0.1), math.log(10.0), n))
    m = rng.normal(size=(n, n))
    return OscillatorNetwork.from_arrays(masses, m.T @ m + eps * np.eye(n))


def random_beta(rng, k):
    """Every tenth draw is the ground state, the rest log-uniform in [0.1, 100]."""
    if k % 10 == 0:
        return math.inf
    return math.exp(rng.uniform(math.log(0.1), math.log(100.0)))


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
