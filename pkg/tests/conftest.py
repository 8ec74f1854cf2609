import numpy as np
import pytest

from gaussrenyi.core import random_local_symplectic

ACCEPTANCE_LINES = []


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def local_conjugate(cm, rng, squeeze_cap=1.0):
    """Conjugates a CM by a random product of single-mode symplectics."""
    s = random_local_symplectic(cm.shape[0] // 2, rng, squeeze_cap)
    return s @ cm @ s.T


def thermal_fock_probs(nu, tail=1e-14):
    """Photon-number distribution of a thermal state with symplectic eigenvalue nu.

    Truncated once the remaining tail mass drops below ``tail``.
    """
    nbar = (nu - 1) / 2
    q = nbar / (nbar + 1)
    probs, p, mass = [], 1 / (nbar + 1), 0.0
    while 1 - mass > tail:
        probs.append(p)
        mass += p
        p *= q
    return np.array(probs)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
