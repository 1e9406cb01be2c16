import numpy as np
import pytest

from kgbf import MinkowskiInterval, MinkowskiRadial, VacuumSpec, interval_grid, rod_grid
from kgbf.symplectic import PairingContext


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def interval_family():
    return MinkowskiInterval()


@pytest.fixture(scope="session")
def igrid():
    return interval_grid()


@pytest.fixture(scope="session")
def rod_family():
    return MinkowskiRadial()


@pytest.fixture(scope="session")
def rgrid():
    return rod_grid(omegas=[0.5, 1.0, 1.5, 2.0, 2.5], lmax=2)


@pytest.fixture(scope="session")
def standard():
    return VacuumSpec.standard()


@pytest.fixture
def ictx(interval_family, igrid, standard):
    return PairingContext(interval_family, igrid, standard, 0.37)


@pytest.fixture
def rctx(rod_family, rgrid, standard):
    return PairingContext(rod_family, rgrid, standard, 4.0)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
