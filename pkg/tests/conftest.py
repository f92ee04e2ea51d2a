import math

import numpy as np
import pytest

from ambkit.ambiguity import GridSpec, default_grid
from ambkit.signal import default_lattice, gen_waveform, unit_gaussian

_ACCEPTANCE = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): exit criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        _ACCEPTANCE.append((mark.args[0], mark.args[1], rep.passed))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num, title, ok in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"criterion {num:>2}: {'PASS' if ok else 'FAIL'}  {title}")


@pytest.fixture(scope="session")
def lattice():
    return default_lattice()


@pytest.fixture(scope="session")
def g(lattice):
    return unit_gaussian(lattice)


@pytest.fixture(scope="session")
def hermites(lattice):
    return gen_waveform("hermite", {"orders": [0, 1, 2]}, lattice)


@pytest.fixture(scope="session")
def grid():
    return default_grid()


@pytest.fixture(scope="session")
def small_grid():
    """[-6, 6]^2 at step 1/16; on the DFT lattice of dt = 1/32."""
    return GridSpec.square(6.0, 193)


def gaussian_amb_magnitude(spec):
    tau, nu = spec.mesh()
    return np.exp(-math.pi * (tau**2 + nu**2) / 2)
