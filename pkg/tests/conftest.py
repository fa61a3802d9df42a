import warnings

import pytest

from scsa import decompose, make_grid, sech2_signal, synthetic_beat

ACCEPTANCE_LINES = []


def _decomp(h, M=1024, a=0.0, b=10.0):
    signal = sech2_signal(make_grid(a, b, M), 5.0)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        return signal, decompose(signal, h)


@pytest.fixture(scope="session")
def sech2():
    return sech2_signal(make_grid(0.0, 10.0, 1024), 5.0)


@pytest.fixture(scope="session")
def sech2_decomps():
    """Cache of sech² decompositions keyed by (h, M)."""
    cache = {}

    def get(h, M=1024):
        if (h, M) not in cache:
            cache[(h, M)] = _decomp(h, M)[1]
        return cache[(h, M)]

    return get


@pytest.fixture(scope="session")
def beat():
    return synthetic_beat(make_grid(0.0, 1.0, 1024), 120.0, 80.0, 0.4)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
