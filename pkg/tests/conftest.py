from __future__ import annotations

import warnings

import pytest
from hypothesis import HealthCheck, settings

from zetalab import lfunc, suite

settings.register_profile("zetalab", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("zetalab")


@pytest.fixture(scope="session")
def e11():
    return lfunc.load_curve("11a1")


@pytest.fixture(scope="session")
def e37():
    return lfunc.load_curve("37a1")


@pytest.fixture(scope="session")
def t11(e11):
    return lfunc.coefficients(e11, suite.TABLE_N)


@pytest.fixture(scope="session")
def t37(e37):
    return lfunc.coefficients(e37, suite.TABLE_N)


@pytest.fixture(scope="session")
def ws11(e11):
    """Shared 11a1 workspace (catalog to height 40, h_E and w on the default grid)."""
    return suite.Workspace(e11)


@pytest.fixture(scope="session")
def ws37(e37):
    return suite.Workspace(e37)


@pytest.fixture(autouse=True)
def _quiet_precision_warnings():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        yield


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import SUMMARY
    except ImportError:
        return
    if SUMMARY:
        terminalreporter.section("acceptance criteria")
        for k in sorted(SUMMARY):
            terminalreporter.write_line(SUMMARY[k])
