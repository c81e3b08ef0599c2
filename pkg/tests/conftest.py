"""Shared fixtures: random geometric data and a session-wide log-symbol cache.

The acceptance tests record one PASS/FAIL line per criterion; the lines are
printed in the terminal summary so a green run still shows the ledger.
"""

import random

import pytest

from logresidue import (
    dirac_squared_symbol,
    log_symbol,
    random_curvature,
    random_gauge,
    random_laplacian_lower,
)

SEED = 20260826

ACCEPTANCE_RESULTS = {}


def record_criterion(number, description, ok, detail=""):
    ACCEPTANCE_RESULTS[number] = (description, ok, detail)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    tw = terminalreporter
    tw.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        description, ok, detail = ACCEPTANCE_RESULTS[number]
        status = "PASS" if ok else "FAIL"
        line = f"criterion {number:2d}: {status} — {description}"
        if detail and not ok:
            line += f"  [{detail}]"
        tw.write_line(line)


@pytest.fixture(scope="session")
def curvatures():
    """20 random rational curvature tensors with the Riemann symmetries, n=4."""
    rng = random.Random(SEED)
    return [random_curvature(4, rng) for _ in range(20)]


@pytest.fixture(scope="session")
def dirac_syms(curvatures):
    return [dirac_squared_symbol(R) for R in curvatures]


@pytest.fixture(scope="session")
def gauges():
    """20 random gauge fields with d_W = 2: 15 at n = 2 and 5 at n = 4."""
    rng = random.Random(SEED + 1)
    fields = [random_gauge(2, 2, rng) for _ in range(15)]
    fields += [random_gauge(4, 2, rng) for _ in range(5)]
    return fields


@pytest.fixture(scope="session")
def random_symbols():
    """20 random generalised-Laplacian lower symbols over n in {2,4}, d_W in {1,2}."""
    rng = random.Random(SEED + 2)
    symbols = []
    for i in range(16):
        symbols.append(random_laplacian_lower(2, 1 + i % 2, rng))
    for _ in range(3):
        symbols.append(random_laplacian_lower(4, 1, rng))
    symbols.append(random_laplacian_lower(4, 2, rng))
    return symbols


class LogCache:
    """Memoises full log-symbol expansions across acceptance criteria."""

    def __init__(self):
        self._store = {}

    def get(self, key, sym, n, method):
        k = (key, method)
        if k not in self._store:
            self._store[k] = log_symbol(sym, n, method).classical
        return self._store[k]


@pytest.fixture(scope="session")
def log_cache():
    return LogCache()
