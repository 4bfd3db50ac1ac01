"""Shared fixtures and instance generators for the test suite."""

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from latprox.basis import Basis
from latprox.errors import RankDeficient

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")

# Pass/fail lines recorded by the acceptance tests; replayed after the run so
# they show up even under pytest's fd-level capture.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance summary")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_basis(rng, n: int, m: int | None = None, cond_cap: float = 1e8) -> Basis:
    """Draw a full-rank Gaussian basis, rejecting near-singular draws."""
    m = n if m is None else m
    while True:
        entries = rng.standard_normal((m, n))
        try:
            b = Basis(entries)
        except RankDeficient:
            continue
        if np.linalg.cond(entries) < cond_cap:
            return b


@pytest.fixture
def rng():
    return np.random.default_rng(20260819)


@pytest.fixture
def hex_basis():
    """Columns (1,0) and (1/2, sqrt(3)/2): both angles 60 degrees."""
    return Basis(np.array([[1.0, 0.5], [0.0, np.sqrt(3.0) / 2.0]]))
