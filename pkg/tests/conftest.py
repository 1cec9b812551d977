from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("tau", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("tau")

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def report():
    """Record one acceptance line; printed in the terminal summary."""
    return ACCEPTANCE_LINES.append


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def census_235():
    from tau_engine.brieskorn.census import enumerate_su3
    from tau_engine.brieskorn.seifert import seifert_presentation
    from tau_engine.brieskorn.solver import SolverConfig

    return enumerate_su3(seifert_presentation(2, 3, 5), SolverConfig(restarts=200, seed=0))
