from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from lgmoon.precision import PrecisionPolicy

settings.register_profile(
    "default", deadline=None, max_examples=50, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def policy() -> PrecisionPolicy:
    return PrecisionPolicy(target_digits=50, guard_digits=15)


@pytest.fixture
def record():
    """Print one acceptance line and keep it for the terminal summary."""

    def _record(number: int, passed: bool, text: str) -> None:
        line = f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {text}"
        print(line)
        ACCEPTANCE_LINES.append(line)

    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
