import os

import pytest
from hypothesis import HealthCheck, settings

# fixed seed so every run draws the same examples; printed in the header
SEED = int(os.environ.get("MM_TEST_SEED", "20031"))

settings.register_profile(
    "mm",
    derandomize=True,
    deadline=None,
    max_examples=200,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("mm")


def pytest_report_header(config):
    return f"metamath test seed: {SEED} (hypothesis derandomized)"


_ACCEPTANCE: list = []


@pytest.fixture
def acceptance_log():
    """Collects one pass/fail line per acceptance criterion."""
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
