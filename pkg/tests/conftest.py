"""Shared pytest configuration: hypothesis profile and the acceptance summary."""
from __future__ import annotations

from hypothesis import HealthCheck, settings

settings.register_profile(
    "verlie", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("verlie")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[num])
