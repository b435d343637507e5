import pytest

from rootclose import report


@pytest.fixture(scope="session")
def example_report():
    """One shared run of the worked-example suite (it is deterministic)."""
    return report.run_example_suite(report.Config(timestamp=False))
