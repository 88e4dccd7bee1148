import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from services.run_logging import RunLogger, get_run_logger, set_run_logger  # noqa: E402


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full-grid reproduction runs")


@pytest.fixture(autouse=True)
def run_log(tmp_path):
    """Point the global run log at a per-test file."""
    previous = get_run_logger()
    logger = RunLogger(log_file=str(tmp_path / "run_logs.jsonl"), enabled=True, timezone="UTC")
    set_run_logger(logger)
    yield logger
    set_run_logger(previous)
