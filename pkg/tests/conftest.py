import os

import numpy as np
import pytest

SEED = int(os.environ.get("PARAGRADE_TEST_SEED", "20241014"))


def pytest_report_header(config):
    from paragrade import kernels

    return [f"paragrade test seed: {SEED}", f"kernel backend: {kernels.default_backend()}"]


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
