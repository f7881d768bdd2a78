import numpy as np
import pytest

ACCEPTANCE_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[ACCEPTANCE_KEY] = []


@pytest.fixture
def rng(request):
    # seeded from the test name: independent streams, stable across runs
    return np.random.default_rng([ord(c) for c in request.node.name])


@pytest.fixture
def criterion(request):
    """Record ``(label, passed, detail)`` for the acceptance summary."""
    log = request.config.stash[ACCEPTANCE_KEY]

    def record(label, passed, detail=""):
        log.append((label, bool(passed), detail))
        return passed

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    log = config.stash.get(ACCEPTANCE_KEY, [])
    if not log:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in log:
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {label}  {detail}")
