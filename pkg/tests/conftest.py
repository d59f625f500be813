import numpy as np
import pytest

_ACCEPTANCE = []


def correlated_data(rng, n, m, mix=1.0):
    """``n x m`` raw data with a random correlation structure and offsets."""
    z = rng.standard_normal((n, m))
    a = np.eye(m) + mix * rng.standard_normal((m, m))
    return z @ a * rng.uniform(0.5, 5.0, m) + rng.uniform(-10, 10, m)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def acceptance():
    def record(criterion, description, passed, detail=""):
        _ACCEPTANCE.append((criterion, description, bool(passed), detail))
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, description, passed, detail in _ACCEPTANCE:
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] AC{criterion}: {description} {detail}".rstrip())
