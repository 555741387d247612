import numpy as np
import pytest

from nbldpc.gf import GaloisField

ACCEPTANCE = {}


@pytest.fixture(scope="session")
def gf8():
    return GaloisField(3)


@pytest.fixture(scope="session")
def gf16():
    return GaloisField(4)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_row(rng, q, d, high=15):
    """Hard symbols and integer deviation-space reliabilities for one row."""
    hard = rng.integers(0, q, size=d)
    soft = rng.integers(0, high + 1, size=(d, q)).astype(float)
    soft[:, 0] = 0.0
    return hard, soft


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(
            f"criterion {key:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
