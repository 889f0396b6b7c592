import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from mekler.graphs import make_cycle, make_petersen  # noqa: E402
from mekler.group import build_group  # noqa: E402

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def c5():
    return build_group(make_cycle(5), 3)


@pytest.fixture(scope="session")
def c6():
    return build_group(make_cycle(6), 3)


@pytest.fixture(scope="session")
def c8():
    return build_group(make_cycle(8), 3)


@pytest.fixture(scope="session")
def petersen():
    return build_group(make_petersen(), 3)


@pytest.fixture(scope="session")
def data_dir():
    return DATA


# criterion number -> (passed, description); filled by tests/test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {text}")
