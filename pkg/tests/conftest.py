import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from convproc.corpus import DATA_DIR  # noqa: E402
from convproc.program import ProgramInstance  # noqa: E402


@pytest.fixture(scope="session")
def example():
    return ProgramInstance.load(DATA_DIR / "example3.json")


@pytest.fixture(scope="session")
def scalar():
    return ProgramInstance.load(DATA_DIR / "scalar.json")


@pytest.fixture(scope="session")
def scalar_inactive():
    return ProgramInstance.load(DATA_DIR / "scalar_inactive.json")


# -- acceptance verdicts -------------------------------------------------------

_VERDICTS = []
_SUITE_LIMIT = 600.0


def pytest_sessionstart(session):
    session.config._convproc_start = time.perf_counter()


@pytest.fixture
def verdict(capsys):
    """Print one ``[criterion] PASS|FAIL`` line and keep it for the summary."""

    def emit(criterion, ok, detail=""):
        text = f"[criterion {criterion}] {'PASS' if ok else 'FAIL'} {detail}".rstrip()
        _VERDICTS.append(text)
        with capsys.disabled():
            print("\n" + text)
        return ok

    return emit


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _VERDICTS:
        return
    elapsed = time.perf_counter() - config._convproc_start
    terminalreporter.section("acceptance criteria")
    for text in _VERDICTS:
        terminalreporter.write_line(text)
    ok = elapsed < _SUITE_LIMIT
    terminalreporter.write_line(f"[criterion 5] {'PASS' if ok else 'FAIL'} full suite wall time "
                                f"{elapsed:.1f} s (limit {_SUITE_LIMIT:.0f} s)")


def pytest_sessionfinish(session, exitstatus):
    start = getattr(session.config, "_convproc_start", None)
    if _VERDICTS and start is not None and time.perf_counter() - start >= _SUITE_LIMIT and exitstatus == 0:
        session.exitstatus = 1
