import pytest

from distspec.enumerate import mine

_ACCEPTANCE: list[tuple[str, bool, str]] = []


def record(criterion: str, ok: bool, detail: str = "") -> None:
    _ACCEPTANCE.append((criterion, ok, detail))


@pytest.fixture(scope="session")
def accept():
    return record


@pytest.fixture(scope="session")
def mined7():
    return mine(7)


@pytest.fixture(scope="session")
def mined8():
    return mine(8)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, ok, detail in _ACCEPTANCE:
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"[{status}] {criterion}" + (f"  ({detail})" if detail else ""))
