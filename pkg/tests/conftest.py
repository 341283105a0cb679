import pytest

_LINES = []


class AcceptanceLog:
    def record(self, number, title, passed, detail=""):
        _LINES.append((number, title, passed, detail))


@pytest.fixture(scope="session")
def acceptance():
    return AcceptanceLog()


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in sorted(_LINES, key=lambda x: x[0]):
        mark = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{mark}] criterion {number}: {title} -- {detail}")
