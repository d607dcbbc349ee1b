import pytest

_RESULTS = []


class Recorder:
    def check(self, name, ok, detail=""):
        _RESULTS.append((name, bool(ok), detail))
        assert ok, f"{name}: {detail}"


@pytest.fixture(scope="session")
def criteria():
    return Recorder()


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
