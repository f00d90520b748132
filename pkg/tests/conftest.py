import pytest

_ACCEPTANCE = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line: ``criterion(ok, detail)``."""

    def record(ok: bool, detail: str = ""):
        _ACCEPTANCE.append((request.node.name, bool(ok), detail))
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name:<48} {detail}")
