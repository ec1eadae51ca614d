import pytest

_ACCEPTANCE_LINES = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line: ``criterion(number, title, detail)``.

    The line is marked PASS only if the test body finishes without error.
    """
    entry = {}

    def record(number, title, detail=""):
        entry.update(number=number, title=title, detail=detail)

    yield record
    if entry:
        failed = request.node.rep_call.failed if hasattr(request.node, "rep_call") else True
        entry["status"] = "FAIL" if failed else "PASS"
        _ACCEPTANCE_LINES.append(entry)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    setattr(item, "rep_" + rep.when, rep)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for e in sorted(_ACCEPTANCE_LINES, key=lambda e: e["number"]):
        line = f"[{e['status']}] criterion {e['number']:>2}: {e['title']}"
        if e["detail"]:
            line += f" -- {e['detail']}"
        terminalreporter.write_line(line)
