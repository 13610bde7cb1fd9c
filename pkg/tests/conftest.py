import pytest

ACCEPTANCE_RESULTS = []


@pytest.fixture
def criterion(request):
    """Record one acceptance criterion; the outcome is printed in the summary."""
    entry = {"name": request.node.name, "ok": False, "note": ""}
    ACCEPTANCE_RESULTS.append(entry)

    def note(text):
        entry["note"] = text

    yield note
    entry["ok"] = True


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for entry in ACCEPTANCE_RESULTS:
        status = "PASS" if entry["ok"] else "FAIL"
        terminalreporter.write_line(f"{status}  {entry['name']}  {entry['note']}")
