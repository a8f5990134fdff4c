import pytest

_LINES = []


@pytest.fixture
def report():
    """Record one ``PASS``/``FAIL`` line for an acceptance criterion.

    Call it with the criterion number, a short label, whether it held and the
    measured numbers.  The lines are printed together at the end of the run.
    """

    def record(number, label, ok, detail):
        line = f"{'PASS' if ok else 'FAIL'} #{number:<2} {label}: {detail}"
        _LINES.append((number, line))
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(_LINES):
        terminalreporter.write_line(line)
