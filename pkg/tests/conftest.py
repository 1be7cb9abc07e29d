import pytest

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def report(capsys):
    """Print one PASS/FAIL line for an acceptance criterion, then assert it."""

    def emit(number: int, title: str, passed: bool, detail: str):
        line = f"{'PASS' if passed else 'FAIL'} criterion {number:>2} ({title}): {detail}"
        ACCEPTANCE_LINES.append(line)
        with capsys.disabled():
            print("\n" + line)
        assert passed, detail

    return emit


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2])):
            terminalreporter.write_line(line)
