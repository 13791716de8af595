import pytest

_VERDICTS = pytest.StashKey[list]()


@pytest.fixture
def verdicts(request):
    """Collector for acceptance verdict lines, echoed in the terminal summary."""
    return request.config.stash.setdefault(_VERDICTS, [])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_VERDICTS, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
