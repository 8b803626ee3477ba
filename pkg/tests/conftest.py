import pytest

ACCEPTANCE = []


def record(number, title, ok, elapsed, note=""):
    line = "criterion %d %-40s %s  %.2fs%s" % (number, title, "PASS" if ok else "FAIL", elapsed,
                                             "  (" + note + ")" if note else "")
    ACCEPTANCE.append((number, line))
    print(line)


@pytest.fixture
def acceptance():
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(ACCEPTANCE):
        terminalreporter.write_line(line)
