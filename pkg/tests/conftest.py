import pytest

from rittva.diffalg import DiffRing


@pytest.fixture(scope="session")
def RT():
    return DiffRing(["T"])


@pytest.fixture(scope="session")
def RTU():
    return DiffRing(["T", "U"])


@pytest.fixture(scope="session")
def T(RT):
    return lambda i: RT.var("T", i)


@pytest.fixture(scope="session")
def TU(RTU):
    return (lambda i: RTU.var("T", i)), (lambda j: RTU.var("U", j))


# one summary line per acceptance criterion, filled by test_acceptance.py
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("]")[1].split(".")[0])):
            terminalreporter.write_line(line)
