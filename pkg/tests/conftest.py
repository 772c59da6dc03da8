import pytest

from cdlat import constructions as cons
from cdlat.groups import as_group
from cdlat.pcgroup import PcPresentation

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def d4():
    return cons.dihedral(3)


@pytest.fixture(scope="session")
def q8():
    return cons.quaternion()


@pytest.fixture(scope="session")
def s3():
    return cons.symmetric3()


@pytest.fixture(scope="session")
def l1n2():
    return cons.build_l1n(2)


@pytest.fixture(scope="session")
def l2n2():
    return cons.build_l2n(2)


@pytest.fixture(scope="session")
def l1odd3():
    return cons.build_l1odd(3)


@pytest.fixture(scope="session")
def l2odd3():
    return cons.build_l2odd(3)


def group(pres: PcPresentation):
    return as_group(pres)
