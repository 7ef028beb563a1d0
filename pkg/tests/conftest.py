import pytest

from twistlift.fixtures import load_bundled
from twistlift.pipeline import Workspace
from twistlift.ternary import TernaryForm

Q1_27 = TernaryForm.parse("4x^2+27y^2+28z^2-4xz")
Q2_27 = TernaryForm.parse("7x^2+16y^2+31z^2+16yz+2xz+4xy")
Q_15 = TernaryForm.parse("4x^2+15y^2+16z^2-4xz")
Q1_75 = TernaryForm.parse("4x^2+75y^2+76z^2-4xz")
Q3_75 = TernaryForm.parse("16x^2+19y^2+79z^2+4xy+16xz+2yz")
Q5_75 = TernaryForm.parse("24x^2+31y^2+39z^2+24xy+12xz+6yz")
FIXTURE_FORMS = [Q1_27, Q2_27, Q_15, Q1_75, Q3_75, Q5_75]


@pytest.fixture(scope="session")
def fx27():
    return load_bundled("27a")


@pytest.fixture(scope="session")
def fx15():
    return load_bundled("15a")


@pytest.fixture(scope="session")
def fx75():
    return load_bundled("75a")


@pytest.fixture(scope="session")
def workspaces(fx27, fx15, fx75):
    return {"27a": Workspace(fx27), "15a": Workspace(fx15), "75a": Workspace(fx75)}


def pytest_terminal_summary(terminalreporter):
    import sys
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(module.RESULTS):
        terminalreporter.write_line(line)
