import pytest

from precohom.algebra import StructurePresentation, regular_bimodule
from precohom.generators import example_dendriform, example_prelie


def lie_2dim():
    return StructurePresentation.build("lie", 2, {"mul": {(0, 1): {0: 1}, (1, 0): {0: -1}}}).mark_validated()


def heisenberg():
    """[e1, e2] = e3, e3 central."""
    return StructurePresentation.build("lie", 3, {"mul": {(0, 1): {2: 1}, (1, 0): {2: -1}}}).mark_validated()


@pytest.fixture(scope="session")
def dend2():
    return example_dendriform(2).mark_validated()


@pytest.fixture(scope="session")
def prelie_p():
    return example_prelie().mark_validated()


@pytest.fixture(scope="session")
def lie2():
    return lie_2dim()


@pytest.fixture(scope="session")
def regular():
    return regular_bimodule


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import LINES
    if LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
