import pytest

from shapewilf.core import Transversal, YoungDiagram

EXAMPLE_SHAPE = (10, 10, 10, 10, 8, 8, 6, 6, 5, 5)
# a two-step Phi run: input, intermediate and final state
PHI_INPUT = (1, 5, 10, 9, 7, 8, 6, 3, 2, 4)
PHI_MIDDLE = (3, 5, 10, 9, 7, 8, 6, 1, 4, 2)
PHI_FINAL = (7, 8, 10, 9, 3, 5, 6, 1, 4, 2)
SMALL_SHAPE = (8, 8, 8, 6, 6, 6, 4, 4)
SMALL_COLS = (8, 4, 7, 2, 5, 6, 1, 3)


def pytest_addoption(parser):
    parser.addoption("--extended", action="store_true", help="run the n = 7 sweeps")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--extended"):
        return
    skip = pytest.mark.skip(reason="extended sweep; pass --extended")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def example_shape():
    return YoungDiagram(EXAMPLE_SHAPE)


@pytest.fixture
def phi_input(example_shape):
    return Transversal(example_shape, PHI_INPUT)


@pytest.fixture
def phi_middle(example_shape):
    return Transversal(example_shape, PHI_MIDDLE)


@pytest.fixture
def phi_final(example_shape):
    return Transversal(example_shape, PHI_FINAL)


@pytest.fixture
def small_example():
    return Transversal(YoungDiagram(SMALL_SHAPE), SMALL_COLS)


# one pass/fail line per acceptance criterion in the terminal summary
_acceptance = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if not name.startswith("test_criterion_"):
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _acceptance[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance):
        outcome = _acceptance[name]
        verdict = {"passed": "PASS", "failed": "FAIL"}.get(outcome, outcome.upper())
        terminalreporter.write_line(f"{verdict:5s} {name}")
