import pytest

from gridtrace import load_intervals, load_workbook, run_analysis
from gridtrace.fixtures import fig2_intervals_path, fig2_workbook_path


@pytest.fixture(scope="session")
def fig2_workbook():
    return load_workbook(fig2_workbook_path())


@pytest.fixture(scope="session")
def fig2_intervals():
    return load_intervals(fig2_intervals_path())


@pytest.fixture(scope="session")
def fig2_analysis(fig2_workbook, fig2_intervals):
    return run_analysis(fig2_workbook, fig2_intervals)


def pytest_runtest_logreport(report):
    # one visible pass/fail line per acceptance criterion
    if "test_acceptance" in report.nodeid and report.when == "call":
        name = report.nodeid.split("::")[-1]
        outcome = "PASS" if report.passed else "FAIL"
        print(f"\n[ACCEPTANCE] {name}: {outcome}", flush=True)
