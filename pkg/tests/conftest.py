from __future__ import annotations

from pathlib import Path

import pytest

from rootedcluster.grassmannian import load_dataset
from rootedcluster.quiver import IceQuiver
from rootedcluster.seed import initial_seed

DATA_DIR = Path(__file__).resolve().parents[1] / "src" / "rootedcluster" / "data"

_acceptance_results: list[tuple[str, str]] = []


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture(scope="session")
def g37():
    return load_dataset()


@pytest.fixture
def a2():
    return IceQuiver({"1": False, "2": False}, {("1", "2"): 1})


@pytest.fixture
def a3():
    return IceQuiver({"1": False, "2": False, "3": False}, {("1", "2"): 1, ("2", "3"): 1})


@pytest.fixture
def a2_seed(a2):
    return initial_seed(a2)


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        _acceptance_results.append((name, "PASS" if report.passed else "FAIL"))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance_results:
        terminalreporter.write_line(f"{outcome}  {name}")
