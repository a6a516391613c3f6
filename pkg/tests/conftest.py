from pathlib import Path

import pytest

import irsiot

ROOT = Path(__file__).resolve().parents[1]
CONFIGS = ROOT / "configs"


@pytest.fixture
def canonical():
    return irsiot.parse_config(CONFIGS / "canonical.toml")


@pytest.fixture
def advantage():
    return irsiot.parse_config(CONFIGS / "irs_advantage.toml")


@pytest.fixture
def urban():
    return irsiot.parse_config(CONFIGS / "urban_disc.toml")


_ACCEPTANCE = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(name): exit criterion reported in the terminal summary")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _ACCEPTANCE.append((marker.args[0], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _ACCEPTANCE:
        terminalreporter.line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
