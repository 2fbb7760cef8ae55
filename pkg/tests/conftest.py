import pytest

import tarifflab

VIETNAM_FIXTURE = [
    ("Vietnam", 25.0, 46.0),
    ("Brazil", 35.0, 10.0),
    ("Colombia", 20.0, 15.0),
    ("Indonesia", 8.0, 32.0),
    ("India", 7.0, 26.0),
    ("Ethiopia", 5.0, 20.0),
]


@pytest.fixture
def vietnam_scenario():
    return tarifflab.TariffScenario(
        tuple(tarifflab.Origin(n, s, t) for n, s, t in VIETNAM_FIXTURE),
        "Vietnam",
        tarifflab.ElasticityParams(1.5, 0.75),
    )


@pytest.fixture
def sample_csv():
    return tarifflab.sample_path("sample_countries.csv")


@pytest.fixture
def scenario_json():
    return tarifflab.sample_path("coffee_scenario.json")


_acceptance = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
