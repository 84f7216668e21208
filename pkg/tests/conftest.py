import pytest

from dfdomains import ford_domain
from dfdomains.io import fixture_path, load_group

FIXTURES = ["modular.json", "gamma11.json", "g_intersection.json", "ngamma0_11.json"]

CRITERIA = {}


def record(number, ok, detail=""):
    CRITERIA[number] = (bool(ok), detail)
    print(f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}")


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        ok, detail = CRITERIA[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {number}  {detail}")


@pytest.fixture(scope="session")
def groups():
    return {name: load_group(fixture_path(name)) for name in FIXTURES}


@pytest.fixture(scope="session")
def domains(groups):
    return {name: ford_domain(gens) for name, gens in groups.items()}
