import pytest
from hypothesis import HealthCheck, settings

from agtcheck import make_params

settings.register_profile(
    "default", deadline=None, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def ctx1():
    return make_params(1)


@pytest.fixture(scope="session")
def ctx2():
    return make_params(2)


@pytest.fixture(scope="session")
def ctx3():
    return make_params(3)


@pytest.fixture(scope="session")
def pt1():
    return make_params(1, "point")


@pytest.fixture(scope="session")
def pt3():
    return make_params(3, "point")



def pytest_terminal_summary(terminalreporter):
    module = __import__("sys").modules.get("test_acceptance")
    lines = getattr(module, "SUMMARY", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
