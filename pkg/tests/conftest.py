import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE = {}


@pytest.fixture
def criterion(request):
    """Call with (number, detail) once the checks of a criterion have run."""
    number = request.node.get_closest_marker("criterion").args[0]
    ACCEPTANCE[number] = ("FAIL", "did not finish")

    def done(detail):
        ACCEPTANCE[number] = ("PASS", detail)

    return done


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        status, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"ACCEPTANCE criterion {number}: {status} {detail}")
