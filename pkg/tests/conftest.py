import pytest

from laxcalc.syntax import Flavor

ALL_FLAVORS = list(Flavor)


@pytest.fixture(params=ALL_FLAVORS, ids=lambda f: f.value)
def flavor(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for k in sorted(results):
            terminalreporter.write_line(results[k])
