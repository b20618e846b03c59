import pytest

from ferro import kernels

BACKENDS = [pytest.param(kernels.pure, id="python")]
if kernels.compiled is not None:
    BACKENDS.append(pytest.param(kernels.compiled, id="compiled"))


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
