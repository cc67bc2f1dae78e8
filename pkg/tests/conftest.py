import math

import pytest

from ordgap.dist import make_builtin

LOG2 = math.log(2.0)

IHR_ZOO = [
    "exp:lambda=1,L=0",
    f"truncexp:lambda=1,L=0,M={LOG2!r}",
    "uniform:a=0,b=1",
    "weibull:shape=1.5",
    "weibull:shape=2",
    "weibull:shape=3",
    "gompertz:b=1,c=1",
]


@pytest.fixture(params=IHR_ZOO)
def ihr_dist(request):
    return make_builtin(request.param)


@pytest.fixture
def expo():
    return make_builtin("exp:lambda=1,L=0")


@pytest.fixture
def unif():
    return make_builtin("uniform:a=0,b=1")


@pytest.fixture
def trunc():
    return make_builtin(f"truncexp:lambda=1,L=0,M={LOG2!r}")


# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[num]
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {detail}")
