import pytest

from ezdcone.algebra import from_monomial_quotient
from ezdcone.cone import EzdContext
from ezdcone.modules import regular, residue_field, restrict_scalars

CRITERIA = {}


@pytest.fixture(scope="session")
def Q():
    return from_monomial_quotient(["x", "y"], ["x^2", "y^2"])


@pytest.fixture(scope="session")
def ctx(Q):
    return EzdContext(Q, "x", "x", cap=8)


@pytest.fixture(scope="session")
def k(Q):
    return residue_field(Q)


@pytest.fixture(scope="session")
def Rmod(ctx):
    """R = Q/(x) as a Q-module."""
    return restrict_scalars(regular(ctx.R), ctx.qR)


@pytest.fixture
def criterion(request):
    """Record the outcome of an acceptance criterion for the summary."""
    name = request.node.name

    def record(ok, detail=""):
        CRITERIA[name] = (bool(ok), detail)
        print(f"{'PASS' if ok else 'FAIL'} {name} {detail}".rstrip())
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(CRITERIA):
        ok, detail = CRITERIA[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} {name} {detail}".rstrip())


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance" in report.nodeid and report.failed:
        name = report.nodeid.split("::")[-1]
        CRITERIA[name] = (False, CRITERIA.get(name, (False, "raised"))[1])
