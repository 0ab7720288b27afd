import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("repo", derandomize=True, deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")

# acceptance results, printed once at the end of the session
ACCEPTANCE = {}


def record(number, ok, detail=""):
    ACCEPTANCE[number] = (ok, detail)
    print(f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture(scope="session")
def z2():
    from isoper.dehn import catalog_presentation

    return catalog_presentation("z2")


@pytest.fixture(scope="session")
def wide_budget():
    from isoper.dehn import SearchBudget

    return SearchBudget(max_conjugator_length=6, max_intermediate_length=24)


@pytest.fixture(scope="session")
def z2_searcher(z2, wide_budget):
    from isoper.dehn import AreaSearcher

    return AreaSearcher(z2, wide_budget)
