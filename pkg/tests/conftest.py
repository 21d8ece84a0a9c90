import pytest

from polystab.verify import run_suites


@pytest.fixture(scope="session")
def suite_results():
    """One full single-threaded suite run shared by the acceptance tests."""
    results = run_suites(seed=0, threads=1)
    return {r.name: r for r in results}
