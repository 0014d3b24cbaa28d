import time

import pytest

from agrodiag import fixtures


@pytest.fixture(scope="session")
def fixture_dir(tmp_path_factory):
    """Synthetic input bundle shared by CLI and acceptance tests."""
    directory = tmp_path_factory.mktemp("inputs")
    fixtures.write_synthetic_inputs(directory)
    return directory


@pytest.fixture(scope="session", autouse=True)
def _suite_time_budget():
    """The whole suite must finish within its 60 second budget."""
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    print(f"\nfull suite wall time: {elapsed:.1f}s (budget 60s)")
    assert elapsed < 60.0, f"test suite took {elapsed:.1f}s, budget is 60s"
