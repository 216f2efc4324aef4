import os
import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

_results = {}


@pytest.fixture(scope="session", autouse=True)
def _cache_dir(tmp_path_factory):
    # keep the census cache out of the user's home during tests
    if "QUANDLE_CACHE_DIR" not in os.environ:
        os.environ["QUANDLE_CACHE_DIR"] = str(tmp_path_factory.mktemp("census-cache"))
    yield


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    key = (mark.args[0], mark.args[1])
    if rep.when == "call" or rep.failed or rep.skipped:
        ok = rep.passed if rep.when == "call" else False
        _results[key] = _results.get(key, True) and ok


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for (n, title), ok in sorted(_results.items()):
        terminalreporter.write_line(f"criterion {n} {'PASS' if ok else 'FAIL'}: {title}")

