import os

from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=500,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


# -- acceptance criteria bookkeeping -------------------------------------------------

import contextlib
import time

import pytest

_RESULTS = pytest.StashKey[dict]()


@pytest.fixture
def criterion(request):
    """Context manager recording PASS/FAIL for one acceptance criterion."""
    results = request.config.stash.setdefault(_RESULTS, {})

    @contextlib.contextmanager
    def record(tag: str, title: str):
        t0 = time.perf_counter()
        try:
            yield
        except BaseException as e:
            results[tag] = ("FAIL", title, time.perf_counter() - t0, f"{type(e).__name__}: {e}")
            raise
        results[tag] = ("PASS", title, time.perf_counter() - t0, "")

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = config.stash.get(_RESULTS, {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for tag in sorted(results, key=lambda t: int(t[2:])):
        verdict, title, secs, why = results[tag]
        line = f"{tag:<5} {verdict}  {title}  ({secs:.1f}s)"
        if why:
            line += f"  -- {why.splitlines()[0][:160]}"
        terminalreporter.write_line(line)
