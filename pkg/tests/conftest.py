import io
import time

import pytest

import soundtax
from soundtax.cli import main

_acceptance = {}
_started = time.perf_counter()


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(name): exit criterion, reported in the summary")


def pytest_runtest_logreport(report):
    marker = getattr(report, "acceptance", None)
    if marker is None:
        return
    ok = report.passed if report.when == "call" else not report.failed
    if report.when == "call" or report.failed:
        prev = _acceptance.get(report.nodeid, (marker, True))[1]
        _acceptance[report.nodeid] = (marker, prev and ok)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("acceptance")
    if m is not None:
        rep.acceptance = m.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for _, (name, ok) in sorted(_acceptance.items(), key=lambda kv: kv[1][0]):
        tr.write_line(f"{'PASS' if ok else 'FAIL'}  {name}")
    elapsed = time.perf_counter() - _started
    tr.write_line(f"{'PASS' if elapsed < 60 else 'FAIL'}  AC5  session runtime {elapsed:.1f}s (limit 60s)")


@pytest.fixture(scope="session")
def seed():
    return soundtax.load_seed()


@pytest.fixture(scope="session")
def tax(seed):
    return seed[0]


@pytest.fixture(scope="session")
def cat(seed):
    return seed[1]


@pytest.fixture
def run_cli():
    """Run the CLI in-process; returns (exit code, stdout text)."""

    def run(*argv):
        out = io.StringIO()
        code = main([str(a) for a in argv], out=out)
        return code, out.getvalue()

    return run
