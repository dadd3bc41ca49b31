import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oracles import trial_division_table  # noqa: E402

ORACLE_LIMIT = 10**6 + 64


def pytest_addoption(parser):
    parser.addoption("--run-long", action="store_true", help="run multi-minute scans")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-long"):
        return
    skip = pytest.mark.skip(reason="long scan; pass --run-long")
    for item in items:
        if "long" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def prime_table():
    """Trial-division primality for 0 .. 10^6 + 64."""
    return trial_division_table(ORACLE_LIMIT)


_ACCEPTANCE = pytest.StashKey[dict]()


@pytest.fixture
def criterion(request):
    """report(number, ok, detail): one summary line per acceptance criterion;
    a criterion split over several tests passes only if every part passes."""
    store = request.config.stash.setdefault(_ACCEPTANCE, {})

    def report(number: int, ok: bool, detail: str):
        prev_ok, details = store.get(number, (True, []))
        store[number] = (prev_ok and ok, details + [("" if ok else "FAILED: ") + detail])
        assert ok, detail

    return report


def pytest_terminal_summary(terminalreporter, config):
    store = config.stash.get(_ACCEPTANCE, {})
    if not store:
        return
    terminalreporter.section("acceptance criteria")
    for number in range(1, 8):
        if number not in store:
            terminalreporter.write_line(f"criterion {number}: NOT RUN  (long scans need --run-long)")
            continue
        ok, details = store[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  ({len(details)} checks)")
        for d in details:
            if d.startswith("FAILED"):
                terminalreporter.write_line(f"    {d}")
