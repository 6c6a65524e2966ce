import math
from collections import OrderedDict

import numpy as np
import pytest

from circrobust.io import ingest

# criterion number -> {"title", "outcomes": [...], "details": [...]}
_CRITERIA: "OrderedDict[int, dict]" = OrderedDict()


def _entry(number, title=""):
    e = _CRITERIA.setdefault(number, {"title": title, "outcomes": [], "details": []})
    if title and not e["title"]:
        e["title"] = title
    return e


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            _entry(*m.args)


def pytest_runtest_makereport(item, call):
    m = item.get_closest_marker("criterion")
    if m is None:
        return
    e = _entry(*m.args)
    if call.when == "call":
        e["outcomes"].append("passed" if call.excinfo is None else "failed")
    elif call.when == "setup" and call.excinfo is not None:
        skipped = call.excinfo.errisinstance(pytest.skip.Exception)
        e["outcomes"].append("skipped" if skipped else "failed")


@pytest.fixture
def measured(request):
    """Record a measured value next to its tolerance for the criterion summary."""
    m = request.node.get_closest_marker("criterion")

    def record(label, value, target):
        if m is not None:
            _entry(*m.args)["details"].append(f"{label} = {value} (target {target})")

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        e = _CRITERIA[number]
        outs = e["outcomes"]
        if not outs:
            status = "NOT RUN"
        elif all(o == "passed" for o in outs):
            status = "PASS"
        elif "failed" in outs:
            status = "FAIL"
        else:
            status = "SKIP"
        tr.write_line(f"criterion {number:>2} {status:<7} {e['title']}")
        for d in e["details"]:
            tr.write_line(f"              {d}")


@pytest.fixture(scope="session")
def frogs():
    return ingest("frogs").angles


@pytest.fixture(scope="session")
def seastars():
    return ingest("seastars").angles


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def wrap_pi(x):
    """Reference wrap to [−π, π) used by test oracles."""
    return (np.asarray(x, dtype=float) + math.pi) % (2 * math.pi) - math.pi
