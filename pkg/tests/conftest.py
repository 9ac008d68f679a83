"""Shared oracles and the acceptance summary hook.

The oracles here deliberately avoid the package's own operators: closures
are intersections of closed supersets, topologies are checked axiom by axiom
from raw subset families.
"""

import pytest

from topocard.errors import NotATopology
from topocard.topology import validate


def naive_closure(n, opens, a):
    full = (1 << n) - 1
    result = full
    for o in opens:
        closed = full & ~o
        if a & ~closed == 0:
            result &= closed
    return result


def naive_interior(n, opens, a):
    result = 0
    for o in opens:
        if o & ~a == 0:
            result |= o
    return result


def families_passing_validate(n):
    """Every subset family on n points accepted by validate(), as frozensets."""
    size = 1 << n
    found = set()
    for code in range(1 << size):
        family = [s for s in range(size) if code >> s & 1]
        try:
            validate(n, family)
        except NotATopology:
            continue
        found.add(frozenset(family))
    return found


SIERPINSKI = validate(2, [0, 1, 3])
TWO_BLOCKS = validate(4, [0, 3, 12, 15])


def discrete(n):
    return validate(n, range(1 << n))


def indiscrete(n):
    return validate(n, [0, (1 << n) - 1])


# -- acceptance summary ------------------------------------------------------

_criteria = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        number, title = marker.args
        _criteria.append((number, title, report.outcome, item.name))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, outcome, name in sorted(_criteria):
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{verdict}] criterion {number}: {title} ({name})")
