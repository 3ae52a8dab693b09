import os
import re
import sys

from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=500)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


# one summary line per acceptance criterion

_CRITERIA: dict[int, list[str]] = {}
_TITLES: dict[int, str] = {}


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            num, title = mark.args
            _TITLES[num] = title


def _criterion_of(nodeid: str) -> int | None:
    m = re.search(r"::test_criterion_(\d+)", nodeid)
    return int(m.group(1)) if m else None


def pytest_runtest_logreport(report):
    num = _criterion_of(report.nodeid)
    if num is None:
        return
    if report.when == "call" or report.outcome != "passed":
        _CRITERIA.setdefault(num, []).append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _TITLES:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_TITLES):
        outcomes = _CRITERIA.get(num, [])
        if not outcomes:
            status = "NOT RUN"
        elif all(o == "passed" for o in outcomes):
            status = "PASS"
        else:
            status = "FAIL"
        terminalreporter.write_line(f"criterion {num:>2}: {status:<7} {_TITLES[num]}")


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, title): acceptance criterion")
