import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_criteria = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = report.keywords.get("criterion")
    if marker is None or "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    ok = report.passed
    prev = _criteria.get(name)
    _criteria[name] = ok if prev is None else (prev and ok)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_criteria, key=lambda n: int(n.split("_")[1][2:])):
        status = "PASS" if _criteria[name] else "FAIL"
        terminalreporter.write_line(f"{status}  {name}")
