import pytest

from persext.exactfield import FieldSpec

FIELDS = [FieldSpec(32003), FieldSpec(2), FieldSpec(None)]
FIELD_IDS = ["p32003", "p2", "q"]


@pytest.fixture(params=FIELDS, ids=FIELD_IDS)
def F(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    reports = [r for key in ("passed", "failed") for r in terminalreporter.stats.get(key, [])
               if r.when == "call" and "test_acceptance.py" in r.nodeid]
    if not reports:
        return
    terminalreporter.section("acceptance criteria")
    for r in sorted(reports, key=lambda r: r.nodeid):
        terminalreporter.write_line(f"{'PASS' if r.passed else 'FAIL'}  {r.nodeid.split('::', 1)[1]}")
