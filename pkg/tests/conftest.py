import pytest

_CRITERIA = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(cid, text): acceptance criterion checked by this test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.failed):
        cid, text = marker.args
        _CRITERIA.append((cid, text, report.passed, report.duration))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for cid, text, passed, duration in _CRITERIA:
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] {cid:<5} {text} ({duration:.2f}s)")
