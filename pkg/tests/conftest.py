import pytest

_results: dict[str, list[str]] = {}
_titles: dict[str, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(key, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    key, title = marker.args
    _titles[key] = title
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _results.setdefault(key, []).append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_results, key=lambda k: (int(k.split()[0]), k)):
        ok = all(o == "passed" for o in _results[key])
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {_titles[key]}")
