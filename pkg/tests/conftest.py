from __future__ import annotations

_results: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    num, text = mark.args
    if call.when == "call" or (call.when == "setup" and call.excinfo is not None):
        _results[num] = ("FAIL" if call.excinfo is not None else "PASS", text)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_results):
        status, text = _results[num]
        terminalreporter.write_line(f"criterion {num:2d}: {status}  {text}")
