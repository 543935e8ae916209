_results = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or report.failed:
        if report.failed or name not in _results:
            _results[name] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    from test_acceptance import CRITERIA

    terminalreporter.section("acceptance criteria")
    for number, (test_name, title) in sorted(CRITERIA.items()):
        outcome = _results.get(test_name, "NOT RUN")
        terminalreporter.write_line(f"criterion {number:2d} {outcome:7s} {title}")
