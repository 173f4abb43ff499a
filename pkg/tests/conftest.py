import pytest

acceptance_results = {}


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "criterion(num, name): acceptance criterion identity"
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when == "call":
        marker = item.get_closest_marker("criterion")
        if marker:
            acceptance_results[marker.args[0]] = (marker.args[1], report.passed)


def pytest_terminal_summary(terminalreporter):
    if not acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(acceptance_results):
        name, passed = acceptance_results[num]
        verdict = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {num} ({name}): {verdict}")
