import pytest
from hypothesis import settings

# first calls compile kernels, which blows any per-example deadline
settings.register_profile("default", deadline=None, max_examples=200)
settings.load_profile("default")

_criteria: dict[int, list] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    entry = _criteria.setdefault(number, [title, "PASS", []])
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        if report.failed:
            entry[1] = "FAIL"
        elif report.skipped and entry[1] != "FAIL":
            entry[1] = "SKIP"
        for section, text in report.sections:
            if "stdout" in section and text.strip():
                entry[2].extend(text.strip().splitlines())


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_criteria):
        title, status, notes = _criteria[number]
        tr.write_line(f"[{status}] criterion {number}: {title}")
        for note in notes:
            tr.write_line(f"        {note}")

