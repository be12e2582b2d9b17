import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "repo", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("repo")

_acceptance = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    props = dict(report.user_properties)
    if "criterion" in props:
        _acceptance[props["criterion"]] = (props.get("label", ""), report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_acceptance):
        label, outcome = _acceptance[k]
        mark = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {k:>2}: {mark}  {label}")


@pytest.fixture
def criterion(record_property):
    """Tag a test as acceptance criterion n; the summary prints one line each."""

    def tag(n, label):
        record_property("criterion", n)
        record_property("label", label)

    return tag
