import os

import pytest
from hypothesis import settings

settings.register_profile("ci", derandomize=True, deadline=None, max_examples=100)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))

ACCEPTANCE: dict[int, tuple[str, str]] = {}


@pytest.fixture
def criterion(request):
    """Record PASS/FAIL of an acceptance criterion for the summary lines."""

    def record(number: int, title: str):
        ACCEPTANCE[number] = ("FAIL", title)
        request.node.user_properties.append(("criterion", number))
        return number

    return record


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        for key, number in item.user_properties:
            if key == "criterion":
                ACCEPTANCE[number] = ("PASS" if rep.passed else "FAIL", ACCEPTANCE[number][1])


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        status, title = ACCEPTANCE[number]
        terminalreporter.write_line(f"ACCEPTANCE {number}: {status} - {title}")
