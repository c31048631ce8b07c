import pytest

from lotkafit import FrequencyDistribution

# Distributions whose marginals match the published full-distribution
# totals: 6891 authors / 22934 works / max 346, and 1325 / 3398 / 48.
CA_COUNTS = {1: 6312, 2: 42, 30: 424, 31: 112, 346: 1}
AUERBACH_COUNTS = {1: 493, 3: 818, 31: 13, 48: 1}

_acceptance_results: dict[str, tuple[str, str]] = {}


@pytest.fixture
def ca_dist() -> FrequencyDistribution:
    return FrequencyDistribution.from_counts(CA_COUNTS, name="chemical_abstracts")


@pytest.fixture
def auerbach_dist() -> FrequencyDistribution:
    return FrequencyDistribution.from_counts(AUERBACH_COUNTS, name="auerbach")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    cid, description = marker.args
    if report.when == "call":
        status = "PASS" if report.passed else ("SKIP" if report.skipped else "FAIL")
        _acceptance_results[cid] = (status, description)
    elif report.when == "setup" and (report.skipped or report.failed):
        _acceptance_results[cid] = ("SKIP" if report.skipped else "FAIL", description)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _acceptance_results:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for cid in sorted(_acceptance_results, key=lambda c: int(c.lstrip("C"))):
        status, description = _acceptance_results[cid]
        terminalreporter.write_line(f"{cid} {status}: {description}")
