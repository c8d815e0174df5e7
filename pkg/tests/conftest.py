import pytest

from parkfun.oracle import brute_force_set

_ACCEPTANCE = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(cid, title): exit criterion of the build")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker and rep.when == "call":
        cid, title = marker.args
        _ACCEPTANCE.append((cid, title, rep.outcome, rep.duration))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for cid, title, outcome, duration in sorted(_ACCEPTANCE, key=lambda r: int(r[0][2:])):
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict}  {cid}  {title}  ({duration:.1f}s)")


@pytest.fixture(scope="session")
def pf():
    """Brute-force classical populations, keyed by n."""
    return {n: brute_force_set(n, "classical") for n in range(0, 7)}


@pytest.fixture(scope="session")
def ppf():
    return {n: brute_force_set(n, "prime") for n in range(1, 7)}
