import pytest

from fingroups.group import Permutation, from_permutation_generators, symmetric

_ACCEPTANCE: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n, title = mark.args
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        _ACCEPTANCE[n] = (title, "PASS" if rep.outcome == "passed" else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        title, verdict = _ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d} {verdict}  {title}")


@pytest.fixture(scope="session")
def s3_perm():
    """The order-6 table built from (0 1) and (0 1 2)."""
    return from_permutation_generators(3, [Permutation.parse(3, "(0 1)"),
                                           Permutation.parse(3, "(0 1 2)")])


@pytest.fixture
def s3():
    return symmetric(3)
