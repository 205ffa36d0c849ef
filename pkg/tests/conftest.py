import pytest
from hypothesis import settings

settings.register_profile("repo", deadline=None, max_examples=60, derandomize=True)
settings.load_profile("repo")

_CRITERIA: dict[int, tuple] = {}


def pytest_addoption(parser):
    parser.addoption("--extended", action="store_true", default=False,
                     help="also run the optional long-running criteria")


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, text, budget): numbered acceptance criterion")
    config.addinivalue_line("markers", "extended: runs only with --extended")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--extended"):
        return
    skip = pytest.mark.skip(reason="needs --extended")
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is None:
        return
    n, text, budget = m.args
    if rep.when == "call" or (rep.when == "setup" and rep.skipped):
        verdict = "SKIP" if rep.skipped else ("PASS" if rep.passed else "FAIL")
        _CRITERIA[n] = (text, budget, verdict, rep.duration)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        text, budget, verdict, dur = _CRITERIA[n]
        tr.write_line(f"criterion {n:2d}  {verdict:4s}  {text}  [{dur:.1f} s, budget {budget} s, exact equality]")
