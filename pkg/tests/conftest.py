import pytest

_OUTCOMES: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is None:
        return
    if rep.when != "call" and not (rep.failed or rep.skipped):
        return
    n, title = m.args
    entry = _OUTCOMES.setdefault(n, {"title": title, "status": [], "details": []})
    entry["status"].append("skipped" if rep.skipped else ("failed" if rep.failed else "passed"))
    entry["details"].extend(v for k, v in item.user_properties if k == "detail")


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_OUTCOMES):
        e = _OUTCOMES[n]
        if "failed" in e["status"]:
            verdict = "FAIL"
        elif all(s == "skipped" for s in e["status"]):
            verdict = "SKIP"
        else:
            verdict = "PASS"
        terminalreporter.write_line(f"criterion {n} {verdict}: {e['title']}")
        for d in e["details"]:
            terminalreporter.write_line(f"    {d}")
