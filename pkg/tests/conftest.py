import pytest


@pytest.hookimpl(hookwrapper=True, tryfirst=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    setattr(item, "rep_" + rep.when, rep)


def pytest_terminal_summary(terminalreporter):
    lines = []
    for key in ("passed", "failed"):
        for rep in terminalreporter.stats.get(key, []):
            if rep.when == "call" and "test_criterion_" in rep.nodeid:
                k = rep.nodeid.split("test_criterion_")[1][:2].lstrip("0")
                lines.append((int(k), "%s criterion %s" % ("PASS" if rep.passed else "FAIL", k)))
    if lines:
        terminalreporter.write_sep("-", "acceptance")
        for _, text in sorted(lines):
            terminalreporter.write_line(text)
