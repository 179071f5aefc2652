from collections import OrderedDict


def pytest_terminal_summary(terminalreporter):
    outcome: "OrderedDict[int, list]" = OrderedDict()
    titles = {}
    for key in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(key, []):
            props = dict(getattr(rep, "user_properties", []))
            if "criterion" not in props or rep.when not in ("call", "setup"):
                continue
            if rep.when == "setup" and rep.passed:
                continue
            num = props["criterion"]
            titles[num] = props["title"]
            outcome.setdefault(num, []).append(rep.passed)
    if not outcome:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(outcome):
        status = "PASS" if all(outcome[num]) else "FAIL"
        checks = len(outcome[num])
        terminalreporter.write_line(f"criterion {num}: {status}  {titles[num]} ({checks} checks)")
