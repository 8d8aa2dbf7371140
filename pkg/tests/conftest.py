def pytest_runtest_logreport(report):
    # one visible pass/fail line per acceptance criterion, outside capture
    if report.when == "call" and "test_acceptance" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        print(f"\n{name}: {'PASS' if report.passed else 'FAIL'}", flush=True)
