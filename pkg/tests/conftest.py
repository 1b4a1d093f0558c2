def pytest_configure(config):
    config.addinivalue_line("markers", "slow: runs every acceptance suite end to end")


def pytest_terminal_summary(terminalreporter):
    module = __import__("sys").modules.get("test_acceptance")
    if module and module.RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(module.RESULTS):
            terminalreporter.write_line(module.RESULTS[number])
