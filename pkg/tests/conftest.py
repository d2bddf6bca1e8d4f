import sys


def pytest_terminal_summary(terminalreporter):
    for name, mod in list(sys.modules.items()):
        if name.endswith("test_acceptance") and getattr(mod, "LINES", None):
            terminalreporter.section("acceptance criteria")
            for line in sorted(mod.LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
                terminalreporter.write_line(line)
