import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, (ok, detail) in mod.RESULTS.items():
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
