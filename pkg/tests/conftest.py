import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import verdicts  # noqa: E402


def pytest_terminal_summary(terminalreporter):
    if not verdicts.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(verdicts.RESULTS):
        ok, detail = verdicts.RESULTS[k]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {k}: {detail}")
