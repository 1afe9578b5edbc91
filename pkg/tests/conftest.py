import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

_CRITERIA: dict[int, tuple[bool, str, str]] = {}


class _Recorder:
    def __call__(self, number: int, title: str, checks: dict) -> None:
        failed = [name for name, ok in checks.items() if not ok]
        passed = not failed
        _CRITERIA[number] = (passed, title, ", ".join(failed))
        assert passed, f"criterion {number} failed checks: {failed}"


@pytest.fixture
def criterion():
    return _Recorder()


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        passed, title, failed = _CRITERIA[number]
        line = f"{number:2d} {'PASS' if passed else 'FAIL'}  {title}"
        if failed:
            line += f"  [failed: {failed}]"
        terminalreporter.write_line(line)
