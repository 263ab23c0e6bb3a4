import pytest

# criterion number -> list of (part, ok, detail)
_CRITERIA: dict[int, list] = {}


@pytest.fixture
def criterion():
    def record(number: int, part: str, ok: bool, detail: str = ""):
        _CRITERIA.setdefault(number, []).append((part, bool(ok), detail))
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        parts = _CRITERIA[number]
        ok = all(p[1] for p in parts)
        detail = "; ".join(f"{name} {'ok' if good else 'FAILED'}{f' ({d})' if d else ''}" for name, good, d in parts)
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
