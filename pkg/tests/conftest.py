import pytest

# (criterion, passed, detail) rows filled in by test_acceptance
ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


def record(name: str, failures: list[str], detail: str = "") -> None:
    """Log one acceptance criterion and fail the calling test if any check failed."""
    ok = not failures
    ACCEPTANCE_RESULTS.append((name, ok, detail if ok else "; ".join(failures[:5])))
    if not ok:
        pytest.fail(f"{name}: " + "; ".join(failures))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  [{detail}]")
