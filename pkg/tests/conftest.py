import pytest

from corrugated_casimir.model import default_experiment

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def config():
    return default_experiment()


@pytest.fixture
def record_acceptance():
    """Append one PASS/FAIL line per acceptance criterion and assert it."""

    def _record(name: str, ok: bool, detail: str = "") -> None:
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
        assert ok, f"{name}: {detail}"

    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
