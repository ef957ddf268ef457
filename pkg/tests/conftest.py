"""Pytest wiring: per-criterion pass/fail lines for the acceptance suite."""

acceptance_log: list[tuple[str, bool]] = []


def record_criterion(label: str, passed: bool) -> None:
    acceptance_log.append((label, passed))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not acceptance_log:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for label, passed in acceptance_log:
        terminalreporter.write_line(f"{label}: {'PASS' if passed else 'FAIL'}")
