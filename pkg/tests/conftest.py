import pytest

from normsemi import kernel

_VERDICTS = pytest.StashKey[dict]()


@pytest.fixture(autouse=True)
def _reset_threads():
    yield
    kernel.set_threads(None)


@pytest.fixture
def verdict(request):
    """Record and print one PASS/FAIL line per acceptance criterion, then assert it."""
    store = request.config.stash.setdefault(_VERDICTS, {})

    def record(number: int, title: str, ok: bool, detail: str = ""):
        line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}" + (f"  [{detail}]" if detail else "")
        store[number] = line
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    store = config.stash.get(_VERDICTS, {})
    if store:
        terminalreporter.section("acceptance criteria")
        for k in sorted(store):
            terminalreporter.write_line(store[k])
