import pytest
from hypothesis import settings

from glfiber.acceptance import CriterionResult

# single-core CI timing is noisy; correctness, not speed, is under test here
settings.register_profile("glfiber", deadline=None)
settings.load_profile("glfiber")

_RESULTS: dict[int, CriterionResult] = {}


@pytest.fixture
def record_criterion():
    def record(res: CriterionResult) -> CriterionResult:
        prev = _RESULTS.get(res.number)
        if prev is None or prev.passed:
            _RESULTS[res.number] = res
        return res

    return record


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_RESULTS):
        terminalreporter.write_line(_RESULTS[k].line())
