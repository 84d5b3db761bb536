import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hlpark import _backend  # noqa: E402

BACKENDS = ["python"] + (["cython"] if _backend.compiled_kernels is not None else [])


@pytest.fixture(params=BACKENDS)
def kernels(request):
    return _backend.get_kernels(request.param)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
