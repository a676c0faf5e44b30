import pytest
from hypothesis import HealthCheck, settings

from siegelfj import _backend, _pykernels

_ACCEPTANCE = {}

# the ``kernels`` fixture only selects a module, so reusing it across examples is safe
settings.register_profile("default", suppress_health_check=[HealthCheck.function_scoped_fixture])
settings.load_profile("default")

BACKENDS = [pytest.param(_pykernels, id="python")]
if _backend.compiled_available():
    from siegelfj import _ckernels

    BACKENDS.append(pytest.param(_ckernels, id="cython"))


@pytest.fixture(params=BACKENDS)
def kernels(request):
    return request.param


class _Criterion:
    def __init__(self, number, title):
        self.number = number
        self.title = title

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        passed = exc_type is None
        _ACCEPTANCE[self.number] = (self.title, passed)
        print(f"criterion {self.number}: {'PASS' if passed else 'FAIL'}  {self.title}")
        return False


@pytest.fixture
def criterion():
    """Context manager recording the outcome of one acceptance criterion."""
    return _Criterion


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, passed = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {title}")
