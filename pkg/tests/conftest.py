import numpy as np
import pytest

from maskqsim import kernels
from maskqsim.state import StateVector


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def probe():
    """Run a kernel on a state of distinct amplitudes; return the indices it changed."""

    def run(apply, n, *args):
        s = StateVector(np.arange(1, (1 << n) + 1, dtype=np.complex128))
        before = s.data.copy()
        apply(s, *args)
        return set(np.flatnonzero(s.data != before).tolist())

    return run


@pytest.fixture
def force_parallel():
    """Send every kernel through the thread pool, restoring settings afterwards."""
    threads, cutoff = kernels.get_num_threads(), kernels.get_parallel_cutoff()
    kernels.set_parallel_cutoff(0)
    yield
    kernels.set_num_threads(threads)
    kernels.set_parallel_cutoff(cutoff)


_ACCEPTANCE = []


@pytest.fixture
def acceptance():
    def record(number, name, ok, detail):
        _ACCEPTANCE.append((number, name, ok, detail))

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, name, ok, detail in sorted(_ACCEPTANCE):
        terminalreporter.write_line(
            f"[{'PASS' if ok else 'FAIL'}] {number}. {name}: {detail}"
        )
