import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def direct_dft(x):
    """O(N^2) DFT by explicit summation; independent of numpy.fft."""
    x = np.asarray(x, dtype=np.complex128)
    n = x.size
    k = np.arange(n)
    return np.exp(-2j * np.pi * np.outer(k, k) / n) @ x


def signal_from_bins(n, bins_to_coeffs):
    """Real signal whose DFT holds the given coefficients (and mirrors)."""
    X = np.zeros(n, dtype=np.complex128)
    for k, c in bins_to_coeffs.items():
        X[k] = c
        X[(-k) % n] = np.conj(c)
    return np.fft.ifft(X).real


# One summary line per acceptance criterion, printed at the end of the run.
_ACCEPTANCE = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        detail = getattr(item, "acceptance_detail", "")
        status = "PASS" if rep.passed else "FAIL"
        _ACCEPTANCE.append(f"[{status}] {marker.args[0]}" + (f" -- {detail}" if detail else ""))


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
