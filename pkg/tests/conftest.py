import mpmath
import pytest


@pytest.fixture(scope="session")
def mp():
    mpmath.mp.dps = 50
    return mpmath


def laguerre_by_coefficients(n, alpha, t):
    """sum_j (-1)^j binom(n+alpha, n-j) t^j / j! in 50-digit arithmetic."""
    with mpmath.workdps(50):
        t = mpmath.mpf(t)
        total = mpmath.mpf(0)
        for j in range(n + 1):
            total += (-1) ** j * mpmath.binomial(n + alpha, n - j) * t**j / mpmath.factorial(j)
        return float(total)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
