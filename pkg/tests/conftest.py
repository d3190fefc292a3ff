import pytest

from magnomech.params import TWO_PI, EnvironmentParams, SystemParams

KAPPA_A = TWO_PI * 1.5e6
KAPPA_C = TWO_PI * 3e6


@pytest.fixture
def optimum_params():
    """Reference symmetric system at G_mb = 2pi x 4.5 MHz, G_bc = 2pi x 10 MHz."""
    return SystemParams.symmetric(G_mb=TWO_PI * 4.5e6, G_bc=TWO_PI * 10e6)


@pytest.fixture
def fig3_params():
    return SystemParams.symmetric(G_mb=2.8 * KAPPA_A, G_bc=1.6 * KAPPA_C)


@pytest.fixture
def env():
    return EnvironmentParams(temperature=0.01, squeeze_r=1.0)


_ACCEPTANCE_KEY = pytest.StashKey[list]()


@pytest.fixture
def criterion(request):
    """Record one acceptance line; the test still asserts on ``ok``."""
    lines = request.config.stash.setdefault(_ACCEPTANCE_KEY, [])

    def report(number: int, title: str, ok: bool, detail: str) -> bool:
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d} {title}: {detail}"
        lines.append(line)
        print(line)
        return ok

    return report


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[2])):
            terminalreporter.write_line(line)
