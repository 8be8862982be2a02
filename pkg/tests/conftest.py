import numpy as np
import pytest

from qudit_dephasing import DiagonalState, build_cartan_basis, closed_trajectory, track_spectrum

T12 = 12 * np.pi
STEPS = 4000

_REPORT = []


def record(line: str) -> None:
    """Queue a line for the terminal summary (acceptance criteria)."""
    _REPORT.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if _REPORT:
        terminalreporter.section("acceptance criteria")
        for line in _REPORT:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def basis3():
    return build_cartan_basis(3)


@pytest.fixture(scope="session")
def grid12():
    return np.linspace(0.0, T12, STEPS + 1)


_TRACKS = {}


def tracked(a0, zeta, t_max=T12, steps=STEPS):
    """Cached closed-form trajectory + spectral track for d=3."""
    key = (a0, tuple(zeta), t_max, steps)
    if key not in _TRACKS:
        s = DiagonalState.from_a0(a0) if a0 < 1 else DiagonalState.mes(3)
        t = np.linspace(0.0, t_max, steps + 1)
        traj = closed_trajectory(s, zeta, t)
        _TRACKS[key] = (traj, track_spectrum(traj, s))
    return _TRACKS[key]
