import warnings

import numpy as np
import pytest
from conftest import tracked

from qudit_dephasing import DegeneracyWarning, DiagonalState, InsufficientHorizonError, ReducedDensity
from qudit_dephasing.dephasing import decay_horizon
from qudit_dephasing.spectral import (
    asymptotic_effective_state,
    branch_concurrence_series,
    detect_kink,
    effective_concurrence_series,
    effective_gap_series,
    purity_series,
    track_spectrum,
)

U_MES_ASY = np.array([np.sqrt(2 / 3), -0.5, -1 / np.sqrt(12)])


def _crossing_trajectory(n=201):
    """Fixed eigenvectors, eigenvalues of branches 1 and 2 cross at the midpoint."""
    rng = np.random.default_rng(7)
    Q, _ = np.linalg.qr(rng.normal(size=(3, 3)))
    t = np.linspace(0.0, 1.0, n)
    out = []
    for s in t:
        lam = np.array([1 - 0.3 * s, 0.3 * s * s, 0.3 * s * (1 - s)])
        out.append(ReducedDensity(float(s), Q @ np.diag(lam) @ Q.T))
    return out, Q


def test_branches_follow_a_crossing():
    traj, Q = _crossing_trajectory()
    with warnings.catch_warnings():
        warnings.simplefilter("error", DegeneracyWarning)
        tk = track_spectrum(traj, DiagonalState(Q[:, 0]))
    # near t=0 the eigenvalue 0.3 t (1 - t) is the larger one, so it is branch 1
    expected = {0: Q[:, 0], 1: Q[:, 2], 2: Q[:, 1]}
    for k, q in expected.items():
        assert np.min(np.abs(tk.eigenvectors[:, :, k].conj() @ q)) > 1 - 1e-9
    t = tk.t_grid
    assert np.allclose(tk.eigenvalues[:, 1], 0.3 * t * (1 - t), atol=1e-12)
    assert np.allclose(tk.eigenvalues[:, 2], 0.3 * t * t, atol=1e-12)


def test_ambiguous_overlap_warns_and_uses_slopes():
    # eigenvectors of the two small branches jump by 45 degrees at step 6
    c = s = 1 / np.sqrt(2)
    rot = np.array([[1, 0, 0], [0, c, -s], [0, s, c]])
    traj = []
    for k in range(12):
        lam = np.array([0.8, 0.15 - 0.01 * k, 0.05 + 0.01 * k])
        lam /= lam.sum()
        B = np.eye(3) if k < 6 else rot
        traj.append(ReducedDensity(0.1 * k, B @ np.diag(lam) @ B.T))
    traj[0] = ReducedDensity(0.0, np.diag([1.0, 0.0, 0.0]))
    with pytest.warns(DegeneracyWarning) as rec:
        tk = track_spectrum(traj, DiagonalState([1.0, 0.0, 0.0]))
    assert any(w.message.index == 6 for w in rec)
    assert 6 in tk.degenerate_steps
    # the slope prediction keeps each eigenvalue on its own straight line
    assert np.all(np.diff(tk.eigenvalues[1:, 1]) < 0)
    assert np.all(np.diff(tk.eigenvalues[1:, 2]) > 0)


def test_track_reconstructs_rho_and_gauge():
    traj, tk = tracked(0.9, (0.3, 0.3))
    for i in (0, 1, 1000, 4000):
        V, w = tk.eigenvectors[i], tk.eigenvalues[i]
        assert np.allclose(V.conj().T @ V, np.eye(3), atol=1e-12)
        assert np.allclose(V @ np.diag(w) @ V.conj().T, traj[i].rho, atol=1e-12)
    ovl = np.einsum("nik,nik->nk", tk.eigenvectors[:-1].conj(), tk.eigenvectors[1:])
    assert np.max(np.abs(ovl.imag)) < 1e-12
    assert np.min(ovl.real) > 0
    assert tk.epsilon[0] == pytest.approx(1.0)


def test_mes_asymptote_long_horizon():
    _, tk = tracked(1.0, (0.3, 0.3), t_max=40 * np.pi, steps=13333)
    assert np.max(np.abs(tk.effective[-1] - U_MES_ASY)) < 1e-6
    asy = asymptotic_effective_state(tk, window=np.pi, decay_time=decay_horizon((0.3, 0.3)))
    assert np.max(np.abs(asy.state.a - U_MES_ASY)) < 1e-6


def test_mes_null_branches_start_symmetric(basis3):
    _, tk = tracked(1.0, (0.3, 0.3))
    start = np.abs(tk.eigenvectors[0, :, 1:])
    assert np.allclose(start[0], 0.0, atol=1e-12)
    assert np.allclose(start[1:], 1 / np.sqrt(2), atol=1e-9)
    C = branch_concurrence_series(tk, basis3)
    assert C.shape == (4001, 3)


def test_purity_and_gap(basis3):
    traj, tk = tracked(0.99, (0.2, 0.2))
    assert np.allclose(purity_series(tk), purity_series(traj), atol=1e-12)
    assert np.all(effective_gap_series(tk) >= 0)


def test_kinks(basis3):
    _, tk = tracked(0.994, (0.3, 0.3))
    k = detect_kink(tk, basis3)
    assert not k.empty
    assert 7.5 * np.pi < k.t_peak < 8.3 * np.pi
    assert detect_kink(tracked(0.997, (0.3, 0.3))[1], basis3).empty
    assert detect_kink(tracked(1.0, (0.0, 0.0))[1], basis3).empty


def test_kink_times_move_later_with_a0(basis3):
    times = [detect_kink(tracked(a, (0.3, 0.3))[1], basis3).t_peak for a in (0.993, 0.994, 0.995, 0.996)]
    assert np.all(np.diff(times) > 0)


def test_concurrence_regimes(basis3):
    C = effective_concurrence_series(tracked(1.0, (0.0, 0.0))[1], basis3)
    assert np.allclose(C, 2 / np.sqrt(3), atol=1e-12)


def test_horizon_errors():
    _, tk = tracked(1.0, (0.3, 0.3))
    with pytest.raises(InsufficientHorizonError):
        asymptotic_effective_state(tk, window=100.0)
    with pytest.raises(InsufficientHorizonError):
        asymptotic_effective_state(tk, window=1.0, decay_time=decay_horizon((0.3, 0.3)))


def test_dimension_mismatch():
    traj, _ = tracked(1.0, (0.3, 0.3))
    with pytest.raises(ValueError):
        track_spectrum(traj[:5], DiagonalState([1.0, 0.0]))
