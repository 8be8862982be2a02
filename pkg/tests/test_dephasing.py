import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

from qudit_dephasing import (
    CouplingSpec,
    DiagonalState,
    NumericalContractError,
    StepSizeError,
    build_cartan_basis,
    build_R_matrix,
    closed_trajectory,
    evolve_closed_su2,
    evolve_closed_su3,
    evolve_ode,
)
from qudit_dephasing.dephasing import (
    SU3_R,
    R_from_zeta,
    ReducedDensity,
    decay_horizon,
    decay_rates,
    double_commutator_rhs,
    interaction_to_schrodinger,
    liouvillian,
    sector_unitary,
)


def test_zeta_and_gamma_couplings_agree():
    z = (0.3, -0.2)
    assert np.allclose(build_R_matrix(CouplingSpec.from_zeta(z)), R_from_zeta(z), atol=1e-15)
    assert np.allclose(CouplingSpec.from_zeta(z).zeta, z)
    assert CouplingSpec((0.1, 0.2), (0.0, 0.2)).zeta is None


def test_su3_diagonalizer():
    b = build_cartan_basis(3)
    for q in range(2):
        D = SU3_R.T @ b.G[q] @ SU3_R
        assert np.max(np.abs(D - np.diag(np.diag(D)))) < 1e-14


def test_liouvillian_against_expm():
    """RK4 and closed form against an independent matrix exponential."""
    b = build_cartan_basis(3)
    s = DiagonalState.from_a0(0.9)
    R = R_from_zeta((0.3, 0.3))
    L = liouvillian(R, b)
    t = np.linspace(0, 4 * np.pi, 201)
    ode = evolve_ode(s, R, b, t)
    for k in (50, 200):
        exact = (scipy.linalg.expm(L * t[k]) @ s.density().reshape(-1)).reshape(3, 3)
        assert np.max(np.abs(ode[k].rho - exact)) < 1e-10
        assert np.max(np.abs(evolve_closed_su3(s, (0.3, 0.3), t[k]).rho - exact)) < 1e-12


def test_rhs_is_double_commutator():
    b = build_cartan_basis(3)
    rng = np.random.default_rng(0)
    R = R_from_zeta(rng.normal(size=2))
    X = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    brute = np.zeros((3, 3), complex)
    for q in range(2):
        for p in range(2):
            Gq, Gp = b.G[q], b.G[p]
            inner = Gp @ X - X @ Gp
            brute -= R[q, p] * (Gq @ inner - inner @ Gq)
    assert np.allclose(double_commutator_rhs(X, R, b), brute, atol=1e-13)
    assert np.allclose((liouvillian(R, b) @ X.reshape(-1)).reshape(3, 3), brute, atol=1e-13)


@pytest.mark.parametrize("R11", [0.0, 0.1, 0.5])
def test_su2_closed_vs_ode(R11):
    b = build_cartan_basis(2)
    s = DiagonalState([0.8, 0.6])
    t = np.linspace(0, 12 * np.pi, 1001)
    ode = evolve_ode(s, np.array([[R11]]), b, t)
    worst = max(np.max(np.abs(o.rho - evolve_closed_su2(s, R11, o.t).rho)) for o in ode)
    assert worst < 1e-8


def test_sigma_diagonal_constant():
    s = DiagonalState([0.6, 0.0, 0.8])
    t = np.linspace(0, 12 * np.pi, 400)
    traj = closed_trajectory(s, (0.2, -0.4), t)
    d0 = np.diag(SU3_R.T @ traj[0].rho @ SU3_R)
    assert max(np.max(np.abs(np.diag(SU3_R.T @ r.rho @ SU3_R) - d0)) for r in traj) < 1e-12


def test_decay_rates():
    A, B, C = decay_rates((0.3, 0.3))
    assert np.isclose(A, (0.3 - np.sqrt(3) * 0.3) ** 2)
    assert np.isclose(B, (0.3 + np.sqrt(3) * 0.3) ** 2)
    assert np.isclose(C, 0.36)
    assert decay_rates((0.3, 0.3)) == pytest.approx(decay_rates((-0.3, -0.3)))
    assert decay_horizon((0, 0)) == np.inf


def test_zero_coupling_is_frozen():
    s = DiagonalState.from_a0(0.95)
    traj = closed_trajectory(s, (0.0, 0.0), np.linspace(0, 10, 11))
    assert all(np.allclose(r.rho, s.density()) for r in traj)


def test_step_size_error():
    b = build_cartan_basis(3)
    with pytest.raises(StepSizeError):
        evolve_ode(DiagonalState.mes(3), R_from_zeta((30.0, 30.0)), b, np.linspace(0, 1, 11))


def test_contract_check():
    with pytest.raises(NumericalContractError):
        ReducedDensity(0.0, np.diag([1.2, -0.2, 0.0])).check()
    with pytest.raises(NumericalContractError):
        ReducedDensity(0.0, np.diag([0.5, 0.4, 0.0])).check()


def test_liouvillian_rejects_bad_R():
    b = build_cartan_basis(3)
    with pytest.raises(ValueError):
        liouvillian(np.array([[1.0, 0.0], [0.0, -1.0]]), b)
    with pytest.raises(ValueError):
        liouvillian(np.array([[1.0, 0.5], [0.0, 1.0]]), b)


def test_sector_unitary_and_picture_change():
    b = build_cartan_basis(3)
    U = np.diag(np.exp(-1j * np.array([0.3, -0.1, -0.2])))
    S = sector_unitary(U, b)
    assert np.allclose(S.conj().T @ S, np.eye(3), atol=1e-12)
    rho = DiagonalState.from_a0(0.9).density()
    out = interaction_to_schrodinger(rho, S)
    assert np.isclose(np.trace(out), 1.0)
    with pytest.raises(ValueError):
        interaction_to_schrodinger(rho, 2 * np.eye(3))


amps = st.lists(st.floats(-1, 1), min_size=3, max_size=3).filter(lambda v: np.linalg.norm(v) > 1e-2)
zetas = st.tuples(st.floats(-0.5, 0.5), st.floats(-0.5, 0.5))


@settings(max_examples=40, deadline=None)
@given(amps, zetas)
def test_ode_conserves_trace_and_positivity(v, z):
    s = DiagonalState(v).normalized()
    t = np.linspace(0, 4 * np.pi, 101)
    traj = evolve_ode(s, R_from_zeta(z), build_cartan_basis(3), t)
    pur = []
    for r in traj:
        assert abs(np.trace(r.rho) - 1) < 1e-10
        w = np.linalg.eigvalsh(r.rho)
        assert w[0] > -1e-9
        pur.append(np.sum(w**2))
    assert np.all(np.diff(pur) <= 1e-12)


@settings(max_examples=40, deadline=None)
@given(amps, zetas, st.floats(0, 40))
def test_sign_flip_symmetry(v, z, t):
    s = DiagonalState(v).normalized()
    r1 = evolve_closed_su3(s, z, t).rho
    r2 = evolve_closed_su3(s, (-z[0], -z[1]), t).rho
    assert np.array_equal(r1, r2)
