"""Pure-dephasing dynamics of the reduced (d x d) Cartan-sector density matrix.

The interaction-picture equation is

    d rho/dt = - sum_{q,p} R_qp [G_q, [G_p, rho]]

with ``R`` the (symmetric, PSD) noise-coefficient matrix.  Dissipative terms
are not modelled.  Two routes are provided and cross-check each other:

* closed forms for d=2 and for d=3 with identical couplings on both qudits;
* a fixed-step classical RK4 integrator valid for any d and any ``R``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .cartan import CartanBasis, build_cartan_basis
from .errors import InvalidDimensionError, NumericalContractError, StepSizeError
from .state import DiagonalState

DEFAULT_DT = 2 * np.pi / 2000
LOCAL_ERROR_TOL = 1e-6

_S2, _S3, _S6 = np.sqrt(2.0), np.sqrt(3.0), np.sqrt(6.0)

# Orthogonal, coupling-independent diagonalizer of G(zeta) for d=3.
SU3_R = np.array(
    [
        [-1 / _S3, 1 / _S3, 1 / _S3],
        [0.0, -1 / _S2, 1 / _S2],
        [_S2 / _S3, 1 / _S6, 1 / _S6],
    ]
)
SU3_R.setflags(write=False)


@dataclass(frozen=True)
class CouplingSpec:
    """Per-qudit coupling tuples and the (constant) bath correlation ``f``."""

    gamma1: tuple
    gamma2: tuple
    f_const: float = 1.0

    @classmethod
    def from_zeta(cls, zeta) -> "CouplingSpec":
        g = tuple(float(z) / np.sqrt(2.0) for z in zeta)
        return cls(g, g, 1.0)

    @property
    def zeta(self):
        """``sqrt(2 f) gamma`` when both qudits couple identically, else ``None``."""
        if not np.allclose(self.gamma1, self.gamma2, atol=0, rtol=0):
            return None
        return tuple(np.sqrt(2.0 * self.f_const) * np.asarray(self.gamma1, float))


def build_R_matrix(c: CouplingSpec) -> np.ndarray:
    if c.f_const < 0:
        raise ValueError(f"bath correlation f must be >= 0, got {c.f_const}")
    g1, g2 = np.asarray(c.gamma1, float), np.asarray(c.gamma2, float)
    if g1.shape != g2.shape or g1.ndim != 1:
        raise InvalidDimensionError("gamma1 and gamma2 must be vectors of equal length")
    s = g1 + g2
    return 0.5 * np.outer(s, s) * c.f_const


def R_from_zeta(zeta) -> np.ndarray:
    z = np.asarray(zeta, dtype=float)
    return np.outer(z, z)


@dataclass(frozen=True, eq=False)
class ReducedDensity:
    t: float
    rho: np.ndarray = field(repr=False)

    def check(self, tol: float = 1e-10, eig_tol: float = 1e-9) -> None:
        """Raise :class:`NumericalContractError` if Hermiticity, trace or spectrum fail."""
        rho = self.rho
        herm = np.max(np.abs(rho - rho.conj().T))
        if herm > tol:
            raise NumericalContractError(f"t={self.t}: non-Hermitian by {herm:.3g}")
        tr = np.trace(rho)
        if abs(tr - 1.0) > tol:
            raise NumericalContractError(f"t={self.t}: trace drift {abs(tr - 1):.3g}")
        w = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))
        if w[0] < -eig_tol or w[-1] > 1 + eig_tol:
            raise NumericalContractError(f"t={self.t}: eigenvalues outside [0, 1]: {w}")


@dataclass(frozen=True)
class DiagonalizerSU3:
    """``G(zeta) = R diag(D(zeta)) R^T`` with ``R`` independent of zeta."""

    R: np.ndarray = field(default_factory=lambda: np.array(SU3_R), repr=False)

    @staticmethod
    def D_eigs(zeta) -> np.ndarray:
        z1, z2 = zeta
        return np.array(
            [
                -np.sqrt(2.0 / 3.0) * z2,
                (-3 * _S2 * z1 + _S6 * z2) / 6.0,
                (3 * _S2 * z1 + _S6 * z2) / 6.0,
            ]
        )


def decay_rates(zeta) -> tuple[float, float, float]:
    """The rates ``A, B, C`` of the sigma coherences (01, 02, 12), each entering as ``exp(-rate t/2)``."""
    z1, z2 = (float(z) for z in zeta)
    return ((z1 - _S3 * z2) ** 2, (z1 + _S3 * z2) ** 2, 4.0 * z1**2)


def decay_horizon(zeta) -> float:
    """Slowest coherence decay time ``max(2/A, 2/B, 2/C)`` over non-zero rates."""
    rates = [r for r in decay_rates(zeta) if r > 0]
    return max(2.0 / r for r in rates) if rates else math.inf


def _as_density(state0) -> np.ndarray:
    if isinstance(state0, DiagonalState):
        state0.require_normalized()
        return state0.density()
    rho = np.asarray(state0, dtype=complex)
    if abs(np.trace(rho) - 1) > 1e-10:
        raise ValueError("initial density matrix must have unit trace")
    return rho


def sigma_damping(zeta, t: float) -> np.ndarray:
    A, B, C = decay_rates(zeta)
    ea, eb, ec = np.exp(-0.5 * t * np.array([A, B, C]))
    return np.array([[1.0, ea, eb], [ea, 1.0, ec], [eb, ec, 1.0]])


def evolve_closed_su3(state0, zeta, t: float) -> ReducedDensity:
    rho0 = _as_density(state0)
    if rho0.shape != (3, 3):
        raise InvalidDimensionError("closed SU(3) solution requires d=3")
    if t < 0:
        raise ValueError("t must be >= 0")
    sigma0 = SU3_R.T @ rho0 @ SU3_R
    rho = SU3_R @ (sigma0 * sigma_damping(zeta, t)) @ SU3_R.T
    return ReducedDensity(float(t), rho)


def sigma_closed_su3(state0, zeta, t: float) -> np.ndarray:
    """``sigma(t) = R^T rho(t) R`` from the closed solution."""
    rho0 = _as_density(state0)
    return (SU3_R.T @ rho0 @ SU3_R) * sigma_damping(zeta, t)


def evolve_closed_su2(state0, R11: float, t: float) -> ReducedDensity:
    """Closed d=2 solution: diagonal and symmetric parts mix/decay at rate ``2 R11``."""
    rho0 = _as_density(state0)
    if rho0.shape != (2, 2):
        raise InvalidDimensionError("closed SU(2) solution requires d=2")
    if R11 < 0:
        raise ValueError("R11 must be >= 0")
    e = np.exp(-2.0 * R11 * t)
    p00, p11 = rho0[0, 0], rho0[1, 1]
    s = rho0[0, 1] + rho0[1, 0]
    delta = rho0[0, 1] - rho0[1, 0]
    rho = np.empty((2, 2), dtype=complex)
    rho[0, 0] = 0.5 * p00 * (1 + e) + 0.5 * p11 * (1 - e)
    rho[1, 1] = 0.5 * p11 * (1 + e) + 0.5 * p00 * (1 - e)
    rho[0, 1] = 0.5 * (s + delta * e)
    rho[1, 0] = 0.5 * (s - delta * e)
    return ReducedDensity(float(t), rho)


def _adjoint(M: np.ndarray) -> np.ndarray:
    # row-major vec: vec(M X - X M) = (M (x) I - I (x) M^T) vec(X)
    n = M.shape[0]
    eye = np.eye(n)
    return np.kron(M, eye) - np.kron(eye, M.T)


def liouvillian(R_matrix, basis: CartanBasis) -> np.ndarray:
    """Superoperator ``L`` with ``vec(d rho/dt) = L vec(rho)``."""
    R = np.asarray(R_matrix, dtype=float)
    n = basis.d - 1
    if R.shape != (n, n):
        raise InvalidDimensionError(f"R must be {n}x{n} for d={basis.d}")
    if np.max(np.abs(R - R.T)) > 1e-12:
        raise ValueError("R matrix must be symmetric")
    if np.linalg.eigvalsh(R)[0] < -1e-12:
        raise ValueError("R matrix must be positive semidefinite")
    ads = [_adjoint(G) for G in basis.G]
    L = np.zeros((basis.d**2, basis.d**2))
    for q in range(n):
        for p in range(n):
            if R[q, p] != 0.0:
                L -= R[q, p] * ads[q] @ ads[p]
    return L


def double_commutator_rhs(rho: np.ndarray, R_matrix, basis: CartanBasis) -> np.ndarray:
    """Right-hand side in matrix form, for reference and tests."""
    out = np.zeros_like(rho, dtype=complex)
    for q, Gq in enumerate(basis.G):
        for p, Gp in enumerate(basis.G):
            inner = Gp @ rho - rho @ Gp
            out -= R_matrix[q][p] * (Gq @ inner - inner @ Gq)
    return out


def rk4_step(f, y, h):
    k1 = f(y)
    k2 = f(y + 0.5 * h * k1)
    k3 = f(y + 0.5 * h * k2)
    k4 = f(y + h * k3)
    return y + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)


def local_error_estimate(L: np.ndarray, h: float) -> float:
    """Bound on the relative one-step RK4 error, ``(h ||L||)^5 / 5!``."""
    return (h * np.linalg.norm(L, 2)) ** 5 / 120.0


def evolve_ode(
    state0,
    R_matrix,
    basis: CartanBasis | None = None,
    t_grid=None,
    dt: float = DEFAULT_DT,
) -> list[ReducedDensity]:
    """Integrate the double-commutator equation with fixed-step RK4.

    Each grid interval is split into equal sub-steps no longer than ``dt``.
    The state is re-symmetrized after every step.
    """
    rho0 = _as_density(state0)
    d = rho0.shape[0]
    basis = basis or build_cartan_basis(d)
    if basis.d != d:
        raise InvalidDimensionError(f"state has d={d}, basis has d={basis.d}")
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.ndim != 1 or t_grid.size == 0 or t_grid[0] != 0.0:
        raise ValueError("t_grid must be a 1-d grid starting at 0")
    if np.any(np.diff(t_grid) <= 0):
        raise ValueError("t_grid must be strictly increasing")

    L = liouvillian(R_matrix, basis)
    err = local_error_estimate(L, dt)
    if err > LOCAL_ERROR_TOL:
        h_ok = dt * (LOCAL_ERROR_TOL / err) ** 0.2
        raise StepSizeError(
            f"step {dt:.3g} gives local error estimate {err:.2e} > {LOCAL_ERROR_TOL:g}; "
            f"use dt <= {h_ok:.3g}"
        )

    def f(y):
        return L @ y

    out = [ReducedDensity(0.0, rho0.copy())]
    y = rho0.reshape(-1).astype(complex)
    for t_prev, t_next in zip(t_grid[:-1], t_grid[1:]):
        span = t_next - t_prev
        n_sub = max(1, math.ceil(span / dt - 1e-9))
        h = span / n_sub
        for _ in range(n_sub):
            y = rk4_step(f, y, h)
            m = y.reshape(d, d)
            y = (0.5 * (m + m.conj().T)).reshape(-1)
        out.append(ReducedDensity(float(t_next), y.reshape(d, d).copy()))
    return out


def closed_trajectory(state0, zeta, t_grid, basis: CartanBasis | None = None) -> list[ReducedDensity]:
    """Closed-form trajectory for d=2 or d=3 with identical couplings ``zeta``."""
    rho0 = _as_density(state0)
    d = rho0.shape[0]
    if d == 3:
        sigma0 = SU3_R.T @ rho0 @ SU3_R
        A, B, C = decay_rates(zeta)
        out = []
        for t in np.asarray(t_grid, float):
            ea, eb, ec = np.exp(-0.5 * t * np.array([A, B, C]))
            damp = np.array([[1.0, ea, eb], [ea, 1.0, ec], [eb, ec, 1.0]])
            out.append(ReducedDensity(float(t), SU3_R @ (sigma0 * damp) @ SU3_R.T))
        return out
    if d == 2:
        R11 = float(zeta[0]) ** 2
        return [evolve_closed_su2(rho0, R11, t) for t in np.asarray(t_grid, float)]
    raise InvalidDimensionError(f"no closed form for d={d}; use evolve_ode")


def sector_unitary(U_local: np.ndarray, basis: CartanBasis) -> np.ndarray:
    """Matrix of ``Psi -> U_local Psi`` on the diagonal-sector coordinates."""
    Ts = basis.T_full
    return np.einsum("aij,jk,bki->ab", Ts, U_local, Ts)


def interaction_to_schrodinger(rho_prime, U_S: np.ndarray):
    """``rho = U_S rho' U_S^dagger``; accepts a :class:`ReducedDensity` or a matrix."""
    U_S = np.asarray(U_S)
    if np.max(np.abs(U_S.conj().T @ U_S - np.eye(U_S.shape[0]))) > 1e-10:
        raise ValueError("U_S is not unitary")
    if isinstance(rho_prime, ReducedDensity):
        return ReducedDensity(rho_prime.t, U_S @ rho_prime.rho @ U_S.conj().T)
    rho_prime = np.asarray(rho_prime)
    return U_S @ rho_prime @ U_S.conj().T
