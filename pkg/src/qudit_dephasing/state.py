"""Two-qudit pure states in the MES + Cartan diagonal sector.

A state is an amplitude vector ``a`` over ``|T_0>, |T_1>, ..., |T_{d-1}>``;
its matrix form is ``Psi = sum_a a_a T_a`` (a diagonal d x d matrix), which
is also the coefficient matrix ``psi_ij`` of the state in the ``|ij>`` basis.

``I_p`` is exposed for ``1 <= p <= d`` only; by Cayley-Hamilton the higher
invariants are polynomials in these.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cartan import CartanBasis
from .errors import InvalidDimensionError, InvalidStateError

NORM_TOL = 1e-10
REAL_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class DiagonalState:
    """Amplitudes ``a_0 .. a_{d-1}`` (stored complex)."""

    a: np.ndarray

    def __post_init__(self):
        a = np.array(self.a, dtype=complex).reshape(-1)
        a.setflags(write=False)
        object.__setattr__(self, "a", a)

    @property
    def d(self) -> int:
        return self.a.size

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.a))

    @property
    def is_real(self) -> bool:
        return bool(np.max(np.abs(self.a.imag), initial=0.0) < REAL_TOL)

    def normalized(self) -> "DiagonalState":
        n = self.norm
        if n == 0:
            raise InvalidStateError("zero state cannot be normalized")
        return DiagonalState(self.a / n)

    def require_normalized(self, tol: float = NORM_TOL) -> None:
        if abs(self.norm - 1.0) > tol:
            raise InvalidStateError(f"state not normalized: |a| = {self.norm:.15g}")

    def density(self) -> np.ndarray:
        return np.outer(self.a, self.a.conj())

    @classmethod
    def mes(cls, d: int) -> "DiagonalState":
        a = np.zeros(d)
        a[0] = 1.0
        return cls(a)

    @classmethod
    def from_a0(cls, a0: float, d: int = 3) -> "DiagonalState":
        """``a_0`` given, the remaining ``d-1`` amplitudes equal and real."""
        if not 0.0 <= a0 <= 1.0:
            raise InvalidStateError(f"a0 must lie in [0, 1], got {a0}")
        rest = np.sqrt((1.0 - a0**2) / (d - 1))
        return cls(np.r_[a0, np.full(d - 1, rest)])

    @classmethod
    def separable(cls, basis: CartanBasis, level: int = 0) -> "DiagonalState":
        """Product state ``|ii>`` with ``i = level`` (0-based), e.g. ``|11>``."""
        return cls(basis.diagonals[:, level])


def to_matrix(state: DiagonalState, basis: CartanBasis) -> np.ndarray:
    if state.d != basis.d:
        raise InvalidDimensionError(f"state has d={state.d}, basis has d={basis.d}")
    return np.diag(basis.diagonals.T @ state.a)


def invariant_Ip(psi: np.ndarray, p: int) -> float:
    """``Tr[(Psi^dagger Psi)^p]``."""
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    m = psi.conj().T @ psi
    return float(np.trace(np.linalg.matrix_power(m, p)).real)


def concurrence(psi: np.ndarray) -> float:
    """I-concurrence ``sqrt(2 (1 - I_2))`` of a normalized state matrix."""
    return float(np.sqrt(max(0.0, 2.0 * (1.0 - invariant_Ip(psi, 2)))))


def max_concurrence(d: int) -> float:
    return float(np.sqrt(2.0 * (d - 1) / d))


def b_coefficients(state: DiagonalState, R_matrix: np.ndarray) -> DiagonalState:
    """Amplitudes in the rotated frame that diagonalizes the SU(3) coupling: ``b = R^T a``."""
    R_matrix = np.asarray(R_matrix, dtype=float)
    if state.d != 3 or R_matrix.shape != (3, 3):
        raise InvalidDimensionError("b coefficients are defined for d=3")
    if np.max(np.abs(R_matrix.T @ R_matrix - np.eye(3))) > 1e-10:
        raise ValueError("R_matrix is not orthogonal")
    return DiagonalState(R_matrix.T @ state.a)
