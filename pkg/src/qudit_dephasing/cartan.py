"""Cartan-sector algebra of SU(d) in the fundamental representation.

Index convention: basis index 0 is ``T0 = I/sqrt(d)``, indices ``1..d-1`` are
the diagonal generators ``T_q`` with diagonal
``(1, ..., 1, -q, 0, ..., 0) / sqrt(q (q + 1))`` (q leading ones).

Fundamental weights are labelled ``w_1 .. w_d`` (stored 0-based) so that for
d=3 they read ``w_1 = (0, -2/sqrt6)``, ``w_2 = (-1/sqrt2, 1/sqrt6)``,
``w_3 = (1/sqrt2, 1/sqrt6)``; i.e. ``w_i`` collects the generator eigenvalues
on level ``d - i`` (0-based).  Roots are ``alpha_ij = w_i - w_j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations

import numpy as np

from .errors import InvalidDimensionError, InvalidRootError

ATOL = 1e-12


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a)
    a.setflags(write=False)
    return a


def diagonal_generator(q: int, d: int) -> np.ndarray:
    """Diagonal of ``T_q`` (1 <= q <= d-1) as a length-d vector."""
    if not 1 <= q <= d - 1:
        raise InvalidDimensionError(f"generator index {q} outside 1..{d - 1}")
    diag = np.zeros(d)
    diag[:q] = 1.0
    diag[q] = -q
    return diag / np.sqrt(q * (q + 1))


@dataclass(frozen=True)
class RootVector:
    """Root ``alpha_ij = w_i - w_j`` with 1-based weight labels ``i != j``."""

    i: int
    j: int
    components: np.ndarray

    @property
    def positive(self) -> bool:
        return self.i < self.j

    @property
    def unit(self) -> np.ndarray:
        norm = np.linalg.norm(self.components)
        if norm < ATOL:
            raise InvalidRootError("zero root vector")
        return self.components / norm

    def __neg__(self) -> "RootVector":
        return RootVector(self.j, self.i, _frozen(-self.components))


@dataclass(frozen=True, eq=False)
class CartanBasis:
    """Eagerly built, read-only Cartan data for SU(d).

    Attributes
    ----------
    d : int
    T : (d-1, d, d) array of diagonal generators ``T_1 .. T_{d-1}``.
    weights : (d, d-1) array, row ``i-1`` is ``w_i``.
    roots : list of all d(d-1) :class:`RootVector`.
    g : (d, d, d) array ``g[a, b, c] = Tr(T_a T_b T_c)`` with ``T_0 = I/sqrt(d)``.
    G : (d-1, d, d) array, ``G[q-1] = g[q]``.
    """

    d: int
    T: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)
    roots: tuple = field(repr=False)
    g: np.ndarray = field(repr=False)
    G: np.ndarray = field(repr=False)

    @property
    def T_full(self) -> np.ndarray:
        """All d basis matrices ``T_0 .. T_{d-1}`` stacked, shape (d, d, d)."""
        return np.concatenate([np.eye(self.d)[None] / np.sqrt(self.d), self.T])

    @property
    def diagonals(self) -> np.ndarray:
        """(d, d) array: row a is the diagonal of ``T_a`` (a = 0..d-1)."""
        return np.array([np.diag(m) for m in self.T_full])

    def weight(self, index: int) -> np.ndarray:
        """``w_index`` for a 1-based index."""
        if not 1 <= index <= self.d:
            raise InvalidDimensionError(f"weight index {index} outside 1..{self.d}")
        return self.weights[index - 1]

    def root(self, i: int, j: int) -> RootVector:
        if i == j or not (1 <= i <= self.d and 1 <= j <= self.d):
            raise InvalidRootError(f"no root alpha_{i}{j} for d={self.d}")
        return RootVector(i, j, _frozen(self.weights[i - 1] - self.weights[j - 1]))

    def root_along(self, direction) -> RootVector:
        """The root parallel (either sign) to ``direction``."""
        u = np.asarray(direction, dtype=float)
        u = u / np.linalg.norm(u)
        for r in self.roots:
            if np.allclose(r.unit, u, atol=1e-9):
                return r
        raise InvalidRootError(f"{direction} is not along a root of SU({self.d})")

    def level_of_weight(self, index: int) -> int:
        """0-based matrix level on which the generators take the values ``w_index``."""
        return self.d - index

    def hamiltonian(self, xi) -> np.ndarray:
        """``xi . T`` as a d x d diagonal matrix."""
        xi = np.asarray(xi, dtype=float)
        return np.tensordot(xi, self.T, axes=1)

    def coupling_matrix(self, zeta) -> np.ndarray:
        """``G(zeta) = sum_q zeta_q G_q``."""
        return np.tensordot(np.asarray(zeta, dtype=float), self.G, axes=1)


def build_cartan_basis(d: int) -> CartanBasis:
    if not isinstance(d, (int, np.integer)) or d < 2:
        raise InvalidDimensionError(f"qudit dimension must be an integer >= 2, got {d!r}")
    return _build(int(d))


@lru_cache(maxsize=None)
def _build(d: int) -> CartanBasis:
    T = np.array([np.diag(diagonal_generator(q, d)) for q in range(1, d)])
    diag = np.array([np.diag(t) for t in T])  # (d-1, d)
    weights = diag[:, ::-1].T.copy()
    roots = tuple(
        RootVector(i, j, _frozen(weights[i - 1] - weights[j - 1]))
        for i in range(1, d + 1)
        for j in range(1, d + 1)
        if i != j
    )
    g = structure_tensor_from_diagonals(
        np.vstack([np.full(d, 1 / np.sqrt(d)), diag])
    )
    G = g[1:].copy()
    return CartanBasis(
        d=d,
        T=_frozen(T),
        weights=_frozen(weights),
        roots=roots,
        g=_frozen(g),
        G=_frozen(G),
    )


def structure_tensor_from_diagonals(diagonals: np.ndarray) -> np.ndarray:
    # diagonal matrices: Tr(A B C) = sum_i a_i b_i c_i
    return np.einsum("ai,bi,ci->abc", diagonals, diagonals, diagonals)


def structure_tensor(basis: CartanBasis) -> np.ndarray:
    """``g[a, b, c] = Tr(T_a T_b T_c)``; checked fully symmetric to 1e-12."""
    g = basis.g
    for perm in permutations(range(3)):
        if not np.allclose(g, np.transpose(g, perm), atol=ATOL, rtol=0):
            raise ArithmeticError("structure tensor lost index symmetry")
    return np.array(g)


def coupling_matrices(basis: CartanBasis) -> list[np.ndarray]:
    return [np.array(G) for G in basis.G]


def weyl_reflect(xi, alpha: RootVector | np.ndarray) -> np.ndarray:
    """Reflect ``xi`` in the line orthogonal to ``alpha``."""
    comp = alpha.components if isinstance(alpha, RootVector) else np.asarray(alpha, float)
    norm = np.linalg.norm(comp)
    if norm < ATOL:
        raise InvalidRootError("cannot reflect with a zero root vector")
    a_hat = comp / norm
    xi = np.asarray(xi, dtype=float)
    return xi - 2.0 * np.dot(xi, a_hat) * a_hat


def weyl_map_weights(alpha: RootVector, d: int | None = None) -> list[int]:
    """Permutation of 1-based weight labels induced by reflecting in ``alpha``.

    Returned as ``perm`` with ``perm[k-1]`` the label of the image of ``w_k``.
    """
    d = d if d is not None else len(alpha.components) + 1
    perm = list(range(1, d + 1))
    perm[alpha.i - 1], perm[alpha.j - 1] = alpha.j, alpha.i
    return perm


def level_permutation(alpha: RootVector, d: int) -> np.ndarray:
    """d x d permutation matrix ``W`` with ``W (xi.T) W^T = reflect(xi).T``."""
    lv_i, lv_j = d - alpha.i, d - alpha.j
    order = np.arange(d)
    order[lv_i], order[lv_j] = lv_j, lv_i
    return np.eye(d)[order]


def ladder_operator(basis: CartanBasis, alpha: RootVector) -> np.ndarray:
    """Root vector ``E_alpha``: a single unit entry, ``[T_q, E] = alpha_q E``."""
    E = np.zeros((basis.d, basis.d))
    E[basis.level_of_weight(alpha.i), basis.level_of_weight(alpha.j)] = 1.0
    return E


def sector_reflection(alpha: RootVector, d: int) -> np.ndarray:
    """Orthogonal d x d map on Cartan-sector coordinates: 1 on T0, reflection on q."""
    O = np.eye(d)
    for k in range(d - 1):
        e = np.zeros(d - 1)
        e[k] = 1.0
        O[1:, 1 + k] = weyl_reflect(e, alpha)
    return O
