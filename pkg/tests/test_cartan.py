import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qudit_dephasing import InvalidDimensionError, InvalidRootError, build_cartan_basis, weyl_map_weights, weyl_reflect
from qudit_dephasing.cartan import diagonal_generator, ladder_operator, sector_reflection, structure_tensor

DIMS = [2, 3, 4, 5, 6]


def gell_mann_diagonals():
    # lambda_3 / sqrt(2) and lambda_8 / sqrt(2), written out by hand
    l3 = np.diag([1.0, -1.0, 0.0]) / np.sqrt(2)
    l8 = np.diag([1.0, 1.0, -2.0]) / np.sqrt(3) / np.sqrt(2)
    return l3, l8


def test_su3_generators_match_gell_mann():
    b = build_cartan_basis(3)
    l3, l8 = gell_mann_diagonals()
    assert np.allclose(b.T[0], l3, atol=1e-15)
    assert np.allclose(b.T[1], l8, atol=1e-15)


def test_su3_weights_by_hand():
    b = build_cartan_basis(3)
    s2, s6 = np.sqrt(2), np.sqrt(6)
    expected = {1: (0.0, -2 / s6), 2: (-1 / s2, 1 / s6), 3: (1 / s2, 1 / s6)}
    for i, w in expected.items():
        assert np.allclose(b.weight(i), w, atol=1e-15)


@pytest.mark.parametrize("d", DIMS)
def test_orthonormal_and_traceless(d):
    b = build_cartan_basis(d)
    T = b.T_full
    gram = np.einsum("aij,bji->ab", T, T)
    assert np.max(np.abs(gram - np.eye(d))) < 1e-12
    assert np.max(np.abs(np.trace(b.T, axis1=1, axis2=2))) < 1e-12


@pytest.mark.parametrize("d", DIMS)
def test_weight_relations(d):
    b = build_cartan_basis(d)
    W = b.weights
    assert np.max(np.abs(W.sum(axis=0))) < 1e-12
    assert np.max(np.abs(W @ W.T - (np.eye(d) - 1.0 / d))) < 1e-12


@pytest.mark.parametrize("d", DIMS)
def test_weights_are_generator_eigenvalues(d):
    b = build_cartan_basis(d)
    for i in range(1, d + 1):
        lvl = b.level_of_weight(i)
        assert np.allclose([np.diag(t)[lvl] for t in b.T], b.weight(i), atol=1e-12)


@pytest.mark.parametrize("d", DIMS)
def test_structure_tensor_symmetry(d):
    b = build_cartan_basis(d)
    g = structure_tensor(b)
    for p in itertools.permutations(range(3)):
        assert np.max(np.abs(g - g.transpose(p))) < 1e-12
    assert np.allclose(g[0], np.eye(d) / np.sqrt(d), atol=1e-12)
    # brute force from the matrices
    T = b.T_full
    brute = np.einsum("aij,bjk,cki->abc", T, T, T)
    assert np.max(np.abs(g - brute)) < 1e-12


@pytest.mark.parametrize("d", DIMS)
def test_root_count_and_lengths(d):
    b = build_cartan_basis(d)
    assert len(b.roots) == d * (d - 1)
    for r in b.roots:
        assert np.isclose(np.dot(r.components, r.components), 2.0, atol=1e-12)


def test_ladder_operator_shifts_weight():
    b = build_cartan_basis(3)
    alpha = b.root(3, 1)
    E = ladder_operator(b, alpha)
    for q, Tq in enumerate(b.T):
        assert np.allclose(Tq @ E - E @ Tq, alpha.components[q] * E, atol=1e-12)


def test_reference_direction_is_a_root():
    b = build_cartan_basis(3)
    r = b.root_along((0.5, np.sqrt(3) / 2))
    assert {r.i, r.j} == {1, 3}


@pytest.mark.parametrize("d", DIMS)
def test_weyl_permutes_weights(d):
    b = build_cartan_basis(d)
    for alpha in b.roots:
        perm = weyl_map_weights(alpha, d)
        for i in range(1, d + 1):
            assert np.allclose(weyl_reflect(b.weight(i), alpha), b.weight(perm[i - 1]), atol=1e-12)


def test_sector_reflection_intertwines_couplings():
    b = build_cartan_basis(3)
    rng = np.random.default_rng(3)
    for alpha in b.roots:
        O = sector_reflection(alpha, 3)
        for _ in range(5):
            z = rng.uniform(-1, 1, 2)
            assert np.allclose(O @ b.coupling_matrix(z) @ O.T, b.coupling_matrix(weyl_reflect(z, alpha)), atol=1e-12)


@settings(max_examples=60, deadline=None)
@given(
    st.integers(2, 6),
    st.data(),
)
def test_reflection_involution_and_isometry(d, data):
    b = build_cartan_basis(d)
    alpha = b.roots[data.draw(st.integers(0, len(b.roots) - 1))]
    xi = np.array(data.draw(st.lists(st.floats(-5, 5), min_size=d - 1, max_size=d - 1)))
    r = weyl_reflect(xi, alpha)
    assert np.allclose(weyl_reflect(r, alpha), xi, atol=1e-12)
    assert np.isclose(np.linalg.norm(r), np.linalg.norm(xi), atol=1e-12)


def test_errors():
    with pytest.raises(InvalidDimensionError):
        build_cartan_basis(1)
    with pytest.raises(InvalidDimensionError):
        diagonal_generator(3, 3)
    b = build_cartan_basis(3)
    with pytest.raises(InvalidRootError):
        b.root(2, 2)
    with pytest.raises(InvalidRootError):
        b.root_along((1.0, 0.1))
    with pytest.raises(InvalidDimensionError):
        b.weight(4)


def test_basis_is_read_only():
    b = build_cartan_basis(3)
    with pytest.raises(ValueError):
        b.T[0, 0, 0] = 2.0
