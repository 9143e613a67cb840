"""
Unit tests for representations, entangled resources and invariance phases
"""
import pytest
import numpy as np
import sys
from pathlib import Path

# Add src to path so imports work
sys.path.append(str(Path(__file__).parent.parent / 'src'))

from group_core import build_group, linear_characters, natural_gset
from unitary_core import (
    Representation,
    bell_state,
    density_matrix,
    dual_rep,
    fidelity,
    invariance_phase_system,
    invariant_entangled_state,
    is_maximally_entangled,
    is_permutation_matrix,
    is_unitary,
    linear_character_reps,
    matrix_from_dict,
    matrix_group,
    matrix_to_dict,
    one_dim_rep,
    permutation_rep,
    purity,
    random_state,
    random_unitary,
    rep_from_generators,
    state_invariance_holds,
    tensor_rep,
    transpose_in_basis,
    trivial_rep,
    twisted_bell,
)

OMEGA = np.exp(2j * np.pi / 3)


@pytest.fixture
def z3_rep():
    """Z3 acting on a qubit by diag(1, omega)"""
    return matrix_group([np.diag([1, OMEGA])], name="Z3")


def test_matrix_group_closes(z3_rep):
    G, rho = z3_rep
    assert G.order == 3
    assert rho.is_valid()
    assert rho.dim == 2


def test_rep_from_generators_checks_axioms():
    G = build_group("Z3")
    gen = G.index_of((1, 2, 0))
    rho = rep_from_generators(G, {gen: np.diag([1, OMEGA])})
    assert rho.is_valid()
    with pytest.raises(ValueError):
        rep_from_generators(G, {gen: np.diag([1, 1j])})


def test_violations_name_the_element():
    G = build_group("Z3")
    broken = Representation(G, [np.eye(2), np.diag([1, 1j]), np.eye(2)])
    assert broken.violations()


def test_permutation_rep_of_s3():
    G = build_group("S3")
    rho = permutation_rep(natural_gset(G))
    assert rho.is_valid()
    assert all(is_permutation_matrix(M) for M in rho.images)
    assert sorted(np.round(rho.character().real).astype(int)) == [0, 0, 1, 1, 1, 3]


def test_dual_and_tensor(z3_rep):
    G, rho = z3_rep
    assert dual_rep(rho).is_valid()
    pair = tensor_rep(dual_rep(rho), rho)
    assert pair.dim == 4
    assert pair.is_valid()


def test_linear_character_reps_start_trivial():
    reps = linear_character_reps(build_group("Z4"))
    assert len(reps) == 4
    assert all(np.allclose(M, 1) for M in reps[0].images)


def test_bell_state_is_maximally_entangled():
    for n in (2, 3, 4):
        assert np.isclose(np.linalg.norm(bell_state(n)), 1)
        assert is_maximally_entangled(bell_state(n), n)


def test_twisted_bell_needs_unitary():
    with pytest.raises(ValueError):
        twisted_bell(np.array([[1, 1], [0, 1]]))


def test_random_objects_are_normalised():
    rng = np.random.default_rng(3)
    assert is_unitary(random_unitary(3, rng))
    assert np.isclose(np.linalg.norm(random_state(3, rng)), 1)


def test_fidelity_and_purity():
    psi = np.array([1, 0], dtype=complex)
    assert fidelity(psi, psi) == pytest.approx(1)
    assert fidelity(psi, np.array([0, 1])) == pytest.approx(0)
    mixed = np.eye(2) / 2
    assert purity(mixed) == pytest.approx(0.5)
    assert purity(density_matrix(psi)) == pytest.approx(1)
    assert fidelity(psi, mixed) == pytest.approx(0.5)


def test_invariant_state_for_diagonal_z3(z3_rep):
    """Both halves carrying diag(1, omega) force an antidiagonal twist with phase omega"""
    G, rho = z3_rep
    found = invariant_entangled_state(rho, rho)
    assert found is not None
    V, theta = found
    assert is_unitary(V)
    assert abs(V[0, 0]) < 1e-9 and abs(V[1, 1]) < 1e-9
    assert np.isclose(theta[G.index_of("a")], OMEGA)
    assert state_invariance_holds(rho, rho, V, theta, 1e-9)


def test_pauli_x_twist_is_invariant(z3_rep):
    G, rho = z3_rep
    theta = invariance_phase_system(rho, rho, np.array([[0, 1], [1, 0]], dtype=complex))
    assert theta is not None
    assert np.isclose(theta[G.index_of("a")], OMEGA)


def test_non_dual_pair_has_no_invariant_state(z3_rep):
    G, rho = z3_rep
    assert invariant_entangled_state(trivial_rep(G, 2), rho) is None


def test_dual_pair_with_identity_twist():
    G, rho = matrix_group([np.diag([1j, -1j])], name="Z4")
    theta = invariance_phase_system(dual_rep(rho), rho, np.eye(2, dtype=complex))
    assert theta is not None
    assert np.allclose(theta, 1)


def test_matrix_json_roundtrip():
    M = random_unitary(3, np.random.default_rng(5))
    assert np.allclose(matrix_from_dict(matrix_to_dict(M)), M)


def test_transpose_in_basis():
    A = np.array([[1, 2j], [3, 4]])
    assert np.array_equal(transpose_in_basis(A), A.T)


def test_one_dim_rep_accepts_characters_only(z3_rep):
    G, _ = z3_rep
    modulus, characters = linear_characters(G)
    for chi in characters:
        rep = one_dim_rep(G, np.exp(2j * np.pi * chi / modulus))
        assert rep.dim == 1
    with pytest.raises(ValueError):
        one_dim_rep(G, [-1, -1, -1])
