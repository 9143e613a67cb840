"""
Unit tests for unitary error bases and their equivariance
"""
import pytest
import numpy as np
import sys
from pathlib import Path

# Add src to path so imports work
sys.path.append(str(Path(__file__).parent.parent / 'src'))

from errors import NoSolutionError, VerificationError
from group_core import build_group, natural_gset
from oeb_catalog import binary_lift, discrete_catalog
from ueb_engine import (
    OMEGA,
    circulant_unitary,
    commutes_with_all_permutations,
    commuting_hadamard,
    example_ueb,
    hadamard_ueb,
    lift_oeb,
    pauli_ueb,
    regauge,
    speakable_only_possible,
    ueb_from_dict,
    verify_equivariant,
    verify_ueb,
)
from unitary_core import matrix_group, permutation_rep, trivial_rep


@pytest.fixture
def z3_rep():
    """Z3 acting on a qubit by diag(1, omega)"""
    G, rho = matrix_group([np.diag([1, OMEGA])], name="Z3")
    return G, rho


def test_pauli_gram():
    ueb = pauli_ueb()
    assert len(ueb) == 4
    assert np.allclose(ueb.gram(), 2 * np.eye(4))


def test_corrupted_basis_is_rejected():
    elements = list(pauli_ueb().elements)
    elements[3] = elements[2]
    with pytest.raises(VerificationError):
        verify_ueb(elements)
    with pytest.raises(VerificationError):
        verify_ueb(elements[:3])
    with pytest.raises(VerificationError):
        verify_ueb([2 * elements[0]] + elements[1:])


def test_z3_example_action(z3_rep):
    G, rho = z3_rep
    eueb = verify_equivariant(example_ueb(), rho)
    assert list(eueb.tau.action[G.index_of("a")]) == [0, 3, 1, 2]
    assert eueb.orbit_type() == (3, 1)
    assert np.allclose(np.abs(eueb.xi), 1)
    assert eueb.phase_equation_residual() < 1e-9
    assert not speakable_only_possible(eueb)


def test_pauli_basis_is_not_z3_equivariant(z3_rep):
    G, rho = z3_rep
    with pytest.raises(VerificationError):
        verify_equivariant(pauli_ueb(), rho)


def test_trivial_rep_is_speakable():
    G = build_group("Z3")
    eueb = verify_equivariant(pauli_ueb(), trivial_rep(G, 2))
    assert speakable_only_possible(eueb)
    assert np.allclose(eueb.xi, 1)


def test_regauge_keeps_tau(z3_rep):
    G, rho = z3_rep
    eueb = verify_equivariant(example_ueb(), rho)
    again = regauge(eueb, [1, 1j, -1, -1j])
    assert np.array_equal(again.tau.action, eueb.tau.action)
    assert again.phase_equation_residual() < 1e-9
    with pytest.raises(ValueError):
        regauge(eueb, [1, 2, 1, 1])


def test_lift_tetrahedral_oeb():
    G, rho = binary_lift("A4")
    oeb = discrete_catalog("A4")[0]
    eueb = lift_oeb(oeb, rho)
    assert eueb.orbit_type() == (4,)
    assert eueb.phase_equation_residual() < 1e-9


def test_lift_rejects_foreign_rotation_group():
    G, rho = binary_lift("A4")
    with pytest.raises(VerificationError):
        lift_oeb(discrete_catalog("D4")[0], rho)


def test_commuting_hadamard():
    for n in (2, 3, 4):
        H = commuting_hadamard(n)
        assert np.allclose(np.abs(H), 1)
        assert np.allclose(H @ H.conj().T, n * np.eye(n))
        assert commutes_with_all_permutations(H)
    with pytest.raises(NoSolutionError):
        commuting_hadamard(5)


def test_circulant_range():
    assert circulant_unitary(5, 0.1) is None
    C = circulant_unitary(5, 0.8)
    assert np.allclose(C @ C.conj().T, np.eye(5))
    with pytest.raises(ValueError):
        circulant_unitary(2, 0.5)


def test_hadamard_ueb_for_symmetric_groups():
    for n in (3, 4):
        G = build_group(f"S{n}")
        rho = permutation_rep(natural_gset(G))
        eueb = hadamard_ueb(rho, commuting_hadamard(n))
        assert len(eueb.ueb) == n * n
        assert eueb.phase_equation_residual() < 1e-9


def test_hadamard_ueb_rejects_non_commuting_h():
    G = build_group("S3")
    rho = permutation_rep(natural_gset(G))
    fourier = np.array([[OMEGA ** (i * j) for j in range(3)] for i in range(3)])
    with pytest.raises(VerificationError):
        hadamard_ueb(rho, fourier)


def test_ueb_json_roundtrip():
    ueb = example_ueb()
    again = ueb_from_dict(ueb.to_dict())
    assert all(np.allclose(a, b) for a, b in zip(ueb.elements, again.elements))
