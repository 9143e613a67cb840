"""
Unit tests for conventional and reference-frame-independent teleportation
"""
import dataclasses
import json

import pytest
import numpy as np
import sys
from pathlib import Path

# Add src to path so imports work
sys.path.append(str(Path(__file__).parent.parent / 'src'))

from channel_model import speakable_channel
from config import MISALIGNED_Z3_FIDELITY
from errors import VerificationError
from fixtures import binary_tetrahedral_protocol, s3_hadamard_protocol, z3_protocol
from teleport_sim import (
    build_protocol_spec,
    conventional_teleport,
    dynamical_robustness_run,
    incompatible_run,
    measurement_basis,
    misaligned_conventional,
    no_leakage_experiment,
    observer_fidelity,
    prealigned_run,
    rf_teleport,
    sweep,
    sweep_summary,
)
from ueb_engine import pauli_ueb
from unitary_core import random_state

PERFECT = 1 - 1e-9


@pytest.fixture(scope="module")
def z3_spec():
    return z3_protocol()


@pytest.fixture
def states():
    rng = np.random.default_rng(7)
    return [random_state(2, rng) for _ in range(100)]


def test_measurement_basis_is_orthonormal(z3_spec):
    basis = np.array(measurement_basis(z3_spec.ueb, z3_spec.X))
    assert np.allclose(basis.conj() @ basis.T, np.eye(4))
    with pytest.raises(ValueError):
        measurement_basis(z3_spec.ueb, np.eye(3))


def test_conventional_pauli_teleport(states):
    for psi in states[:10]:
        for i in range(4):
            t = conventional_teleport(psi, pauli_ueb(), np.eye(2), forced_outcome=i)
            assert t.fidelity >= PERFECT
            assert t.probability == pytest.approx(0.25)


def test_z3_protocol_is_frame_independent(z3_spec, states):
    G = z3_spec.rho.group
    for psi in states:
        for g in range(G.order):
            for i in range(4):
                t = rf_teleport(z3_spec, psi, g, forced_outcome=i)
                assert t.fidelity >= PERFECT
                assert t.received == z3_spec.channel.sigma(g, i)


def test_born_rule_outcomes(z3_spec, states):
    outcomes = {rf_teleport(z3_spec, states[0], 1, seed=s).outcome for s in range(40)}
    assert len(outcomes) > 1
    for s in range(10):
        assert rf_teleport(z3_spec, states[1], 2, seed=s).fidelity >= PERFECT


def test_binary_tetrahedral_protocol():
    spec = binary_tetrahedral_protocol()
    G = spec.rho.group
    assert G.order == 24
    rng = np.random.default_rng(3)
    for _ in range(2):
        psi = random_state(2, rng)
        for g in range(G.order):
            for i in range(4):
                assert rf_teleport(spec, psi, g, forced_outcome=i).fidelity >= PERFECT


def test_s3_hadamard_protocol():
    spec = s3_hadamard_protocol()
    rng = np.random.default_rng(5)
    psi = random_state(3, rng)
    for g in range(spec.rho.group.order):
        for i in range(9):
            assert rf_teleport(spec, psi, g, forced_outcome=i).fidelity >= PERFECT


def test_dynamical_robustness(z3_spec, states):
    G = z3_spec.rho.group
    for psi in states[:5]:
        for g_send in range(G.order):
            for g_receive in range(G.order):
                for i in range(4):
                    t = dynamical_robustness_run(z3_spec, psi, g_send, g_receive, forced_outcome=i)
                    assert t.fidelity >= PERFECT
                    settled = rf_teleport(z3_spec, psi, g_receive, forced_outcome=i)
                    assert t.received == settled.received
                    assert np.allclose(t.output_state, settled.output_state)


def test_prealigned_control(z3_spec, states):
    G = z3_spec.rho.group
    e, a = G.identity, G.index_of("a")
    assert all(prealigned_run(z3_spec, psi, a, a, forced_outcome=1).fidelity >= PERFECT for psi in states[:10])
    drifted = [prealigned_run(z3_spec, psi, e, a, forced_outcome=1).fidelity for psi in states[:10]]
    assert min(drifted) < 0.99


def test_conventional_protocol_fails_under_misalignment(z3_spec):
    G = z3_spec.rho.group
    psi = np.array([1, 0], dtype=complex)
    mixed = misaligned_conventional(psi, z3_spec.ueb, z3_spec.X, z3_spec.rho_bob)
    assert mixed["purity"] < 1 - 1e-3
    assert mixed["fidelity"] == pytest.approx(MISALIGNED_Z3_FIDELITY, abs=1e-12)
    aligned = np.zeros(G.order)
    aligned[G.identity] = 1.0
    exact = misaligned_conventional(psi, z3_spec.ueb, z3_spec.X, z3_spec.rho_bob, aligned)
    assert exact["purity"] == pytest.approx(1.0)
    assert exact["fidelity"] == pytest.approx(1.0)


def test_observer_agrees(z3_spec, states):
    G = z3_spec.rho.group
    t = rf_teleport(z3_spec, states[2], 1, forced_outcome=3)
    for h in range(G.order):
        assert observer_fidelity(z3_spec, t, h) >= PERFECT


def test_incompatible_channel_breaks_the_protocol(z3_spec, states):
    G = z3_spec.rho.group
    a = G.index_of("a")
    plain = speakable_channel(G, 4)
    fidelities = [incompatible_run(z3_spec, plain, psi, a, forced_outcome=1).fidelity for psi in states[:10]]
    assert min(fidelities) < 0.99
    with pytest.raises(VerificationError):
        rf_teleport(dataclasses.replace(z3_spec, channel=plain), states[0], a)
    with pytest.raises(VerificationError):
        build_protocol_spec(z3_spec.eueb, channel=plain, X=z3_spec.X, rho_alice=z3_spec.rho, rho_bob=z3_spec.rho)


def test_no_leakage(z3_spec):
    honest = no_leakage_experiment(z3_spec, samples=30000, seed=7)
    assert honest["max_tv"] < 0.02
    forced = no_leakage_experiment(z3_spec, samples=3000, seed=7, forced_outcome=1)
    assert forced["max_tv"] > 0.9


def test_sweep(z3_spec):
    frame = sweep(z3_spec, 3, seed=7)
    assert len(frame) == 3 * 3 * 4
    summary = sweep_summary(frame)
    assert len(summary) == 3
    assert (summary["outcomes"] == 4).all()
    assert summary["min_fidelity"].min() >= PERFECT


def test_transcript_is_json_ready(z3_spec, states):
    t = rf_teleport(z3_spec, states[0], 1, forced_outcome=2)
    record = json.loads(json.dumps(t.to_dict()))
    assert record["outcome"] == 2
    assert record["g"] == z3_spec.rho.group.label(1)
