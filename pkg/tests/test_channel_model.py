"""
Unit tests for unspeakable channels
"""
import pytest
import numpy as np
import sys
from pathlib import Path

# Add src to path so imports work
sys.path.append(str(Path(__file__).parent.parent / 'src'))

from channel_model import (
    FrameConfigSpace,
    arrows_channel,
    channel_from_dict,
    clock_channel,
    compatible_channel_for,
    cube_channel,
    decohered_quantum_channel,
    end_to_end_action,
    leakage_stats,
    max_total_variation,
    quotient_channel,
    reference_system_channel,
    rf_channel,
    speakable_channel,
    stabilizer_class,
    transmit,
    transmit_record,
)
from errors import VerificationError
from group_core import build_group, enumerate_subgroups, regular_gset, trivial_subgroup, whole_group
from rotation_geometry import PAULI_Z
from ueb_engine import OMEGA, example_ueb, verify_equivariant
from unitary_core import matrix_group


@pytest.fixture
def z3_setup():
    """Z3 on a qubit, its equivariant basis and the arrows channel"""
    G, rho = matrix_group([np.diag([1, OMEGA])], name="Z3")
    eueb = verify_equivariant(example_ueb(), rho)
    return G, eueb, arrows_channel(G, G.index_of("a"))


def test_rf_channel_laws():
    for spec in ("Z3", "Z4", "S3", "A4"):
        G = build_group(spec)
        ch = rf_channel(G)
        assert ch.size == G.order
        assert ch.messages.axioms_hold()
        assert ch.messages.is_transitive()
        assert ch.messages.is_free()
        assert np.array_equal(end_to_end_action(ch), ch.messages.action)
        assert stabilizer_class(ch).order == 1


def test_rf_transmission_is_right_translation():
    G = build_group("S3")
    ch = rf_channel(G)
    for g in range(G.order):
        for x in range(G.order):
            assert transmit(ch, x, g) == G.mul(x, G.inv(g))


def test_quotient_channels_obey_coset_action():
    G = build_group("S3")
    base = rf_channel(G)
    for K in enumerate_subgroups(G):
        ch = quotient_channel(base, trivial_subgroup(G), K)
        assert ch.size == G.order // K.order
        assert ch.messages.axioms_hold()
        assert np.array_equal(end_to_end_action(ch), ch.messages.action)
        assert stabilizer_class(ch).order == K.order


def test_quotient_needs_containment():
    G = build_group("S3")
    base = quotient_channel(rf_channel(G), trivial_subgroup(G), whole_group(G))
    order_two = next(H for H in enumerate_subgroups(G) if H.order == 2)
    with pytest.raises(ValueError):
        quotient_channel(rf_channel(G), whole_group(G), order_two)
    assert base.size == 1


def test_arrows_channel(z3_setup):
    G, eueb, arrows = z3_setup
    assert list(arrows.messages.action[G.index_of("a")]) == [0, 2, 3, 1]
    assert arrows.messages.axioms_hold()


def test_compatible_channel_inverts_tau(z3_setup):
    G, eueb, arrows = z3_setup
    ch = compatible_channel_for(eueb.tau)
    assert ch.size == 4
    assert np.array_equal(ch.messages.action, arrows.messages.action)
    for seed in (1, 2, 3):
        assert np.array_equal(end_to_end_action(ch, seed), ch.messages.action)


def test_compatible_channel_needs_right_action(z3_setup):
    G, eueb, arrows = z3_setup
    with pytest.raises(ValueError):
        compatible_channel_for(arrows.messages)


def test_uniform_messages_do_not_leak(z3_setup):
    G, eueb, arrows = z3_setup
    ch = compatible_channel_for(eueb.tau)
    frame = leakage_stats(ch, samples=50000, seed=3)
    assert list(frame.columns) == [G.label(g) for g in range(G.order)]
    assert max_total_variation(frame) < 0.02


def test_biased_messages_leak(z3_setup):
    G, eueb, arrows = z3_setup
    ch = compatible_channel_for(eueb.tau)
    frame = leakage_stats(ch, distribution=[0, 1, 0, 0], samples=2000, seed=3)
    assert max_total_variation(frame) > 0.9
    with pytest.raises(ValueError):
        leakage_stats(ch, distribution=[0.5, 0.5], samples=10)


def test_speakable_channel_ignores_misalignment():
    G = build_group("Z4")
    ch = speakable_channel(G, 3)
    assert all(transmit(ch, m, g) == m for m in range(3) for g in range(G.order))


def test_transmit_record():
    ch = clock_channel(12)
    record = transmit_record(ch, 5, 2, seed=11)
    assert record["sent"] == 5
    assert record["received"] == transmit(ch, 5, 2)
    assert record["seed"] == 11


def test_cube_frame_configurations():
    ch, space = cube_channel()
    G = ch.group
    assert G.order == 24
    g = 5
    assert space.relative_transform(0, space.configurations.act(g, 0)) == g
    assert space.labelling(0) == [space.system.act(h, 0) for h in range(G.order)]


def test_frame_configurations_need_natural_epsilon():
    G = build_group("Z3")
    with pytest.raises(VerificationError):
        FrameConfigSpace(regular_gset(G), regular_gset(G), [0, 0, 0])


def test_reference_system_with_shifted_epsilon():
    G = build_group("A4")
    shift = (G.identity + 1) % G.order
    epsilon = [G.mul(f, shift) for f in range(G.order)]
    space = FrameConfigSpace(regular_gset(G), regular_gset(G), epsilon)
    assert epsilon != list(range(G.order))
    assert space.labelling(0)[G.identity] == epsilon[0]
    ch = reference_system_channel(space)
    assert np.array_equal(ch.messages.action, rf_channel(G).messages.action)
    assert np.array_equal(end_to_end_action(ch), ch.messages.action)
    g = 3
    f_b = space.configurations.act(g, 2)
    assert space.relative_transform(2, f_b) == g
    assert stabilizer_class(ch).order == 1


def test_cube_channel_matches_reference_frame_law():
    ch, _ = cube_channel()
    assert np.array_equal(ch.messages.action, rf_channel(ch.group).messages.action)


def test_decohered_quantum_channel():
    G, rho = matrix_group([PAULI_Z], name="Z2")
    plus_minus = [np.array([1, 1]) / np.sqrt(2), np.array([1, -1]) / np.sqrt(2)]
    ch = decohered_quantum_channel(plus_minus, rho)
    flip = 1 - G.identity
    assert list(ch.messages.action[flip]) == [1, 0]
    assert list(ch.messages.action[G.identity]) == [0, 1]


def test_decohered_channel_needs_ray_permutations():
    G, rho = matrix_group([np.diag([1, OMEGA])], name="Z3")
    plus_minus = [np.array([1, 1]) / np.sqrt(2), np.array([1, -1]) / np.sqrt(2)]
    with pytest.raises(VerificationError):
        decohered_quantum_channel(plus_minus, rho)


def test_channel_json_roundtrip():
    ch = rf_channel(build_group("S3"))
    again = channel_from_dict(ch.to_dict())
    assert np.array_equal(again.messages.action, ch.messages.action)
    assert again.kind == "rf_system"
