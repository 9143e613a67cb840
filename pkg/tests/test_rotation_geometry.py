"""
Unit and property tests for rotations, the SO(3) ball and the SU(2) lift
"""
import math
import pytest
import numpy as np
import sys
from pathlib import Path

# Add src to path so imports work
sys.path.append(str(Path(__file__).parent.parent / 'src'))

from rotation_geometry import (
    IDENTITY,
    BallPoint,
    Rotation,
    are_orthogonal,
    ball_distance,
    ballpoints_frame,
    composite_angle,
    compose,
    conjugate,
    from_matrix,
    orthogonal_angle_for_axis,
    orthogonal_partner_on_axis,
    q_map,
    random_rotation,
    rotate_ballpoint,
    rotation,
    same_rotation,
    su2_lift,
)


@pytest.fixture
def rng():
    return np.random.default_rng(11)


def test_full_turn_is_identity():
    assert rotation(2 * math.pi, (0, 0, 1)) == IDENTITY
    assert rotation(0.0, (0, 0, 0)) == IDENTITY


def test_negative_angle_flips_axis():
    assert same_rotation(rotation(-1.0, (1, 2, 3)), rotation(1.0, (-1, -2, -3)))


def test_pi_rotation_axis_is_canonical():
    r = rotation(math.pi, (0, -1, 0))
    assert r.axis[1] > 0
    assert same_rotation(r, rotation(math.pi, (0, 1, 0)))


def test_rejects_bad_axis():
    with pytest.raises(ValueError):
        Rotation((1.0, 1.0, 0.0), 0.5)
    with pytest.raises(ValueError):
        rotation(1.0, (0, 0, 0))


def test_compose_matches_matrix_product(rng):
    """compose(r1, r2) is r2 after r1"""
    for _ in range(500):
        r1, r2 = random_rotation(rng), random_rotation(rng)
        assert np.allclose(compose(r1, r2).matrix(), r2.matrix() @ r1.matrix(), atol=1e-9)


def test_composite_angle_matches_quaternion_composition(rng):
    for _ in range(10_000):
        r1, r2 = random_rotation(rng), random_rotation(rng)
        direct = compose(r1, r2.inverse()).angle
        assert abs(composite_angle(r1, r2) - direct) < 1e-6


def test_matrix_roundtrip(rng):
    for _ in range(100):
        r = random_rotation(rng)
        assert same_rotation(from_matrix(r.matrix()), r, 1e-9)


def test_q_map_inverts_lift(rng):
    for _ in range(200):
        r = random_rotation(rng)
        phase = np.exp(1j * rng.uniform(0, 2 * math.pi))
        assert same_rotation(q_map(su2_lift(r, phase)), r, 1e-9)


def test_q_map_is_a_homomorphism(rng):
    """q(UV) = q(U) after q(V)"""
    for _ in range(200):
        r1, r2 = random_rotation(rng), random_rotation(rng)
        U, V = su2_lift(r1), su2_lift(r2)
        assert same_rotation(q_map(U @ V), compose(r2, r1), 1e-9)


def test_lift_is_special_unitary(rng):
    for _ in range(50):
        U = su2_lift(random_rotation(rng))
        assert np.allclose(U.conj().T @ U, np.eye(2))
        assert abs(np.linalg.det(U) - 1) < 1e-12


def test_orthogonal_pairs():
    x_flip = rotation(math.pi, (1, 0, 0))
    assert are_orthogonal(x_flip, rotation(math.pi, (0, 1, 0)))
    assert are_orthogonal(x_flip, IDENTITY)
    assert not are_orthogonal(x_flip, rotation(math.pi / 2, (1, 0, 0)))


def test_partner_on_axis_is_orthogonal(rng):
    for _ in range(100):
        r = random_rotation(rng)
        assert are_orthogonal(r, orthogonal_partner_on_axis(r), 1e-7)


def test_orthogonal_angle_for_axis(rng):
    assert abs(orthogonal_angle_for_axis(rotation(math.pi / 2, (0, 0, 1)), (1, 0, 0)) - math.pi) < 1e-12
    for _ in range(500):
        r = random_rotation(rng)
        axis = rng.normal(size=3)
        t = orthogonal_angle_for_axis(r, axis)
        if t is not None:
            assert are_orthogonal(r, rotation(t, axis), 1e-7)


def test_orthogonal_partner_axis_must_be_obtuse(rng):
    """A non-pi rotation has no orthogonal partner about an axis at an acute angle to its own"""
    for _ in range(200):
        r = rotation(rng.uniform(0.1, 3.0), rng.normal(size=3))
        axis = r.axis_vector + 0.3 * rng.normal(size=3)
        if np.dot(axis, r.axis_vector) > 1e-3:
            assert orthogonal_angle_for_axis(r, axis) is None


def test_orthogonal_pairs_have_obtuse_axes(rng):
    found = 0
    while found < 10_000:
        r1 = rotation(rng.uniform(0.05, math.pi - 0.05), rng.normal(size=3))
        axis = rng.normal(size=3)
        axis /= np.linalg.norm(axis)
        if abs(np.dot(axis, r1.axis_vector)) < 1e-4:
            continue
        if np.dot(axis, r1.axis_vector) > 0:
            axis = -axis
        t = orthogonal_angle_for_axis(r1, axis)
        r2 = rotation(t, axis)
        assert are_orthogonal(r1, r2, 1e-7)
        assert np.dot(r1.axis_vector, r2.axis_vector) <= 1e-9
        found += 1


def test_right_angled_axes_force_a_half_turn(rng):
    for _ in range(200):
        r1 = rotation(rng.uniform(0.01, math.pi - 0.01), rng.normal(size=3))
        axis = np.cross(r1.axis_vector, rng.normal(size=3))
        t = orthogonal_angle_for_axis(r1, axis)
        assert abs(t - math.pi) < 1e-9
        for angle in (0.5, 1.5, 2.5):
            assert not are_orthogonal(r1, rotation(angle, axis), 1e-7)


def test_antipodal_boundary_points_coincide():
    assert BallPoint((math.pi, 0, 0)) == BallPoint((-math.pi, 0, 0))
    assert ball_distance(rotation(math.pi, (0, 0, 1)), rotation(-math.pi, (0, 0, 1))) < 1e-12


def test_ball_rejects_points_outside():
    with pytest.raises(ValueError):
        BallPoint((4.0, 0, 0))


def test_conjugation_moves_ball_rigidly(rng):
    for _ in range(100):
        g, r = random_rotation(rng), random_rotation(rng)
        assert rotate_ballpoint(g, BallPoint.of(r)) == BallPoint.of(conjugate(g, r))


def test_rotation_json_roundtrip(rng):
    r = random_rotation(rng)
    assert same_rotation(Rotation.from_dict(r.to_dict()), r)


def test_ballpoints_frame():
    frame = ballpoints_frame([IDENTITY, rotation(math.pi, (1, 0, 0))], ["e", "x"])
    assert list(frame.columns) == ["label", "x", "y", "z", "angle"]
    assert frame.loc[1, "x"] == pytest.approx(math.pi)
