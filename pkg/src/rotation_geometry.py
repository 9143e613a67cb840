"""
Rotation Geometry
Axis-angle rotations of the Bloch sphere, the SO(3)-ball picture,
orthogonality of rotations and the SU(2) -> SO(3) map q
"""

import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from scipy.spatial.transform import Rotation as ScipyRotation
from config import *

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_PAULIS = (PAULI_X, PAULI_Y, PAULI_Z)

Z_AXIS = (0.0, 0.0, 1.0)


@dataclass(frozen=True)
class Rotation:
    """
    r(angle, axis) in canonical form: angle in [0, pi]; the identity carries
    axis z; a pi-rotation has its first nonzero axis coordinate positive.
    Build instances with `rotation()` unless the input is already canonical.
    """

    axis: Tuple[float, float, float]
    angle: float

    def __post_init__(self):
        if abs(np.linalg.norm(self.axis) - 1.0) > UNIT_NORM_TOLERANCE * 10:
            raise ValueError(f"Rotation axis {self.axis} is not a unit vector")
        if not -UNIT_NORM_TOLERANCE <= self.angle <= math.pi + UNIT_NORM_TOLERANCE:
            raise ValueError(f"Rotation angle {self.angle} outside [0, pi]")

    @property
    def axis_vector(self) -> np.ndarray:
        return np.array(self.axis, dtype=float)

    @property
    def is_identity(self) -> bool:
        return self.angle < TOLERANCE

    def ball_point(self) -> np.ndarray:
        return self.angle * self.axis_vector

    def quaternion(self) -> np.ndarray:
        """(w, x, y, z) with w >= 0"""
        half = self.angle / 2
        return np.concatenate([[math.cos(half)], math.sin(half) * self.axis_vector])

    def matrix(self) -> np.ndarray:
        return _to_scipy(self).as_matrix()

    def inverse(self) -> "Rotation":
        return rotation(-self.angle, self.axis)

    def to_dict(self) -> Dict:
        return {"axis": [float(c) for c in self.axis], "angle": float(self.angle)}

    @classmethod
    def from_dict(cls, data: Dict) -> "Rotation":
        return rotation(float(data["angle"]), data["axis"])

    def __repr__(self):
        x, y, z = self.axis
        return f"r({self.angle:.6f}, ({x:.6f}, {y:.6f}, {z:.6f}))"


IDENTITY = Rotation(Z_AXIS, 0.0)


class BallPoint:
    """
    A point of the closed radius-pi ball; antipodal boundary points are the
    same rotation and compare equal
    """

    def __init__(self, coords: Sequence[float]):
        coords = np.asarray(coords, dtype=float)
        if np.linalg.norm(coords) > math.pi + 1e-9:
            raise ValueError(f"Ball point {coords} lies outside the radius-pi ball")
        self.coords = _canonical_boundary(coords)

    @classmethod
    def of(cls, r: Rotation) -> "BallPoint":
        return cls(r.ball_point())

    def to_rotation(self) -> Rotation:
        angle = float(np.linalg.norm(self.coords))
        if angle < UNIT_NORM_TOLERANCE:
            return IDENTITY
        return rotation(angle, self.coords / angle)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BallPoint):
            return NotImplemented
        return ball_distance(self.to_rotation(), other.to_rotation()) < TOLERANCE

    def __repr__(self):
        return f"BallPoint({self.coords.tolist()})"


# ===== CONSTRUCTION AND CANONICAL FORM =====


def _canonical_hemisphere(axis: np.ndarray) -> np.ndarray:
    for c in axis:
        if abs(c) > UNIT_NORM_TOLERANCE:
            return axis if c > 0 else -axis
    return axis


def _canonical_boundary(coords: np.ndarray) -> np.ndarray:
    norm = np.linalg.norm(coords)
    if abs(norm - math.pi) < UNIT_NORM_TOLERANCE * 1e3:
        return math.pi * _canonical_hemisphere(coords / norm)
    return coords


def from_quaternion(q: Sequence[float]) -> Rotation:
    """Canonical rotation of a (w, x, y, z) quaternion of any nonzero norm"""
    q = np.asarray(q, dtype=float)
    q = q / np.linalg.norm(q)
    if q[0] < 0:
        q = -q
    w, v = q[0], q[1:]
    s = np.linalg.norm(v)
    if s < UNIT_NORM_TOLERANCE:
        return IDENTITY
    angle = 2 * math.atan2(s, w)
    axis = v / s
    if abs(angle - math.pi) < UNIT_NORM_TOLERANCE * 1e3:
        angle = math.pi
        axis = _canonical_hemisphere(axis)
    return Rotation(tuple(float(c) for c in axis), float(angle))


def rotation(angle: float, axis: Sequence[float]) -> Rotation:
    """
    r(angle, axis) for any real angle and nonzero axis, in canonical form

    Args:
        angle: Radians, any real value (negative angles turn about -axis)
        axis: Direction vector, normalised here
    """
    axis = np.asarray(axis, dtype=float)
    norm = np.linalg.norm(axis)
    if norm < UNIT_NORM_TOLERANCE:
        if abs(math.remainder(angle, 2 * math.pi)) < UNIT_NORM_TOLERANCE:
            return IDENTITY
        raise ValueError("Zero rotation axis with nonzero angle")
    axis = axis / norm
    half = angle / 2
    return from_quaternion(np.concatenate([[math.cos(half)], math.sin(half) * axis]))


def _to_scipy(r: Rotation) -> ScipyRotation:
    return ScipyRotation.from_rotvec(r.ball_point())


def _from_scipy(s: ScipyRotation) -> Rotation:
    x, y, z, w = s.as_quat()
    return from_quaternion((w, x, y, z))


def from_matrix(matrix: np.ndarray) -> Rotation:
    return _from_scipy(ScipyRotation.from_matrix(matrix))


def random_rotation(rng: np.random.Generator) -> Rotation:
    """Haar-random rotation"""
    return _from_scipy(ScipyRotation.random(random_state=rng))


# ===== GROUP OPERATIONS =====


def compose(r1: Rotation, r2: Rotation) -> Rotation:
    """The rotation r2 o r1: first r1, then r2"""
    return _from_scipy(_to_scipy(r2) * _to_scipy(r1))


def conjugate(g: Rotation, r: Rotation) -> Rotation:
    """g r g^-1, which is r(angle of r, g(axis of r))"""
    return compose(compose(g.inverse(), r), g)


def composite_angle(r1: Rotation, r2: Rotation) -> float:
    """
    Angle of r2^-1 o r1 from the half-angle formula
    c(t/2) = c(t1/2)c(t2/2) + s(t1/2)s(t2/2) n1.n2
    """
    c = math.cos(r1.angle / 2) * math.cos(r2.angle / 2) + math.sin(
        r1.angle / 2
    ) * math.sin(r2.angle / 2) * float(np.dot(r1.axis_vector, r2.axis_vector))
    return 2 * math.acos(min(1.0, abs(c)))


def orthogonality_residual(r1: Rotation, r2: Rotation) -> float:
    """|cos(composite angle / 2)|; zero exactly when the pair is orthogonal"""
    return abs(
        math.cos(r1.angle / 2) * math.cos(r2.angle / 2)
        + math.sin(r1.angle / 2)
        * math.sin(r2.angle / 2)
        * float(np.dot(r1.axis_vector, r2.axis_vector))
    )


def are_orthogonal(r1: Rotation, r2: Rotation, tol: float = TOLERANCE) -> bool:
    """True iff r1^-1 r2 is a rotation through pi"""
    return abs(composite_angle(r1, r2) - math.pi) < tol


def orthogonal_partner_on_axis(r: Rotation) -> Rotation:
    """The rotation about the same axis line orthogonal to r (angle shifted by pi)"""
    return rotation(r.angle + math.pi, r.axis)


def orthogonal_angle_for_axis(r1: Rotation, axis: Sequence[float]) -> Optional[float]:
    """
    The angle t in [0, pi] with r(t, axis) orthogonal to r1, or None.
    Solvable only when the axes make an obtuse (or right) angle.
    """
    axis = np.asarray(axis, dtype=float)
    axis = axis / np.linalg.norm(axis)
    d = float(np.dot(r1.axis_vector, axis))
    c1, s1 = math.cos(r1.angle / 2), math.sin(r1.angle / 2)
    # c1 c2 + s1 s2 d = 0 with half-angle t/2 in [0, pi/2]
    half = math.atan2(c1, -s1 * d)
    if half > math.pi / 2 + UNIT_NORM_TOLERANCE:
        # tan has period pi; only half = pi folds back into range
        half -= math.pi
        if half < -UNIT_NORM_TOLERANCE:
            return None
    return 2 * min(max(half, 0.0), math.pi / 2)


# ===== SU(2) <-> SO(3) =====


def q_map(U: np.ndarray, tol: float = TOLERANCE) -> Rotation:
    """
    Bloch-sphere rotation of a 2x2 unitary: strip the determinant phase and
    read the SU(2) element as a unit quaternion
    """
    U = np.asarray(U, dtype=complex)
    if U.shape != (2, 2):
        raise ValueError(f"q_map expects a 2x2 matrix, got {U.shape}")
    if not np.allclose(U.conj().T @ U, np.eye(2), atol=tol * 10):
        raise ValueError("q_map input is not unitary")
    V = U / np.sqrt(np.linalg.det(U))
    w = (np.trace(V) / 2).real
    x, y, z = ((0.5j * np.trace(P @ V)).real for P in _PAULIS)
    return from_quaternion((w, x, y, z))


def su2_lift(r: Rotation, phase: complex = 1.0) -> np.ndarray:
    """phase * [cos(t/2) 1 - i sin(t/2) n.sigma]"""
    if abs(abs(phase) - 1) > TOLERANCE:
        raise ValueError("Lift phase must have unit modulus")
    half = r.angle / 2
    n_sigma = sum(c * P for c, P in zip(r.axis, _PAULIS))
    return phase * (math.cos(half) * np.eye(2, dtype=complex) - 1j * math.sin(half) * n_sigma)


# ===== THE SO(3)-BALL =====


def ball_distance(r1: Rotation, r2: Rotation) -> float:
    """
    Distance between ball points, taking the boundary identification into
    account (a point may be replaced by its representative beyond the boundary)
    """
    p1, p2 = r1.ball_point(), r2.ball_point()
    candidates = [np.linalg.norm(p1 - p2)]
    for a, b, rb in ((p1, p2, r2), (p2, p1, r1)):
        if rb.angle > 0:
            wrapped = (rb.angle - 2 * math.pi) * rb.axis_vector
            candidates.append(np.linalg.norm(a - wrapped))
    return float(min(candidates))


def same_rotation(r1: Rotation, r2: Rotation, tol: float = TOLERANCE) -> bool:
    return ball_distance(r1, r2) < tol


def rotate_ballpoint(g: Rotation, p: BallPoint) -> BallPoint:
    """Conjugation by g moves the ball rigidly: p -> R(g) p"""
    return BallPoint(g.matrix() @ p.coords)


def ballpoints_frame(rotations: List[Rotation], labels: Optional[List[str]] = None) -> pd.DataFrame:
    """Ball coordinates for external plotting"""
    labels = labels or [str(k) for k in range(len(rotations))]
    rows = []
    for label, r in zip(labels, rotations):
        x, y, z = r.ball_point()
        rows.append({"label": label, "x": x, "y": y, "z": z, "angle": r.angle})
    return pd.DataFrame(rows, columns=["label", "x", "y", "z", "angle"])
