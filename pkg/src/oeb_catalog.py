"""
OEB Catalog
Equivariant orthogonal error bases for the finite rotation groups acting on
a qubit's Bloch sphere: continuous families, isolated solutions and the
refusals for groups that admit none
"""

import math
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from scipy.optimize import brentq
from config import *
from errors import NoSolutionError, VerificationError
from group_core import FiniteGroup, GSet, close_under, generated_subgroup, orbits, table_from_elements
from rotation_geometry import (
    IDENTITY,
    Rotation,
    ball_distance,
    ballpoints_frame,
    compose,
    conjugate,
    orthogonality_residual,
    orthogonal_partner_on_axis,
    random_rotation,
    rotation,
    su2_lift,
)
from unitary_core import Representation, matrix_group

X_HAT = np.array([1.0, 0.0, 0.0])
Y_HAT = np.array([0.0, 1.0, 0.0])
Z_HAT = np.array([0.0, 0.0, 1.0])

# Vertices of the standard tetrahedron (even sign product) and its dual
TETRAHEDRON = [np.array(v) / math.sqrt(3) for v in [(1, 1, 1), (-1, -1, 1), (-1, 1, -1), (1, -1, -1)]]
DUAL_TETRAHEDRON = [-v for v in TETRAHEDRON]

GOLDEN_RATIO = (1 + math.sqrt(5)) / 2


@dataclass
class RotationGroup:
    """A finite subgroup of SO(3) in the standard embedding"""

    tag: str
    group: FiniteGroup
    rotations: List[Rotation]

    def index_of(self, r: Rotation, tol: float = TOLERANCE) -> int:
        for k, s in enumerate(self.rotations):
            if ball_distance(r, s) < tol:
                return k
        raise ValueError(f"{r} is not an element of {self.tag}")

    def matrices(self) -> np.ndarray:
        return np.array([r.matrix() for r in self.rotations])


@dataclass
class EquivariantOEB:
    """
    Four pairwise orthogonal rotations permuted by conjugation with the
    rotation images of a finite group. tau is the right action
    tau(i, g) = index of R(g)^-1 r_i R(g).
    """

    group: FiniteGroup
    so3_images: List[Rotation]
    elements: List[Rotation]
    tau: GSet
    family_tag: str = ""
    parameters: Dict = field(default_factory=dict)
    max_residual: float = 0.0

    def orbit_type(self) -> Tuple[int, ...]:
        return orbit_type(self)

    def to_dict(self) -> Dict:
        return {
            "family": self.family_tag,
            "group": self.group.name,
            "parameters": {k: (float(v) if isinstance(v, (int, float)) else v) for k, v in self.parameters.items()},
            "elements": [r.to_dict() for r in self.elements],
            "tau": {str(g): self.tau.action[g].tolist() for g in range(self.group.order)},
            "orbit_type": list(self.orbit_type()),
            "max_residual": self.max_residual,
        }


@dataclass
class Refusal:
    """A proven nonexistence, with the heuristic search that backs it up"""

    group_tag: str
    reason: str
    citation: str
    search_trials: int = 0
    candidates_found: int = 0

    def to_dict(self) -> Dict:
        return {
            "group": self.group_tag,
            "reason": self.reason,
            "citation": self.citation,
            "search_trials": self.search_trials,
            "candidates_found": self.candidates_found,
        }


# ===== ROTATION GROUPS =====


def _rotation_key(r: Rotation) -> Tuple[float, ...]:
    return tuple(np.round(r.ball_point(), 8) + 0.0)


def _group_generators(tag: str) -> Tuple[str, List[Rotation]]:
    tag = tag.strip()
    aliases = {"tetrahedral": "A4", "octahedral": "S4", "icosahedral": "A5"}
    tag = aliases.get(tag.lower(), tag)
    if tag.lower() in ("trivial", "1", "z1"):
        return "trivial", []
    match = re.fullmatch(r"([ZD])(\d+)", tag)
    if match:
        kind, n = match.group(1), int(match.group(2))
        if n < 1:
            raise ValueError(f"Bad rotation group order in {tag}")
        cyclic = rotation(2 * math.pi / n, Z_HAT)
        if kind == "Z":
            return tag, [cyclic] if n > 1 else []
        return tag, ([cyclic] if n > 1 else []) + [rotation(math.pi, X_HAT)]
    if tag == "A4":
        return tag, [rotation(2 * math.pi / 3, (1, 1, 1)), rotation(math.pi, Z_HAT)]
    if tag == "S4":
        return tag, [rotation(math.pi / 2, Z_HAT), rotation(2 * math.pi / 3, (1, 1, 1))]
    if tag == "A5":
        return tag, [
            rotation(2 * math.pi / 3, (1, 1, 1)),
            rotation(math.pi, Z_HAT),
            rotation(2 * math.pi / 5, (0, 1, GOLDEN_RATIO)),
        ]
    raise ValueError(f"Unknown rotation group: {tag}")


@lru_cache(maxsize=None)
def so3_subgroup(tag: str) -> RotationGroup:
    """
    Named finite subgroup of SO(3): cyclic axis z, flip axis x, tetrahedral
    3-fold axes (+-1, +-1, +-1), icosahedral 5-fold axis (0, 1, golden ratio)

    Args:
        tag: 'trivial', 'Zn', 'Dn', 'A4'/'tetrahedral', 'S4'/'octahedral',
            'A5'/'icosahedral'
    """
    name, generators = _group_generators(tag)
    multiply = lambda x, s: compose(s, x)  # R(x) R(s)
    rotations, words = close_under(generators, multiply, _rotation_key, IDENTITY)
    table = table_from_elements(rotations, multiply, _rotation_key)
    return RotationGroup(name, FiniteGroup(words, table, identity=0, name=name), rotations)


def binary_lift(tag: str) -> Tuple[FiniteGroup, Representation]:
    """
    The double cover in SU(2) of a rotation group, with its defining
    2-dimensional representation; q of each image lies in the rotation group
    """
    name, generators = _group_generators(tag)
    lifts = [su2_lift(r, 1.0) for r in generators] or [-np.eye(2, dtype=complex)]
    return matrix_group(lifts, name=f"2{name}")


# ===== VERIFICATION =====


def orbit_type_of_tag(tag: str) -> Tuple[int, ...]:
    match = re.search(r"\(([\d,\s]+)\)", tag)
    if not match:
        raise ValueError(f"No orbit type in family tag {tag}")
    return tuple(sorted((int(k) for k in match.group(1).split(",")), reverse=True))


def oeb_report(
    candidate: Sequence[Rotation], rot_group: RotationGroup, tol: float = TOLERANCE
) -> Tuple[List[str], Optional[np.ndarray], float]:
    """
    Check orthogonality of all pairs and closure under conjugation

    Returns:
        (problems, tau table or None, max orthogonality residual)
    """
    problems = []
    if len(candidate) != 4:
        return [f"expected 4 rotations, got {len(candidate)}"], None, float("inf")

    max_residual = 0.0
    for i in range(4):
        for j in range(i + 1, 4):
            residual = orthogonality_residual(candidate[i], candidate[j])
            max_residual = max(max_residual, residual)
            if abs(2 * math.acos(min(1.0, residual)) - math.pi) >= tol:
                problems.append(f"elements {i} and {j} are not orthogonal (residual {residual:.3e})")

    G = rot_group.group
    tau = np.empty((G.order, 4), dtype=int)
    for g, R in enumerate(rot_group.rotations):
        R_inv = R.inverse()
        for i, r in enumerate(candidate):
            image = conjugate(R_inv, r)
            hits = [j for j, s in enumerate(candidate) if ball_distance(image, s) < tol]
            if len(hits) != 1:
                problems.append(
                    f"conjugating element {i} by {G.label(g)} does not land on a unique element"
                )
                return problems, None, max_residual
            tau[g, i] = hits[0]
    return problems, tau, max_residual


def verify_oeb(
    candidate: Sequence[Rotation],
    rot_group: RotationGroup,
    family_tag: str = "",
    parameters: Optional[Dict] = None,
    tol: float = TOLERANCE,
) -> EquivariantOEB:
    """
    Build an EquivariantOEB after checking orthogonality, closure and, when a
    family tag is given, the orbit type

    Raises:
        VerificationError: naming the failing pair or group element
    """
    problems, tau, max_residual = oeb_report(candidate, rot_group, tol)
    if problems:
        raise VerificationError("; ".join(problems))
    tau_set = GSet(rot_group.group, list(range(4)), tau, side="right")
    if not tau_set.axioms_hold():
        raise VerificationError("induced index map is not a right action")
    oeb = EquivariantOEB(
        group=rot_group.group,
        so3_images=list(rot_group.rotations),
        elements=list(candidate),
        tau=tau_set,
        family_tag=family_tag,
        parameters=dict(parameters or {}),
        max_residual=max_residual,
    )
    if family_tag and oeb.orbit_type() != orbit_type_of_tag(family_tag):
        raise VerificationError(
            f"orbit type {oeb.orbit_type()} does not match family {family_tag}"
        )
    return oeb


def orbit_type(oeb: EquivariantOEB) -> Tuple[int, ...]:
    """Orbit sizes of tau, largest first"""
    return tuple(sorted((len(o) for o in orbits(oeb.tau)), reverse=True))


def restrict_oeb(oeb: EquivariantOEB, rot_group: RotationGroup, generators: Sequence[Rotation]) -> EquivariantOEB:
    """Re-verify an OEB for the subgroup generated by some of its group's rotations"""
    H = generated_subgroup(rot_group.group, [rot_group.index_of(r) for r in generators])
    sub = RotationGroup(
        f"{rot_group.tag}>H{H.order}",
        H.as_group(name=f"{rot_group.tag}>H{H.order}"),
        [rot_group.rotations[g] for g in H.members],
    )
    return verify_oeb(oeb.elements, sub, parameters=oeb.parameters)


# ===== CONTINUOUS FAMILIES =====


def _xy_frame(phi: float) -> Tuple[np.ndarray, np.ndarray]:
    x_axis = np.array([math.cos(phi), math.sin(phi), 0.0])
    y_axis = np.array([-math.sin(phi), math.cos(phi), 0.0])
    return x_axis, y_axis


def _in_range(value: float, lo: float, hi: float) -> bool:
    return lo - UNIT_NORM_TOLERANCE <= value <= hi + UNIT_NORM_TOLERANCE


def two_orbit_angle(theta: float) -> float:
    """Rotation angle r of a 2-orbit whose axes meet at central angle theta"""
    c = math.cos(theta)
    return 2 * math.acos(math.sqrt(max(0.0, c / (c - 1))))


def two_orbit_central_angle(r: float) -> float:
    """Inverse of two_orbit_angle on [pi/2, pi], by bracketed root finding"""
    if not _in_range(r, math.pi / 2, math.pi):
        raise NoSolutionError(
            f"rotation angle {r:.6f} outside [pi/2, pi]",
            citation="2-orbit orthogonality needs an obtuse central angle",
        )
    f = lambda t: two_orbit_angle(t) - r
    a, b = math.pi / 2, math.pi
    if abs(f(a)) < ROOT_TOLERANCE:
        return a
    if abs(f(b)) < ROOT_TOLERANCE:
        return b
    return brentq(f, a, b, xtol=ROOT_TOLERANCE)


def z_axis_partner_angle(r: float, axis_z: float) -> float:
    """
    Signed angle z of the rotation about the z-axis orthogonal to r(r, n)
    with n_z = axis_z, from c(z/2)c(r/2) + s(z/2)s(r/2)n_z = 0
    """
    c, s = math.cos(r / 2), math.sin(r / 2)
    f = lambda h: math.cos(h) * c + math.sin(h) * s * axis_z
    lo, hi = -math.pi / 2, math.pi / 2
    if abs(s * axis_z) < ROOT_TOLERANCE:
        return math.pi
    return 2 * brentq(f, lo, hi, xtol=ROOT_TOLERANCE)


def z2_elements_1111(theta_z: float, phi: float) -> List[Rotation]:
    x_axis, y_axis = _xy_frame(phi)
    z_rot = rotation(theta_z, Z_HAT)
    return [z_rot, orthogonal_partner_on_axis(z_rot), rotation(math.pi, x_axis), rotation(math.pi, y_axis)]


def z2_oeb_1111(theta_z: float, phi: float) -> EquivariantOEB:
    """Two rotations on the z-axis and two pi-rotations about orthogonal axes in the xy-plane"""
    return verify_oeb(
        z2_elements_1111(theta_z, phi),
        so3_subgroup("Z2"),
        "Z2-(1,1,1,1)",
        {"theta_z": theta_z, "phi": phi},
    )


def z2_elements_211(theta: float, phi: float) -> List[Rotation]:
    if not _in_range(theta, math.pi / 2, 3 * math.pi / 2):
        raise NoSolutionError(
            f"no solution in family Z2-(2,1,1) for theta={theta:.6f}",
            citation="2-orbit orthogonality has a solution only for theta in [pi/2, 3pi/2]",
        )
    x_axis, y_axis = _xy_frame(phi)
    r = two_orbit_angle(theta)
    n_plus = math.sin(theta / 2) * y_axis + math.cos(theta / 2) * Z_HAT
    n_minus = -math.sin(theta / 2) * y_axis + math.cos(theta / 2) * Z_HAT
    z1 = z_axis_partner_angle(r, math.cos(theta / 2))
    return [rotation(z1, Z_HAT), rotation(math.pi, x_axis), rotation(r, n_plus), rotation(r, n_minus)]


def z2_oeb_211(theta: float, phi: float) -> EquivariantOEB:
    """
    A pi-rotation about the x-axis, a z-axis rotation at the unique height
    orthogonal to the 2-orbit, and a 2-orbit in the yz-plane at central angle theta

    Raises:
        NoSolutionError: theta outside [pi/2, 3pi/2]
    """
    return verify_oeb(
        z2_elements_211(theta, phi),
        so3_subgroup("Z2"),
        "Z2-(2,1,1)",
        {"theta": theta, "phi": phi},
    )


def z2_elements_22(r2: float, phi: float, parity: int = 1) -> List[Rotation]:
    if not _in_range(r2, math.pi / 2, math.pi):
        raise NoSolutionError(
            f"no solution in family Z2-(2,2) for r2={r2:.6f}",
            citation="both 2-orbit angles must lie in [pi/2, pi]",
        )
    if parity not in (1, -1):
        raise ValueError("parity must be +1 or -1")
    x_axis, y_axis = _xy_frame(phi)
    r1 = 2 * math.acos(math.sqrt(max(0.0, 0.5 - math.cos(r2 / 2) ** 2)))
    theta1 = two_orbit_central_angle(r1)
    theta2 = 2 * math.pi - two_orbit_central_angle(r2)
    up = parity * Z_HAT
    n1 = [k * math.sin(theta1 / 2) * x_axis + math.cos(theta1 / 2) * up for k in (1, -1)]
    n2 = [k * math.sin(theta2 / 2) * y_axis + math.cos(theta2 / 2) * up for k in (1, -1)]
    return [rotation(r1, n) for n in n1] + [rotation(r2, n) for n in n2]


def z2_oeb_22(r2: float, phi: float, parity: int = 1) -> EquivariantOEB:
    """
    Two 2-orbits in orthogonal planes through the z-axis: O1 (angle r1) in
    the xz-plane above the xy-plane, O2 (angle r2) in the yz-plane below;
    parity -1 mirrors both through the xy-plane
    """
    return verify_oeb(
        z2_elements_22(r2, phi, parity),
        so3_subgroup("Z2"),
        "Z2-(2,2)",
        {"r2": r2, "phi": phi, "parity": parity},
    )


Z3_PSI_MIN = math.asin(math.sqrt(2 / 3))


def z3_elements_31(psi: float, phi: float) -> List[Rotation]:
    if not _in_range(psi, Z3_PSI_MIN, math.pi - Z3_PSI_MIN):
        raise NoSolutionError(
            f"no solution in family Z3-(3,1) for psi={psi:.6f}",
            citation="3-orbit orthogonality needs sin(psi) >= sqrt(2/3)",
        )
    r = 2 * math.asin(min(1.0, math.sqrt(2) / (math.sqrt(3) * math.sin(psi))))
    half = math.atan2(-math.cos(r / 2), math.sin(r / 2) * math.cos(psi))
    if half > math.pi / 2:
        half -= math.pi
    elif half <= -math.pi / 2:
        half += math.pi
    axes = [
        np.array(
            [
                math.sin(psi) * math.cos(phi + 2 * math.pi * k / 3),
                math.sin(psi) * math.sin(phi + 2 * math.pi * k / 3),
                math.cos(psi),
            ]
        )
        for k in range(3)
    ]
    return [rotation(2 * half, Z_HAT)] + [rotation(r, n) for n in axes]


def z3_oeb_31(psi: float, phi: float) -> EquivariantOEB:
    """
    A 3-orbit at polar angle psi (a regular triangle perpendicular to z) and
    a z-axis rotation on the other side of the xy-plane
    """
    return verify_oeb(
        z3_elements_31(psi, phi), so3_subgroup("Z3"), "Z3-(3,1)", {"psi": psi, "phi": phi}
    )


def z4_oeb_211(theta_z: float, phi: float) -> EquivariantOEB:
    """The Z2-(1,1,1,1) point set; the quarter turn swaps the two planar pi-rotations"""
    return verify_oeb(
        z2_elements_1111(theta_z, phi),
        so3_subgroup("Z4"),
        "Z4-(2,1,1)",
        {"theta_z": theta_z, "phi": phi},
    )


def trivial_oeb(rng: np.random.Generator) -> EquivariantOEB:
    """A random OEB: a left translate of a conjugate of the Pauli image set"""
    g, h = random_rotation(rng), random_rotation(rng)
    elements = [compose(conjugate(h, r), g) for r in z2_elements_1111(0.0, 0.0)]
    return verify_oeb(elements, so3_subgroup("trivial"), "trivial-(1,1,1,1)", {"seeded": True})


def sample_family(tag: str, rng: np.random.Generator, count: int = CONTINUOUS_FAMILY_SAMPLES) -> List[EquivariantOEB]:
    """Random members of a continuous family, parameters drawn from its domain"""
    builders = {
        "trivial-(1,1,1,1)": lambda: trivial_oeb(rng),
        "Z2-(1,1,1,1)": lambda: z2_oeb_1111(rng.uniform(0, 2 * math.pi), rng.uniform(0, 2 * math.pi)),
        "Z2-(2,1,1)": lambda: z2_oeb_211(
            rng.uniform(math.pi / 2, 3 * math.pi / 2), rng.uniform(0, 2 * math.pi)
        ),
        "Z2-(2,2)": lambda: z2_oeb_22(
            rng.uniform(math.pi / 2, math.pi), rng.uniform(0, 2 * math.pi), int(rng.choice([1, -1]))
        ),
        "Z3-(3,1)": lambda: z3_oeb_31(
            rng.uniform(Z3_PSI_MIN, math.pi - Z3_PSI_MIN), rng.uniform(0, 2 * math.pi)
        ),
        "Z4-(2,1,1)": lambda: z4_oeb_211(rng.uniform(0, 2 * math.pi), rng.uniform(0, 2 * math.pi)),
    }
    if tag not in builders:
        raise ValueError(f"{tag} is not a continuous family")
    return [builders[tag]() for _ in range(count)]


CONTINUOUS_FAMILIES = ["trivial-(1,1,1,1)", "Z2-(1,1,1,1)", "Z2-(2,1,1)", "Z2-(2,2)", "Z3-(3,1)", "Z4-(2,1,1)"]


# ===== ISOLATED SOLUTIONS =====


def _discrete_candidates(tag: str) -> List[Tuple[str, str, List[Rotation]]]:
    """(family tag, case label, elements) per case of the classification"""
    pi = math.pi
    if tag == "D2":
        cases = [
            ("D2-(1,1,1,1)", "axes f,g; z {0,pi}", z2_elements_1111(0, 0)),
            ("D2-(2,1,1)", "axes f,g; z {pi/2,-pi/2}", z2_elements_1111(pi / 2, 0)),
            ("D2-(2,1,1)", "axes f+g,f-g; z {0,pi}", z2_elements_1111(0, pi / 4)),
            ("D2-(2,2)", "axes f+g,f-g; z {pi/2,-pi/2}", z2_elements_1111(pi / 2, pi / 4)),
        ]
        for theta, z_label in ((pi / 2, "z 0, r pi"), (pi, "z pi, r pi/2")):
            for phi, x_label in ((0.0, "x=f"), (pi / 2, "x=g")):
                cases.append(("D2-(2,1,1)", f"Z2-(2,1,1) {z_label}; {x_label}", z2_elements_211(theta, phi)))
        cases.append(("D2-(2,2)", "planes preserved; r1 pi/2", z2_elements_22(pi, 0)))
        cases.append(("D2-(2,2)", "planes preserved; r1 pi", z2_elements_22(pi / 2, 0)))
        for parity in (1, -1):
            cases.append(("D2-(4)", f"planes swapped; parity {parity}", z2_elements_22(2 * pi / 3, pi / 4, parity)))
        return cases
    if tag == "D3":
        cases = []
        for k in range(3):
            cases.append(("D3-(3,1)", f"z pi; vertex on flip line {k}", z3_elements_31(pi / 2, k * pi / 3)))
        for k in range(3):
            cases.append(
                ("D3-(3,1)", f"z 0; median orthogonal to flip plane {k}", z3_elements_31(Z3_PSI_MIN, pi / 6 + k * pi / 3))
            )
        return cases
    if tag == "D4":
        return [
            ("D4-(2,1,1)", "f=x; z {0,pi}", z2_elements_1111(0, 0)),
            ("D4-(2,1,1)", "f=x+y; z {0,pi}", z2_elements_1111(0, pi / 4)),
            ("D4-(2,2)", "f=x; z {pi/2,-pi/2}", z2_elements_1111(pi / 2, 0)),
            ("D4-(2,2)", "f=x+y; z {pi/2,-pi/2}", z2_elements_1111(pi / 2, pi / 4)),
        ]
    if tag == "A4":
        return [
            ("tetrahedral-(4)", "tetrahedron", [rotation(2 * pi / 3, v) for v in TETRAHEDRON]),
            ("tetrahedral-(4)", "dual tetrahedron", [rotation(2 * pi / 3, v) for v in DUAL_TETRAHEDRON]),
        ]
    if tag == "S4":
        return [("octahedral-(1,3)", "cube face centres and origin", z2_elements_1111(0, 0))]
    raise ValueError(f"Unknown discrete group tag: {tag}")


def discrete_catalog(group_tag: str) -> List[EquivariantOEB]:
    """
    Every isolated solution for D2, D3, D4, A4 (tetrahedral) or S4
    (octahedral) in the standard embedding, one entry per case label
    """
    aliases = {"tetrahedral": "A4", "octahedral": "S4"}
    tag = aliases.get(group_tag, group_tag)
    if tag not in DISCRETE_GROUP_TAGS:
        raise ValueError(f"Unknown discrete group tag: {group_tag}")
    rot_group = so3_subgroup(tag)
    return [
        verify_oeb(elements, rot_group, family, {"case": case})
        for family, case, elements in _discrete_candidates(tag)
    ]


def same_point_set(a: Sequence[Rotation], b: Sequence[Rotation], tol: float = TOLERANCE) -> bool:
    return all(any(ball_distance(r, s) < tol for s in b) for r in a) and all(
        any(ball_distance(r, s) < tol for s in a) for r in b
    )


def distinct_solutions(oebs: Sequence[EquivariantOEB]) -> List[EquivariantOEB]:
    distinct: List[EquivariantOEB] = []
    for oeb in oebs:
        if not any(same_point_set(oeb.elements, d.elements) for d in distinct):
            distinct.append(oeb)
    return distinct


# ===== NONEXISTENCE =====


def _refusal_reason(tag: str) -> Tuple[str, str]:
    match = re.fullmatch(r"([ZD])(\d+)", tag)
    if match:
        kind, n = match.group(1), int(match.group(2))
        if n < 5:
            raise ValueError(f"{tag} has equivariant OEBs; no refusal applies")
        if kind == "D":
            reason, _ = _refusal_reason(f"Z{n}")
            return (
                f"no equivariant OEB for the cyclic subgroup Z{n}, so none for {tag}: {reason}",
                "a solution for a group is a solution for each of its subgroups",
            )
        citation = "cyclic groups Z_n with n >= 5 admit no equivariant OEB"
        if n % 2 == 1:
            return (
                f"only orbit sizes 1 and {n}; four 1-orbits on the rotation axis are impossible "
                "since a rotation is orthogonal to exactly one other rotation about the same axis",
                citation,
            )
        if n == 6:
            return (
                "orbit sizes 1, 3 and 6 force one 1-orbit and one 3-orbit of pi-rotations whose "
                "axes are not orthogonal",
                citation,
            )
        if n == 8:
            return (
                "orbit sizes 1, 4 and 8 force a 4-orbit of pi-rotations whose axes are not orthogonal",
                citation,
            )
        return (f"off-axis orbit sizes all exceed 4 for n = {n}", citation)
    if tag in ("A5", "icosahedral"):
        return (
            "no equivariant OEB for the D5 subgroup, so none for the icosahedral group",
            "a solution for a group is a solution for each of its subgroups",
        )
    raise ValueError(f"No refusal applies to {tag}")


def nonexistence_certificate(
    group_tag: str, trials: int = NONEXISTENCE_SEARCH_TRIALS, seed: int = DEFAULT_SEED
) -> Refusal:
    """
    Structured refusal for Zn and Dn with n >= 5 and the icosahedral group.
    The attached randomized search is a sanity check, not a proof.
    """
    reason, citation = _refusal_reason(group_tag)
    found = nonexistence_search(group_tag, trials, seed) if trials > 0 else 0
    return Refusal(group_tag, reason, citation, trials, found)


def _small_orbit_pool(rot_group: RotationGroup, rng: np.random.Generator, samples: int) -> List[np.ndarray]:
    """Sample ball points (generic, on symmetry axes, on boundary great circles) with orbit size <= 4"""
    mats = rot_group.matrices()
    axes = [r.axis_vector for r in rot_group.rotations if not r.is_identity] or [Z_HAT]
    points = np.empty((samples, 3))
    for k in range(samples):
        mode = k % 3
        axis = axes[rng.integers(len(axes))]
        if mode == 0:
            points[k] = rng.uniform(-math.pi, math.pi) * axis
        elif mode == 1:
            u = np.cross(axis, rng.normal(size=3))
            points[k] = math.pi * u / np.linalg.norm(u)
        else:
            v = rng.normal(size=3)
            points[k] = rng.uniform(0, math.pi) * v / np.linalg.norm(v)
    points[0] = 0.0

    images = np.einsum("gij,nj->gni", mats, points)
    on_boundary = np.abs(np.linalg.norm(points, axis=1) - math.pi) < 1e-9
    same = np.linalg.norm(images - points, axis=2) < 1e-7
    antipodal = (np.linalg.norm(images + points, axis=2) < 1e-7) & on_boundary
    stab = (same | antipodal).sum(axis=0)
    orbit_size = len(mats) // stab

    pool, seen = [], set()
    for k in np.flatnonzero(orbit_size <= 4):
        orbit = []
        for img in images[:, k, :]:
            if not any(
                np.linalg.norm(img - o) < 1e-7 or (on_boundary[k] and np.linalg.norm(img + o) < 1e-7)
                for o in orbit
            ):
                orbit.append(img)
        key = tuple(sorted(tuple(np.round(np.abs(o), 6)) for o in orbit))
        if key not in seen:
            seen.add(key)
            pool.append(np.array(orbit))
    return pool


def _all_orthogonal(points: np.ndarray, tol: float = 1e-6) -> bool:
    angles = np.linalg.norm(points, axis=1)
    axes = np.divide(points, angles[:, None], out=np.tile(Z_HAT, (len(points), 1)), where=angles[:, None] > 0)
    c, s = np.cos(angles / 2), np.sin(angles / 2)
    gram = np.outer(c, c) + np.outer(s, s) * (axes @ axes.T)
    off = gram[~np.eye(len(points), dtype=bool)]
    return bool((np.abs(off) < tol).all())


def nonexistence_search(group_tag: str, trials: int, seed: int = DEFAULT_SEED) -> int:
    """Number of sampled 4-point unions of small orbits that are pairwise orthogonal"""
    rng = np.random.default_rng(seed)
    rot_group = so3_subgroup(group_tag)
    pool = _small_orbit_pool(rot_group, rng, max(trials // 10, 100))
    found = 0
    for _ in range(trials):
        chosen, size = [], 0
        for k in rng.permutation(len(pool)):
            if size + len(pool[k]) <= 4:
                chosen.append(pool[k])
                size += len(pool[k])
            if size == 4:
                break
        if size == 4 and _all_orthogonal(np.vstack(chosen)):
            found += 1
    return found


# ===== REPORTING =====


def oeb_ballpoints(oeb: EquivariantOEB) -> pd.DataFrame:
    return ballpoints_frame(oeb.elements, [f"{oeb.family_tag}:{k}" for k in range(4)])


def catalog_frame(oebs: Sequence[EquivariantOEB]) -> pd.DataFrame:
    rows = []
    for oeb in oebs:
        rows.append(
            {
                "family": oeb.family_tag,
                "group": oeb.group.name,
                "orbit_type": str(oeb.orbit_type()),
                "parameters": ", ".join(f"{k}={v}" for k, v in oeb.parameters.items()),
                "max_residual": oeb.max_residual,
            }
        )
    return pd.DataFrame(rows, columns=["family", "group", "orbit_type", "parameters", "max_residual"])


def oeb_from_dict(data: Dict) -> EquivariantOEB:
    group_tag = data.get("group") or data["family"].split("-")[0]
    elements = [Rotation.from_dict(r) for r in data["elements"]]
    oeb = verify_oeb(elements, so3_subgroup(group_tag), data.get("family", ""), data.get("parameters", {}))
    if "tau" in data:
        declared = np.array([data["tau"][str(g)] for g in range(oeb.group.order)])
        if not np.array_equal(declared, oeb.tau.action):
            raise VerificationError("declared tau differs from the conjugation action")
    return oeb
