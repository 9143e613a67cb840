"""
UEB Engine
Unitary error bases, equivariance discovery (tau and phase table xi),
lifting qubit OEBs to UEBs and the Hadamard construction for permutation
representations
"""

import itertools
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

import numpy as np
from scipy.linalg import circulant
from config import *
from errors import NoSolutionError, VerificationError
from group_core import GSet, orbits
from oeb_catalog import EquivariantOEB
from rotation_geometry import PAULI_X, PAULI_Y, PAULI_Z, ball_distance, q_map, su2_lift
from unitary_core import (
    Representation,
    dagger,
    is_permutation_matrix,
    is_unitary,
    matrix_from_dict,
    matrix_to_dict,
    trace_inner,
)

OMEGA = np.exp(2j * np.pi / 3)


@dataclass
class UEB:
    """n^2 unitaries on C^n, orthogonal under Tr(U_i^dagger U_j) = n delta_ij"""

    elements: List[np.ndarray]

    @property
    def dim(self) -> int:
        return self.elements[0].shape[0]

    def __len__(self):
        return len(self.elements)

    def gram(self) -> np.ndarray:
        stacked = np.array([U.ravel() for U in self.elements])
        return stacked.conj() @ stacked.T

    def to_dict(self) -> Dict:
        return {"dim": self.dim, "elements": [matrix_to_dict(U) for U in self.elements]}


@dataclass
class EquivariantUEB:
    """
    A UEB whose elements are permuted up to phase by conjugation:
    xi[i, g] rho(g)^dagger U_i rho(g) = U_{tau(i, g)}
    """

    ueb: UEB
    rep: Representation
    tau: GSet
    xi: np.ndarray

    def orbit_type(self):
        return tuple(sorted((len(o) for o in orbits(self.tau)), reverse=True))

    def phase_equation_residual(self) -> float:
        worst = 0.0
        for g in range(self.rep.group.order):
            R = self.rep(g)
            for i, U in enumerate(self.ueb.elements):
                lhs = self.xi[i, g] * (dagger(R) @ U @ R)
                worst = max(worst, float(np.abs(lhs - self.ueb.elements[self.tau.act(g, i)]).max()))
        return worst

    def to_dict(self) -> Dict:
        G = self.rep.group
        return {
            **self.ueb.to_dict(),
            "rep": self.rep.to_dict(),
            "tau": {str(g): self.tau.action[g].tolist() for g in range(G.order)},
            "xi": {
                str(g): {"re": self.xi[:, g].real.tolist(), "im": self.xi[:, g].imag.tolist()}
                for g in range(G.order)
            },
        }


# ===== VERIFICATION =====


def verify_ueb(matrices: Sequence[np.ndarray], tol: float = TOLERANCE) -> UEB:
    """
    Check shape, unitarity and trace orthogonality of a candidate basis

    Raises:
        VerificationError: naming the offending element or pair
    """
    matrices = [np.asarray(U, dtype=complex) for U in matrices]
    if not matrices:
        raise VerificationError("empty basis")
    n = matrices[0].shape[0]
    if any(U.shape != (n, n) for U in matrices):
        raise VerificationError("basis elements are not all square of the same size")
    if len(matrices) != n * n:
        raise VerificationError(f"expected {n * n} elements in dimension {n}, got {len(matrices)}")
    for k, U in enumerate(matrices):
        if not is_unitary(U, tol):
            raise VerificationError(f"element {k} is not unitary")
    ueb = UEB(matrices)
    gram = ueb.gram()
    off = np.abs(gram - n * np.eye(n * n))
    if off.max() > tol * n * n:
        i, j = np.unravel_index(int(np.argmax(off)), off.shape)
        raise VerificationError(
            f"elements {i} and {j} violate Tr(U_i^dagger U_j) = n delta_ij (|inner| {abs(gram[i, j]):.3e})"
        )
    return ueb


def discover_action(ueb: UEB, rep: Representation, tol: float = TARGET_MATCH_TOLERANCE):
    """
    For each (i, g) find the unique j with |Tr(U_j^dagger rho(g)^dagger U_i rho(g))| = n

    Returns:
        (tau action table indexed [g, i], xi array indexed [i, g])
    """
    if rep.dim != ueb.dim:
        raise ValueError(f"Representation dimension {rep.dim} differs from basis dimension {ueb.dim}")
    n, G = ueb.dim, rep.group
    stacked = np.array([U.ravel() for U in ueb.elements]).conj()
    action = np.empty((G.order, len(ueb)), dtype=int)
    xi = np.empty((len(ueb), G.order), dtype=complex)
    for g in range(G.order):
        R = rep(g)
        for i, U in enumerate(ueb.elements):
            inner = stacked @ (dagger(R) @ U @ R).ravel()
            hits = np.flatnonzero(np.abs(np.abs(inner) - n) < tol * n)
            if len(hits) != 1:
                raise VerificationError(
                    f"conjugating element {i} by {G.label(g)} has {len(hits)} matching targets"
                )
            j = int(hits[0])
            action[g, i] = j
            phase = n / inner[j]
            xi[i, g] = phase / abs(phase)
    return action, xi


def verify_equivariant(ueb: UEB, rep: Representation, tol: float = TOLERANCE) -> EquivariantUEB:
    """
    Discover tau and xi and check the phase equation, the right-action
    axioms and the phase cocycle xi(i, gh) = xi(i, g) xi(tau(i, g), h)
    """
    action, xi = discover_action(ueb, rep)
    G = rep.group
    tau = GSet(G, list(range(len(ueb))), action, side="right")
    if not tau.axioms_hold():
        raise VerificationError("discovered index map is not a right action")
    eueb = EquivariantUEB(ueb, rep, tau, xi)
    residual = eueb.phase_equation_residual()
    if residual > tol * 10:
        raise VerificationError(f"phase equation fails (residual {residual:.3e})")
    for g in range(G.order):
        for h in range(G.order):
            predicted = xi[:, g] * xi[action[g], h]
            if np.abs(predicted - xi[:, G.mul(g, h)]).max() > tol * 10:
                raise VerificationError(
                    f"phase table fails the cocycle relation at ({G.label(g)}, {G.label(h)})"
                )
    return eueb


def speakable_only_possible(eueb: EquivariantUEB) -> bool:
    """True iff every tau-orbit is a single point"""
    return all(size == 1 for size in eueb.orbit_type())


# ===== LIFTING QUBIT OEBS =====


def lift_oeb(oeb: EquivariantOEB, rep: Representation, phases: Optional[Sequence[complex]] = None) -> EquivariantUEB:
    """
    Lift the four rotations to SU(2) and check equivariance under a qubit
    representation whose Bloch image is the OEB's rotation group

    Args:
        oeb: Verified OEB
        rep: 2-dimensional representation (possibly of a double cover)
        phases: Optional unit phase per element

    Raises:
        VerificationError: representation and OEB rotation images disagree
    """
    if rep.dim != 2:
        raise ValueError("OEBs lift only along qubit representations")
    image_of = _match_images(oeb, rep)
    phases = list(phases) if phases is not None else [1.0] * 4
    ueb = verify_ueb([su2_lift(r, p) for r, p in zip(oeb.elements, phases)])
    eueb = verify_equivariant(ueb, rep)
    for g in range(rep.group.order):
        if not np.array_equal(eueb.tau.action[g], oeb.tau.action[image_of[g]]):
            raise VerificationError(
                f"index map of the lift differs from the OEB at {rep.group.label(g)}"
            )
    return eueb


def _match_images(oeb: EquivariantOEB, rep: Representation) -> List[int]:
    """Index of q(rho(g)) among the OEB's rotation images, for every g"""
    bloch = [q_map(M) for M in rep.images]
    if rep.group.same_as(oeb.group):
        for g, r in enumerate(bloch):
            if ball_distance(r, oeb.so3_images[g]) > TOLERANCE * 10:
                raise VerificationError(
                    f"q(rho({rep.group.label(g)})) differs from the OEB's rotation image"
                )
        return list(range(rep.group.order))
    image_of = []
    for g, r in enumerate(bloch):
        hits = [k for k, s in enumerate(oeb.so3_images) if ball_distance(r, s) < TOLERANCE * 10]
        if len(hits) != 1:
            raise VerificationError(
                f"q(rho({rep.group.label(g)})) is not in the OEB's rotation group"
            )
        image_of.append(hits[0])
    if sorted(set(image_of)) != list(range(len(oeb.so3_images))):
        raise VerificationError("representation does not cover the OEB's rotation group")
    return image_of


# ===== HADAMARD CONSTRUCTION =====


def circulant_unitary(n: int, a_abs: float, sign: int = 1) -> Optional[np.ndarray]:
    """
    Unitary circulant with first column (a, b, ..., b), or None when |a|
    lies outside [(n-2)/n, 1]

    Args:
        n: Dimension, at least 3
        a_abs: |a|; the phase of a is fixed to 1
        sign: Sign of the imaginary part of the phase of b
    """
    if n < 3:
        raise ValueError("Circulant construction needs n >= 3")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if not (n - 2) / n - UNIT_NORM_TOLERANCE <= a_abs <= 1 + UNIT_NORM_TOLERANCE:
        return None
    a_abs = min(1.0, a_abs)
    b_abs = math.sqrt(max(0.0, (1 - a_abs**2) / (n - 1)))
    c = ((2 - n) / 2) * b_abs / a_abs
    c = max(-1.0, min(1.0, c))
    beta = complex(c, sign * math.sqrt(max(0.0, 1 - c * c)))
    C = circulant(np.array([a_abs] + [b_abs * beta] * (n - 1), dtype=complex))
    if not is_unitary(C):
        raise VerificationError(f"circulant for n={n}, |a|={a_abs} is not unitary")
    return C


def commutes_with_all_permutations(M: np.ndarray, tol: float = TOLERANCE) -> bool:
    n = M.shape[0]
    for perm in itertools.permutations(range(n)):
        P = np.eye(n)[list(perm)]
        if not np.allclose(P @ M, M @ P, atol=tol):
            return False
    return True


def commuting_hadamard(n: int) -> np.ndarray:
    """
    A complex Hadamard matrix commuting with every n x n permutation matrix

    Raises:
        NoSolutionError: n >= 5
    """
    if n < 2:
        raise ValueError("Hadamard construction needs n >= 2")
    if n >= 5:
        raise NoSolutionError(
            f"no commuting Hadamard exists for n={n}",
            citation="unitary circulants need |a| >= (n-2)/n, which exceeds 1/sqrt(n) for n >= 5",
        )
    if n == 2:
        H = np.array([[1, 1j], [1j, 1]], dtype=complex)
    else:
        H = math.sqrt(n) * circulant_unitary(n, 1 / math.sqrt(n))
    if not np.allclose(np.abs(H), 1, atol=TOLERANCE) or not np.allclose(H @ dagger(H), n * np.eye(n)):
        raise VerificationError(f"dimension {n} Hadamard construction failed")
    if not commutes_with_all_permutations(H):
        raise VerificationError(f"dimension {n} Hadamard does not commute with S{n}")
    return H


def hadamard_ueb(rep: Representation, H: np.ndarray, tol: float = TOLERANCE) -> EquivariantUEB:
    """
    U_(i,j) = (1/n) H diag(row j of H)^dagger H^dagger diag(column i of H),
    flattened with index i*n + j

    Raises:
        VerificationError: rep is not by permutation matrices, or H does not
            commute with it, or H has entries off the unit circle
    """
    H = np.asarray(H, dtype=complex)
    n = H.shape[0]
    if rep.dim != n:
        raise ValueError(f"Hadamard size {n} differs from representation dimension {rep.dim}")
    if not np.allclose(np.abs(H), 1, atol=tol):
        raise VerificationError("Hadamard entries must have unit modulus")
    for g, P in enumerate(rep.images):
        if not is_permutation_matrix(P, tol):
            raise VerificationError(f"rho({rep.group.label(g)}) is not a permutation matrix")
        if not np.allclose(P @ H, H @ P, atol=tol):
            raise VerificationError(f"H does not commute with rho({rep.group.label(g)})")
    elements = []
    for i in range(n):
        right = np.diag(H[:, i])
        for j in range(n):
            elements.append(H @ dagger(np.diag(H[j])) @ dagger(H) @ right / n)
    return verify_equivariant(verify_ueb(elements, tol), rep, tol)


# ===== STANDARD BASES =====


def pauli_ueb() -> UEB:
    return verify_ueb([np.eye(2, dtype=complex), PAULI_X, PAULI_Y, PAULI_Z])


def example_ueb() -> UEB:
    """The qubit basis whose elements the Z3 rep diag(1, omega) permutes as (0)(1 3 2)"""
    s2, s3 = math.sqrt(2), math.sqrt(3)
    e = lambda k: np.exp(1j * np.pi * k / 3)
    U0 = np.diag([1, OMEGA])
    U1 = np.array([[1, s2 * e(4)], [s2 * e(4), e(5)]]) / s3
    U2 = np.array([[1, s2 * e(2)], [s2, e(5)]]) / s3
    U3 = np.array([[1, s2], [s2 * e(2), e(5)]]) / s3
    return verify_ueb([U0, U1, U2, U3])


def regauge(eueb: EquivariantUEB, phases: Sequence[complex]) -> EquivariantUEB:
    """Multiply U_i by phases[i]; tau is unchanged and xi is rediscovered"""
    phases = np.asarray(phases, dtype=complex)
    if len(phases) != len(eueb.ueb) or not np.allclose(np.abs(phases), 1, atol=TOLERANCE):
        raise ValueError("Gauge needs one unit phase per basis element")
    ueb = UEB([p * U for p, U in zip(phases, eueb.ueb.elements)])
    return verify_equivariant(ueb, eueb.rep)


def ueb_from_dict(data: Dict) -> UEB:
    return verify_ueb([matrix_from_dict(m) for m in data["elements"]])
