"""
Unitary Core
Complex matrices, unitary representations of finite groups, dual
representations, maximally entangled states and invariant resource states
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import null_space, polar
from scipy.stats import unitary_group
from config import *
from group_core import FiniteGroup, GSet, close_under, linear_characters, table_from_elements
from rotation_geometry import PAULI_X, PAULI_Y, PAULI_Z

IDENTITY_2 = np.eye(2, dtype=complex)


# ===== MATRIX ALGEBRA =====


def tensor(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    return np.kron(A, B)


def dagger(A: np.ndarray) -> np.ndarray:
    return np.asarray(A).conj().T


def transpose_in_basis(A: np.ndarray) -> np.ndarray:
    return np.asarray(A).T


def trace_inner(A: np.ndarray, B: np.ndarray) -> complex:
    """Tr(A^dagger B)"""
    A, B = np.asarray(A), np.asarray(B)
    if A.shape != B.shape:
        raise ValueError(f"Dimension mismatch: {A.shape} vs {B.shape}")
    return complex(np.vdot(A, B))


def is_unitary(M: np.ndarray, tol: float = TOLERANCE) -> bool:
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        return False
    return bool(np.allclose(M.conj().T @ M, np.eye(M.shape[0]), atol=tol))


def matrices_close(A: np.ndarray, B: np.ndarray, tol: float = TOLERANCE) -> bool:
    return bool(np.allclose(A, B, atol=tol, rtol=0))


def scalar_multiple(V: np.ndarray, M: np.ndarray, tol: float = TOLERANCE) -> Optional[complex]:
    """lambda with M = lambda V, or None; residual measured in Frobenius norm"""
    lam = trace_inner(V, M) / trace_inner(V, V)
    if np.linalg.norm(M - lam * V) < tol * V.shape[0]:
        return lam
    return None


def matrix_to_dict(M: np.ndarray) -> Dict:
    M = np.asarray(M, dtype=complex)
    return {"dims": list(M.shape), "re": M.real.tolist(), "im": M.imag.tolist()}


def matrix_from_dict(data: Dict) -> np.ndarray:
    M = np.array(data["re"], dtype=float) + 1j * np.array(data["im"], dtype=float)
    if list(M.shape) != list(data.get("dims", M.shape)):
        raise ValueError(f"Matrix entries do not match dims {data['dims']}")
    return M


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    return unitary_group.rvs(n, random_state=rng)


def random_state(n: int, rng: np.random.Generator) -> np.ndarray:
    psi = rng.normal(size=n) + 1j * rng.normal(size=n)
    return psi / np.linalg.norm(psi)


# ===== REPRESENTATIONS =====


@dataclass
class Representation:
    """
    A unitary representation: images[g] is the matrix of group element g
    """

    group: FiniteGroup
    images: List[np.ndarray]
    name: str = "rho"

    def __post_init__(self):
        self.images = [np.asarray(M, dtype=complex) for M in self.images]
        if len(self.images) != self.group.order:
            raise ValueError(
                f"Representation has {len(self.images)} images for a group of order {self.group.order}"
            )

    @property
    def dim(self) -> int:
        return self.images[0].shape[0]

    def __call__(self, g: int) -> np.ndarray:
        return self.images[g]

    def character(self) -> np.ndarray:
        return np.array([np.trace(M) for M in self.images])

    def violations(self, tol: float = TOLERANCE) -> List[str]:
        """Exhaustive check of the representation axioms"""
        G = self.group
        problems = []
        if not matrices_close(self.images[G.identity], np.eye(self.dim), tol):
            problems.append("identity is not sent to the identity matrix")
        for g, M in enumerate(self.images):
            if M.shape != (self.dim, self.dim):
                problems.append(f"image of {G.label(g)} has shape {M.shape}")
            elif not is_unitary(M, tol):
                problems.append(f"image of {G.label(g)} is not unitary")
        if problems:
            return problems
        for g in range(G.order):
            for h in range(G.order):
                if not matrices_close(self.images[g] @ self.images[h], self.images[G.mul(g, h)], tol):
                    problems.append(f"rho({G.label(g)}) rho({G.label(h)}) != rho(gh)")
        return problems

    def is_valid(self, tol: float = TOLERANCE) -> bool:
        return not self.violations(tol)

    def to_dict(self) -> Dict:
        return {
            "name": self.name,
            "images": {str(g): matrix_to_dict(M) for g, M in enumerate(self.images)},
        }

    @classmethod
    def from_dict(cls, group: FiniteGroup, data: Dict) -> "Representation":
        images = [matrix_from_dict(data["images"][str(g)]) for g in range(group.order)]
        return cls(group, images, data.get("name", "rho"))


def rep_from_generators(
    G: FiniteGroup, generator_images: Dict[int, np.ndarray], name: str = "rho"
) -> Representation:
    """
    Extend images of generating elements to the whole group and check the
    result exhaustively
    """
    dim = next(iter(generator_images.values())).shape[0]
    images: List[Optional[np.ndarray]] = [None] * G.order
    images[G.identity] = np.eye(dim, dtype=complex)
    frontier = [G.identity]
    while frontier:
        next_frontier = []
        for x in frontier:
            for s, M in generator_images.items():
                y = G.mul(x, s)
                image = images[x] @ np.asarray(M, dtype=complex)
                if images[y] is None:
                    images[y] = image
                    next_frontier.append(y)
        frontier = next_frontier
    if any(M is None for M in images):
        raise ValueError("Generator images do not reach every group element")
    rep = Representation(G, images, name)
    problems = rep.violations()
    if problems:
        raise ValueError(f"Not a representation: {problems[0]}")
    return rep


def matrix_group(
    generators: Sequence[np.ndarray], name: str = "G", cap: int = GROUP_SIZE_CAP
) -> Tuple[FiniteGroup, Representation]:
    """
    Close a set of unitaries under multiplication; the group comes with its
    defining representation. Elements are labelled by generator words.
    """
    generators = [np.asarray(M, dtype=complex) for M in generators]
    dim = generators[0].shape[0]
    identity = np.eye(dim, dtype=complex)
    matrices, words = close_under(generators, np.matmul, _matrix_key, identity, cap)
    table = table_from_elements(matrices, np.matmul, _matrix_key)
    G = FiniteGroup(words, table, identity=0, name=name)
    return G, Representation(G, matrices, name=f"{name}-defining")


def _matrix_key(M: np.ndarray) -> Tuple:
    rounded = np.round(M, 8) + 0.0
    return tuple(rounded.real.ravel()) + tuple(rounded.imag.ravel())


def trivial_rep(G: FiniteGroup, dim: int = 1) -> Representation:
    return Representation(G, [np.eye(dim, dtype=complex)] * G.order, name=f"trivial-{dim}")


def one_dim_rep(G: FiniteGroup, values: Sequence[complex], name: str = "theta") -> Representation:
    rep = Representation(G, [np.array([[v]], dtype=complex) for v in values], name)
    problems = rep.violations()
    if problems:
        raise ValueError(f"Not a one-dimensional representation: {problems[0]}")
    return rep


def linear_character_reps(G: FiniteGroup) -> List[Representation]:
    """Every one-dimensional representation of G, trivial first"""
    modulus, characters = linear_characters(G)
    reps = []
    for k, chi in enumerate(characters):
        values = np.exp(2j * np.pi * chi / modulus)
        reps.append(Representation(G, [np.array([[v]]) for v in values], name=f"theta{k}"))
    return reps


def dual_rep(rho: Representation) -> Representation:
    """Entrywise complex conjugate"""
    return Representation(rho.group, [M.conj() for M in rho.images], name=f"{rho.name}*")


def tensor_rep(rho_a: Representation, rho_b: Representation) -> Representation:
    if not rho_a.group.same_as(rho_b.group):
        raise ValueError("Tensor product of representations of different groups")
    return Representation(
        rho_a.group,
        [tensor(A, B) for A, B in zip(rho_a.images, rho_b.images)],
        name=f"{rho_a.name}x{rho_b.name}",
    )


def permutation_rep(X: GSet) -> Representation:
    """Permutation matrices of a left G-set: rho(g) e_x = e_{g.x}"""
    if X.side != "left":
        raise ValueError("Permutation representations need a left action")
    n = len(X.points)
    images = []
    for g in range(X.group.order):
        P = np.zeros((n, n), dtype=complex)
        P[X.action[g], np.arange(n)] = 1
        images.append(P)
    return Representation(X.group, images, name="perm")


def is_permutation_matrix(M: np.ndarray, tol: float = TOLERANCE) -> bool:
    M = np.asarray(M)
    ones = np.isclose(M, 1, atol=tol)
    zeros = np.isclose(M, 0, atol=tol)
    return bool(
        (ones | zeros).all() and (ones.sum(axis=0) == 1).all() and (ones.sum(axis=1) == 1).all()
    )


# ===== ENTANGLED STATES =====


def bell_state(n: int) -> np.ndarray:
    """(1/sqrt n) sum_i |ii>, in the kron ordering |i>|j> -> i*n + j"""
    if n < 1:
        raise ValueError("Dimension must be positive")
    return np.eye(n, dtype=complex).ravel() / np.sqrt(n)


def twisted_bell(X: np.ndarray) -> np.ndarray:
    """(1 x X)|eta>"""
    X = np.asarray(X, dtype=complex)
    if not is_unitary(X):
        raise ValueError("Resource twist X must be unitary")
    n = X.shape[0]
    return tensor(np.eye(n), X) @ bell_state(n)


def state_matrix(state: np.ndarray, n: int) -> np.ndarray:
    """Coefficient matrix C with state = sum C[i, j] |i>|j>"""
    return np.asarray(state).reshape(n, -1)


def reduced_density_matrix(state: np.ndarray, dim_a: int, keep: str = "A") -> np.ndarray:
    C = state_matrix(state, dim_a)
    if keep == "A":
        return C @ C.conj().T
    if keep == "B":
        return C.T @ C.conj()
    raise ValueError(f"Unknown subsystem {keep}")


def is_maximally_entangled(state: np.ndarray, n: int, tol: float = TOLERANCE) -> bool:
    return matrices_close(reduced_density_matrix(state, n, "B"), np.eye(n) / n, tol)


def density_matrix(psi: np.ndarray) -> np.ndarray:
    psi = np.asarray(psi)
    return np.outer(psi, psi.conj())


def purity(rho: np.ndarray) -> float:
    return float(np.real(np.trace(rho @ rho)))


def fidelity(psi: np.ndarray, output: np.ndarray) -> float:
    """<psi|out> overlap squared for a vector output, <psi|rho|psi> for a density matrix"""
    psi = np.asarray(psi)
    output = np.asarray(output)
    if output.ndim == 1:
        value = abs(np.vdot(psi, output)) ** 2 / np.vdot(output, output).real
    else:
        value = np.vdot(psi, output @ psi).real
    return float(min(1.0, max(0.0, value)))


# ===== INVARIANT RESOURCE STATES =====


def invariance_phase_system(
    rho_a: Representation, rho_b: Representation, V: np.ndarray, tol: float = TOLERANCE
) -> Optional[np.ndarray]:
    """
    theta with rho_B(g) V rho_A(g)^T = theta(g) V for every g, or None

    Returns:
        Array of unit complex numbers indexed by group element, checked to be
        a homomorphism G -> U(1)
    """
    if rho_a.dim != rho_b.dim or V.shape != (rho_a.dim, rho_a.dim):
        raise ValueError("Dimension mismatch between representations and V")
    G = rho_a.group
    theta = np.empty(G.order, dtype=complex)
    for g in range(G.order):
        M = rho_b(g) @ V @ rho_a(g).T
        lam = scalar_multiple(V, M, tol)
        if lam is None or abs(abs(lam) - 1) > tol * 10:
            return None
        theta[g] = lam
    for g in range(G.order):
        for h in range(G.order):
            if abs(theta[G.mul(g, h)] - theta[g] * theta[h]) > tol * 10:
                return None
    return theta


def invariant_entangled_state(
    rho_a: Representation, rho_b: Representation, tol: float = TOLERANCE
) -> Optional[Tuple[np.ndarray, np.ndarray]]:
    """
    A unitary V and a one-dimensional character theta with
    rho_B(g) V rho_A(g)^T = theta(g) V, or None when no character works.

    For each candidate theta the solutions V form the null space of
    (rho_A(g) x rho_B(g) - theta(g)) acting on column-stacked V; a unitary
    member, if any, is the polar part of a generic invertible solution.
    """
    if rho_a.dim != rho_b.dim:
        raise ValueError("Invariant maximally entangled states need equal dimensions")
    G, n = rho_a.group, rho_a.dim
    rng = np.random.default_rng(0)
    for theta_rep in linear_character_reps(G):
        theta = np.array([M[0, 0] for M in theta_rep.images])
        blocks = [
            np.kron(rho_a(g), rho_b(g)) - theta[g] * np.eye(n * n) for g in range(G.order)
        ]
        basis = null_space(np.vstack(blocks), rcond=tol)
        if basis.shape[1] == 0:
            continue
        coefficients = rng.normal(size=basis.shape[1]) + 1j * rng.normal(size=basis.shape[1])
        V = (basis @ coefficients).reshape(n, n, order="F")
        if np.linalg.svd(V, compute_uv=False)[-1] < tol * 1e3:
            continue
        U, _ = polar(V)
        U = _fix_global_phase(U)
        if invariance_phase_system(rho_a, rho_b, U, tol) is not None:
            return U, theta
    return None


def _fix_global_phase(M: np.ndarray) -> np.ndarray:
    """Make the first entry of largest modulus real and positive"""
    flat = M.ravel()
    k = int(np.argmax(np.abs(flat) > np.abs(flat).max() - 1e-9))
    return M * (abs(flat[k]) / flat[k])


def state_invariance_holds(
    rho_a: Representation, rho_b: Representation, V: np.ndarray, theta: np.ndarray, tol=TOLERANCE
) -> bool:
    """(rho_A(g) x rho_B(g)) (1 x V)|eta> = theta(g) (1 x V)|eta> for every g"""
    state = twisted_bell(V)
    return all(
        np.allclose(tensor(rho_a(g), rho_b(g)) @ state, theta[g] * state, atol=tol)
        for g in range(rho_a.group.order)
    )
