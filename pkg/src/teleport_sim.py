"""
Teleportation Simulator
State-vector simulation of conventional and reference-frame-independent
teleportation, worked in Alice's frame, with the dynamical robustness and
no-leakage experiments
"""

from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np
import pandas as pd
from config import *
from errors import VerificationError
from channel_model import (
    UnspeakableChannel,
    compatible_channel_for,
    leakage_stats,
    max_total_variation,
    speakable_channel,
)
from group_core import invert_side
from ueb_engine import UEB, EquivariantUEB
from unitary_core import (
    Representation,
    dagger,
    density_matrix,
    dual_rep,
    fidelity,
    invariance_phase_system,
    invariant_entangled_state,
    is_unitary,
    purity,
    random_state,
    tensor,
    twisted_bell,
)


@dataclass
class ProtocolSpec:
    """
    Shared setup of the frame-independent protocol: the system representation,
    the representations carried by Alice's and Bob's halves of the resource
    (1 x X)|eta>, the equivariant UEB and a channel whose action is tau^-1
    """

    rho: Representation
    rho_alice: Representation
    rho_bob: Representation
    X: np.ndarray
    eueb: EquivariantUEB
    channel: UnspeakableChannel
    theta: np.ndarray = field(default=None)

    @property
    def n(self) -> int:
        return self.rho.dim

    @property
    def ueb(self) -> UEB:
        return self.eueb.ueb

    def validate(self, tol: float = TOLERANCE):
        """
        Raises:
            VerificationError: the resource is not invariant up to a phase,
                or the channel action is not tau^-1
        """
        theta = invariance_phase_system(self.rho_alice, self.rho_bob, self.X, tol)
        if theta is None:
            raise VerificationError("resource state is not invariant up to a phase")
        self.theta = theta
        if not self.channel_is_compatible():
            raise VerificationError(
                "channel action is not tau^-1; a frame-independent protocol needs the channel to carry tau^-1"
            )
        return self

    def channel_is_compatible(self) -> bool:
        expected = invert_side(self.eueb.tau)
        return self.channel.group.same_as(self.rho.group) and np.array_equal(
            self.channel.messages.action, expected.action
        )


@dataclass
class Transcript:
    """One protocol run, recorded in Alice's frame"""

    input_state: List[complex]
    outcome: int
    probability: float
    wire: str
    received: int
    correction: int
    output_state: List[complex]
    g: str
    g_receive: Optional[str]
    fidelity: float
    seed: int

    def to_dict(self) -> Dict:
        record = asdict(self)
        record["input_state"] = [[z.real, z.imag] for z in self.input_state]
        record["output_state"] = [[z.real, z.imag] for z in self.output_state]
        return record


def build_protocol_spec(
    eueb: EquivariantUEB,
    channel: Optional[UnspeakableChannel] = None,
    X: Optional[np.ndarray] = None,
    rho_alice: Optional[Representation] = None,
    rho_bob: Optional[Representation] = None,
) -> ProtocolSpec:
    """
    Fill defaults: Alice's half carries the dual of rho, Bob's half rho, the
    twist X is searched over characters, the channel is the compatible
    composite built from the regular reference frame channel
    """
    rho = eueb.rep
    rho_alice = rho_alice or dual_rep(rho)
    rho_bob = rho_bob or rho
    if X is None:
        found = invariant_entangled_state(rho_alice, rho_bob)
        if found is None:
            raise VerificationError("no maximally entangled resource is invariant up to a phase")
        X = found[0]
    channel = channel or compatible_channel_for(eueb.tau)
    return ProtocolSpec(rho, rho_alice, rho_bob, np.asarray(X, dtype=complex), eueb, channel).validate()


# ===== PROTOCOL PRIMITIVES =====


def measurement_basis(ueb: UEB, X: np.ndarray, tol: float = TOLERANCE) -> List[np.ndarray]:
    """
    |phi_i> = (1 x X^T U_i^T)|eta>

    Raises:
        VerificationError: the basis is not orthonormal
    """
    X = np.asarray(X, dtype=complex)
    n = ueb.dim
    if X.shape != (n, n):
        raise ValueError(f"Twist has shape {X.shape}, basis dimension is {n}")
    eta = np.eye(n, dtype=complex).ravel() / np.sqrt(n)
    basis = [tensor(np.eye(n), X.T @ U.T) @ eta for U in ueb.elements]
    B = np.array(basis)
    gram = B.conj() @ B.T
    if not np.allclose(gram, np.eye(len(basis)), atol=tol):
        raise VerificationError("measurement basis is not orthonormal")
    return basis


def _bob_states(psi: np.ndarray, ueb: UEB, X: np.ndarray) -> List[np.ndarray]:
    """Bob's unnormalised state for each of Alice's outcomes; system order S, A, B"""
    n = ueb.dim
    total = np.kron(psi, twisted_bell(X)).reshape(n * n, n)
    return [phi.conj() @ total for phi in measurement_basis(ueb, X)]


def _pick_outcome(states: List[np.ndarray], forced: Optional[int], rng: np.random.Generator):
    probabilities = np.array([np.vdot(s, s).real for s in states])
    if forced is not None:
        return forced, probabilities
    # inverse-CDF draw
    cdf = np.cumsum(probabilities / probabilities.sum())
    return int(min(np.searchsorted(cdf, rng.random(), side="right"), len(states) - 1)), probabilities


def _normalised(v: np.ndarray) -> np.ndarray:
    return v / np.linalg.norm(v)


def conventional_teleport(
    psi: np.ndarray, ueb: UEB, X: np.ndarray, forced_outcome: Optional[int] = None, seed: int = DEFAULT_SEED
) -> Transcript:
    """Measure, send i over a perfect speakable channel, correct with U_i"""
    psi = _normalised(np.asarray(psi, dtype=complex))
    rng = np.random.default_rng(seed)
    states = _bob_states(psi, ueb, X)
    i, probabilities = _pick_outcome(states, forced_outcome, rng)
    out = _normalised(ueb.elements[i] @ states[i])
    return Transcript(
        list(psi), i, float(probabilities[i]), str(i), i, i, list(out), "e", None, fidelity(psi, out), seed
    )


def rf_teleport(
    spec: ProtocolSpec,
    psi: np.ndarray,
    g: int,
    forced_outcome: Optional[int] = None,
    seed: int = DEFAULT_SEED,
    g_receive: Optional[int] = None,
) -> Transcript:
    """
    Alice measures i and sends it over the unspeakable channel; Bob reads
    j = sigma(g, i) and applies U_j in his frame, which acts in Alice's
    frame as rho_B(g)^dagger U_j rho_B(g), a phase times U_i

    Args:
        g: Misalignment at transmission
        g_receive: Misalignment at receipt (defaults to g)

    Raises:
        VerificationError: the channel does not carry tau^-1
    """
    if not spec.channel_is_compatible():
        raise VerificationError(
            "channel action is not tau^-1; a frame-independent protocol needs the channel to carry tau^-1"
        )
    return _run_with_channel(spec, psi, g, forced_outcome, seed, g_receive)


def _run_with_channel(spec, psi, g, forced_outcome, seed, g_receive=None) -> Transcript:
    G = spec.rho.group
    g_receive = g if g_receive is None else g_receive
    psi = _normalised(np.asarray(psi, dtype=complex))
    rng = np.random.default_rng(seed)
    states = _bob_states(psi, spec.ueb, spec.X)
    i, probabilities = _pick_outcome(states, forced_outcome, rng)
    # the channel acts by the relative transformation at receipt
    wire, j = spec.channel.send(i, g_receive, rng)
    R = spec.rho_bob(g_receive)
    out = _normalised(dagger(R) @ spec.ueb.elements[j] @ R @ states[i])
    return Transcript(
        list(psi),
        i,
        float(probabilities[i]),
        str(wire),
        j,
        j,
        list(out),
        G.label(g),
        G.label(g_receive) if g_receive != g else None,
        fidelity(psi, out),
        seed,
    )


def observer_fidelity(spec: ProtocolSpec, transcript: Transcript, h: int) -> float:
    """Fidelity seen by a third observer whose frame differs from Alice's by h"""
    psi = np.array(transcript.input_state)
    out = np.array(transcript.output_state)
    return fidelity(spec.rho(h) @ psi, spec.rho_bob(h) @ out)


def misaligned_conventional(
    psi: np.ndarray,
    ueb: UEB,
    X: np.ndarray,
    rho_bob: Representation,
    distribution: Optional[Sequence[float]] = None,
) -> Dict:
    """
    The conventional protocol when Bob's frame is misaligned by g drawn from
    `distribution`: his correction U_i acts as rho(g)^dagger U_i rho(g)

    Returns:
        {"fidelity": average fidelity, "output": averaged density matrix, "purity": its purity}
    """
    G = rho_bob.group
    p = np.full(G.order, 1 / G.order) if distribution is None else np.asarray(distribution, dtype=float)
    psi = _normalised(np.asarray(psi, dtype=complex))
    states = _bob_states(psi, ueb, X)
    output = np.zeros((ueb.dim, ueb.dim), dtype=complex)
    for g in range(G.order):
        if p[g] == 0:
            continue
        R = rho_bob(g)
        for i, s in enumerate(states):
            weight = np.vdot(s, s).real
            out = _normalised(dagger(R) @ ueb.elements[i] @ R @ s)
            output += p[g] * weight * density_matrix(out)
    return {"fidelity": fidelity(psi, output), "output": output, "purity": purity(output)}


def dynamical_robustness_run(
    spec: ProtocolSpec, psi: np.ndarray, g_at_send: int, g_at_receive: int, forced_outcome=None, seed=DEFAULT_SEED
) -> Transcript:
    """
    The frame relation drifts from g_at_send to g_at_receive while the message
    is in flight. Alice's frame is the reference, so g_at_send only labels the
    run: the state and message depend on the receive-time transform alone.
    """
    return rf_teleport(spec, psi, g_at_send, forced_outcome, seed, g_receive=g_at_receive)


def prealigned_run(
    spec: ProtocolSpec, psi: np.ndarray, g_at_send: int, g_at_receive: int, forced_outcome=None, seed=DEFAULT_SEED
) -> Transcript:
    """
    Negative control: i goes over a speakable channel and Bob pre-compensates
    his correction for the alignment measured at send time. Succeeds only
    when the frame does not drift.
    """
    G = spec.rho.group
    psi = _normalised(np.asarray(psi, dtype=complex))
    rng = np.random.default_rng(seed)
    states = _bob_states(psi, spec.ueb, spec.X)
    i, probabilities = _pick_outcome(states, forced_outcome, rng)
    channel = speakable_channel(G, len(spec.ueb))
    wire, j = channel.send(i, g_at_receive, rng)
    S, R = spec.rho_bob(g_at_send), spec.rho_bob(g_at_receive)
    correction = S @ spec.ueb.elements[j] @ dagger(S)
    out = _normalised(dagger(R) @ correction @ R @ states[i])
    return Transcript(
        list(psi),
        i,
        float(probabilities[i]),
        str(wire),
        j,
        j,
        list(out),
        G.label(g_at_send),
        G.label(g_at_receive),
        fidelity(psi, out),
        seed,
    )


def incompatible_run(spec: ProtocolSpec, channel: UnspeakableChannel, psi, g, forced_outcome=None, seed=DEFAULT_SEED):
    """Run the protocol over an arbitrary channel, skipping the compatibility check"""
    swapped = ProtocolSpec(spec.rho, spec.rho_alice, spec.rho_bob, spec.X, spec.eueb, channel, spec.theta)
    return _run_with_channel(swapped, psi, g, forced_outcome, seed)


def no_leakage_experiment(
    spec: ProtocolSpec,
    samples: int = LEAKAGE_SAMPLES,
    seed: int = DEFAULT_SEED,
    forced_outcome: Optional[int] = None,
) -> Dict:
    """
    Wire-symbol distributions per misalignment when Alice's outcome follows
    the Born rule (or is forced, as a negative control)

    Returns:
        {"distributions": DataFrame, "max_tv": float}
    """
    psi = random_state(spec.n, np.random.default_rng(seed))
    states = _bob_states(psi, spec.ueb, spec.X)
    born = np.array([np.vdot(s, s).real for s in states])
    if forced_outcome is None:
        distribution = born / born.sum()
    else:
        distribution = np.zeros(len(states))
        distribution[forced_outcome] = 1.0
    frame = leakage_stats(spec.channel, distribution, samples, seed)
    return {"distributions": frame, "max_tv": max_total_variation(frame)}


def sweep(spec: ProtocolSpec, n_states: int = 20, seed: int = DEFAULT_SEED) -> pd.DataFrame:
    """
    rf_teleport over random input states, every misalignment and every
    forced outcome

    Returns:
        One row per (state, g, outcome)
    """
    G = spec.rho.group
    rng = np.random.default_rng(seed)
    rows = []
    print(f"🔧 Sweeping {n_states} states x {G.order} misalignments x {len(spec.ueb)} outcomes...")
    for k in range(n_states):
        psi = random_state(spec.n, rng)
        for g in range(G.order):
            for i in range(len(spec.ueb)):
                t = rf_teleport(spec, psi, g, forced_outcome=i, seed=seed)
                rows.append(
                    {
                        "state": k,
                        "g": G.label(g),
                        "outcome": i,
                        "received": t.received,
                        "probability": t.probability,
                        "fidelity": t.fidelity,
                    }
                )
    frame = pd.DataFrame(rows)
    print(f"✅ Sweep done: min fidelity {frame['fidelity'].min():.12f}")
    return frame


def sweep_summary(frame: pd.DataFrame) -> pd.DataFrame:
    summary = frame.groupby("g", sort=False).agg(
        outcomes=("outcome", "nunique"),
        min_fidelity=("fidelity", "min"),
        mean_fidelity=("fidelity", "mean"),
    )
    return summary.reset_index()
