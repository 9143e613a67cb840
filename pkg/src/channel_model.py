"""
Channel Model
Unspeakable classical channels as left G-sets: reference frame systems,
quotient channels, orbit-splitting composite channels, decohered quantum
channels and their transmission semantics
"""

import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd
from config import *
from errors import VerificationError
from group_core import (
    ConjClassOfSubgroups,
    FiniteGroup,
    GSet,
    Subgroup,
    build_group,
    class_index_of,
    coset_gset,
    conjugacy_classes_of_subgroups,
    gset_from_permutations,
    invert_side,
    orbits,
    regular_gset,
    stabilizer,
    trivial_gset,
)
from oeb_catalog import so3_subgroup
from rotation_geometry import rotation
from unitary_core import Representation

CHANNEL_KINDS = ("rf_system", "quotient", "composite", "decohered_quantum", "speakable")


@dataclass
class UnspeakableChannel:
    """
    A perfect classical channel whose messages carry the left action sigma.

    Quotient channels encode message k as a uniformly random base message
    from blocks[k] and decode received base messages through `decode`.
    Composite channels send a speakable orbit label with one sub-channel per
    orbit; parts[p] = (orbit, sub-channel, orbit position -> sub-message).
    """

    group: FiniteGroup
    messages: GSet
    kind: str
    name: str = ""
    base: Optional["UnspeakableChannel"] = None
    blocks: Optional[List[List[int]]] = None
    decode: Optional[np.ndarray] = None
    parts: Optional[List[Tuple[List[int], "UnspeakableChannel", List[int]]]] = None

    def __post_init__(self):
        if self.messages.side != "left":
            raise ValueError("Channel messages need a left action")
        if self.kind not in CHANNEL_KINDS:
            raise ValueError(f"Unknown channel kind: {self.kind}")

    @property
    def size(self) -> int:
        return len(self.messages)

    def sigma(self, g: int, m: int) -> int:
        return self.messages.act(g, m)

    def send(self, m: int, g: int, rng: np.random.Generator) -> Tuple[Union[int, Tuple], int]:
        """
        One use of the channel under misalignment g

        Returns:
            (wire symbol as read in the receiver's frame, decoded message)
        """
        if not 0 <= m < self.size:
            raise ValueError(f"Message {m} outside 0..{self.size - 1}")
        if self.kind == "quotient":
            y = int(rng.choice(self.blocks[m]))
            wire, received = self.base.send(y, g, rng)
            return wire, int(self.decode[received])
        if self.kind == "composite":
            for orbit, sub, encode in self.parts:
                if m in orbit:
                    wire, received = sub.send(encode[orbit.index(m)], g, rng)
                    return (orbit[0], wire), orbit[encode.index(received)]
        received = self.sigma(g, m)
        return received, received

    def to_dict(self) -> Dict:
        return {
            "kind": self.kind,
            "name": self.name,
            "group": self.group.to_dict(),
            "messages": [str(p) for p in self.messages.points],
            "sigma": {str(g): self.messages.action[g].tolist() for g in range(self.group.order)},
        }


@dataclass
class FrameConfigSpace:
    """
    Frame configurations with a free transitive left action and the map
    epsilon into reference system configurations, epsilon(g.f) = g.epsilon(f)
    """

    configurations: GSet
    system: GSet
    epsilon: List[int]

    def __post_init__(self):
        if not (self.configurations.is_free() and self.configurations.is_transitive()):
            raise VerificationError("frame configurations must carry a free transitive action")
        G = self.configurations.group
        for g in range(G.order):
            for f in range(len(self.configurations)):
                if self.epsilon[self.configurations.act(g, f)] != self.system.act(g, self.epsilon[f]):
                    raise VerificationError(
                        f"epsilon is not natural at ({G.label(g)}, configuration {f})"
                    )

    def relative_transform(self, f_a: int, f_b: int) -> int:
        """The unique g with g.f_a = f_b"""
        G = self.configurations.group
        return next(g for g in range(G.order) if self.configurations.act(g, f_a) == f_b)

    def labelling(self, f: int) -> List[int]:
        """[g] = g.epsilon(f): the system configuration a lab at f calls g"""
        G = self.configurations.group
        return [self.system.act(g, self.epsilon[f]) for g in range(G.order)]


# ===== CHANNEL CONSTRUCTORS =====


def rf_channel(G: FiniteGroup, name: str = "") -> UnspeakableChannel:
    """Messages are the elements of G with sigma(g, x) = x g^-1"""
    action = np.array([[G.mul(x, G.inv(g)) for x in range(G.order)] for g in range(G.order)])
    messages = GSet(G, [G.label(x) for x in range(G.order)], action, side="left")
    return UnspeakableChannel(G, messages, "rf_system", name or f"rf-{G.name}")


def reference_system_channel(space: FrameConfigSpace, name: str = "") -> UnspeakableChannel:
    """
    The channel read off a shared reference system: Alice at f_A prepares the
    configuration her labelling calls x, Bob at g.f_A reads it in his own.

    Raises:
        VerificationError: the reading is ambiguous or depends on f_A
    """
    G = space.configurations.group
    action = np.full((G.order, G.order), -1)
    for f_a in range(len(space.configurations)):
        alice = space.labelling(f_a)
        for g in range(G.order):
            bob = {c: y for y, c in enumerate(space.labelling(space.configurations.act(g, f_a)))}
            if len(bob) != G.order:
                raise VerificationError("reference system configurations are not labelled uniquely")
            received = [bob[alice[x]] for x in range(G.order)]
            if action[g, 0] >= 0 and list(action[g]) != received:
                raise VerificationError(f"reading of {G.label(g)} depends on the sender's frame")
            action[g] = received
    messages = GSet(G, [G.label(x) for x in range(G.order)], action, side="left")
    return UnspeakableChannel(G, messages, "rf_system", name or f"rf-{G.name}")


def speakable_channel(G: FiniteGroup, n_messages: int) -> UnspeakableChannel:
    return UnspeakableChannel(G, trivial_gset(G, n_messages), "speakable", f"speakable-{n_messages}")


def _base_point_with_stabilizer(base: UnspeakableChannel, H: Subgroup) -> int:
    for x in range(base.size):
        if stabilizer(base.messages, x).members == H.members:
            return x
    raise ValueError("H is not the stabilizer of any base message")


def _coset_index(cosets: List[Tuple[int, ...]], g: int) -> int:
    return next(k for k, c in enumerate(cosets) if g in c)


def quotient_channel(
    base: UnspeakableChannel, H_base: Subgroup, K: Subgroup, seed: int = DEFAULT_SEED
) -> UnspeakableChannel:
    """
    Messages are the right cosets Kx with sigma(g, Kx) = K x g^-1. Message Kx
    is sent as a uniformly random base message whose image lies in Kx.

    Args:
        base: Transitive channel
        H_base: Stabilizer of some base message
        K: Subgroup containing H_base
        seed: Default seed recorded for transmissions
    """
    G = base.group
    if not base.messages.is_transitive():
        raise ValueError("Quotient channels need a transitive base channel")
    if not H_base.issubset(K):
        raise ValueError("H_base is not contained in K")
    x0 = _base_point_with_stabilizer(base, H_base)
    messages = coset_gset(G, K)
    cosets = messages.cosets

    # base message u.x0 decodes to the coset K u^-1
    decode = np.empty(base.size, dtype=int)
    for u in range(G.order):
        decode[base.sigma(u, x0)] = _coset_index(cosets, G.inv(u))
    blocks = [sorted(int(y) for y in np.flatnonzero(decode == k)) for k in range(len(cosets))]
    return UnspeakableChannel(
        G, messages, "quotient", f"{base.name}/K{K.order}", base=base, blocks=blocks, decode=decode
    )


def compatible_channel_for(
    tau: GSet, base: Optional[UnspeakableChannel] = None, seed: int = DEFAULT_SEED
) -> UnspeakableChannel:
    """
    A composite channel on the index set of tau whose end-to-end action is
    tau^-1: a speakable orbit label and, per orbit, the quotient of the base
    channel by the stabilizer of the orbit's smallest index

    Raises:
        VerificationError: no base message has a stabilizer inside the
            orbit's stabilizer
    """
    if tau.side != "right":
        raise ValueError("Compatible channels are built from a right action")
    G = tau.group
    base = base or rf_channel(G)
    sigma = invert_side(tau)
    parts = []
    for orbit in orbits(sigma):
        i0 = orbit[0]
        S = stabilizer(sigma, i0)
        H_base = next(
            (stabilizer(base.messages, y) for y in range(base.size) if stabilizer(base.messages, y).issubset(S)),
            None,
        )
        if H_base is None:
            raise VerificationError(
                f"base channel stabilizers are not below the stabilizer class of orbit {orbit}"
            )
        sub = quotient_channel(base, H_base, S, seed)
        encode = [0] * len(orbit)
        # i = u.i0 corresponds to the coset S u^-1
        for u in range(G.order):
            encode[orbit.index(sigma.act(u, i0))] = _coset_index(sub.messages.cosets, G.inv(u))
        parts.append((orbit, sub, encode))
    channel = UnspeakableChannel(
        G,
        GSet(G, list(tau.points), sigma.action, side="left"),
        "composite",
        f"compatible-{base.name}",
        base=base,
        parts=parts,
    )
    return channel


def decohered_quantum_channel(
    basis: Sequence[np.ndarray], rep_pair: Representation, expected: Optional[GSet] = None, tol: float = TOLERANCE
) -> UnspeakableChannel:
    """
    Messages are measurement basis indices; g sends |phi_i> to a multiple of
    |phi_sigma(g, i)> under the representation on the measured pair

    Raises:
        VerificationError: the group does not permute basis rays, or the
            derived action differs from `expected`
    """
    G = rep_pair.group
    B = np.array(basis)
    action = np.empty((G.order, len(basis)), dtype=int)
    for g in range(G.order):
        overlaps = np.abs(B.conj() @ (rep_pair(g) @ B.T))
        for i in range(len(basis)):
            hits = np.flatnonzero(np.abs(overlaps[:, i] - 1) < tol * 10)
            if len(hits) != 1:
                raise VerificationError(f"{G.label(g)} does not send basis ray {i} to a basis ray")
            action[g, i] = hits[0]
    messages = GSet(G, list(range(len(basis))), action, side="left")
    if not messages.axioms_hold():
        raise VerificationError("ray permutations do not form a left action")
    if expected is not None and not np.array_equal(expected.action, action):
        raise VerificationError("ray action of the measurement basis differs from the declared action")
    return UnspeakableChannel(G, messages, "decohered_quantum", "decohered")


def channel_from_dict(data: Dict) -> UnspeakableChannel:
    """Channel described by its action table only; transmission uses sigma directly"""
    G = FiniteGroup.from_dict(data["group"])
    action = np.array([data["sigma"][str(g)] for g in range(G.order)])
    messages = GSet(G, list(data["messages"]), action, side="left")
    if not messages.axioms_hold():
        raise VerificationError("sigma is not a left action")
    return UnspeakableChannel(G, messages, data.get("kind", "rf_system"), data.get("name", ""))


# ===== TRANSMISSION =====


def transmit(ch: UnspeakableChannel, message: int, g: int, seed: int = DEFAULT_SEED) -> int:
    _, received = ch.send(message, g, np.random.default_rng(seed))
    return received


def transmit_record(ch: UnspeakableChannel, message: int, g: int, seed: int = DEFAULT_SEED) -> Dict:
    wire, received = ch.send(message, g, np.random.default_rng(seed))
    return {"sent": message, "wire": _wire_text(wire), "g": ch.group.label(g), "received": received, "seed": seed}


def _wire_text(wire) -> str:
    if isinstance(wire, tuple):
        return ":".join(_wire_text(w) for w in wire)
    return str(int(wire))


def wire_samples(
    ch: UnspeakableChannel, messages: Sequence[int], g: int, rng: np.random.Generator
) -> List[str]:
    return [_wire_text(ch.send(int(m), g, rng)[0]) for m in messages]


def leakage_stats(
    ch: UnspeakableChannel,
    distribution: Optional[Sequence[float]] = None,
    samples: int = LEAKAGE_SAMPLES,
    seed: int = DEFAULT_SEED,
) -> pd.DataFrame:
    """
    Empirical wire-symbol distribution per misalignment g when messages are
    drawn from `distribution` (uniform by default)

    Returns:
        DataFrame indexed by wire symbol, one column per group element label
    """
    G = ch.group
    p = np.full(ch.size, 1 / ch.size) if distribution is None else np.asarray(distribution, dtype=float)
    if len(p) != ch.size or abs(p.sum() - 1) > 1e-9:
        raise ValueError("Message distribution must cover every message and sum to 1")
    rng = np.random.default_rng(seed)
    columns = {}
    for g in range(G.order):
        sent = rng.choice(ch.size, size=samples, p=p)
        wires = pd.Series(wire_samples(ch, sent, g, rng))
        columns[G.label(g)] = wires.value_counts(normalize=True)
    return pd.DataFrame(columns).fillna(0.0).sort_index()


def max_total_variation(frame: pd.DataFrame) -> float:
    """Largest pairwise total-variation distance between the columns"""
    values = frame.to_numpy()
    worst = 0.0
    for a in range(values.shape[1]):
        for b in range(a + 1, values.shape[1]):
            worst = max(worst, 0.5 * float(np.abs(values[:, a] - values[:, b]).sum()))
    return worst


def stabilizer_class(ch: UnspeakableChannel) -> ConjClassOfSubgroups:
    """Conjugacy class of message stabilizers of a transitive channel"""
    if not ch.messages.is_transitive():
        raise ValueError("Stabilizer class is defined for transitive channels only")
    classes = conjugacy_classes_of_subgroups(ch.group)
    return classes[class_index_of(classes, stabilizer(ch.messages, 0))]


def end_to_end_action(ch: UnspeakableChannel, seed: int = DEFAULT_SEED) -> np.ndarray:
    """received[g, m] over every (g, m), for checking transmission laws"""
    rng = np.random.default_rng(seed)
    return np.array(
        [[ch.send(m, g, rng)[1] for m in range(ch.size)] for g in range(ch.group.order)]
    )


# ===== FIXTURES =====

ARROWS = [np.array(v) / math.sqrt(3) for v in [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)]]


def arrows_channel(G: FiniteGroup, generator: int) -> UnspeakableChannel:
    """
    Four arrows at tetrahedron vertices v0..v3; the generator turns the frame
    by 2pi/3 about v0, so sigma(a) = (0)(1 2 3)
    """
    R = rotation(2 * math.pi / 3, ARROWS[0]).matrix()
    perm = []
    for v in ARROWS:
        image = R @ v
        perm.append(next(j for j, w in enumerate(ARROWS) if np.allclose(image, w, atol=1e-9)))
    messages = gset_from_permutations(G, {generator: perm}, [f"v{k}" for k in range(4)], side="left")
    return UnspeakableChannel(G, messages, "rf_system", "arrows")


def cube_channel() -> Tuple[UnspeakableChannel, FrameConfigSpace]:
    """A cube's orientations under the octahedral rotation group: a free transitive system"""
    G = so3_subgroup("S4").group
    configurations = regular_gset(G, "left")
    space = FrameConfigSpace(configurations, regular_gset(G, "left"), list(range(G.order)))
    return reference_system_channel(space, "cube"), space


def clock_channel(n: int = 12) -> UnspeakableChannel:
    """Time translations Zn acting on clock readings"""
    return rf_channel(build_group(f"Z{n}"), f"clock-{n}")
