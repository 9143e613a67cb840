"""
Worked Fixtures
Named groups, representations, bases and protocols used by the command line
and the reproduction script
"""

from typing import Callable, Dict, Tuple

import numpy as np
from config import *
from channel_model import arrows_channel
from group_core import FiniteGroup, build_group, natural_gset
from oeb_catalog import binary_lift, discrete_catalog
from rotation_geometry import PAULI_X
from teleport_sim import ProtocolSpec, build_protocol_spec
from ueb_engine import (
    OMEGA,
    EquivariantUEB,
    commuting_hadamard,
    example_ueb,
    hadamard_ueb,
    lift_oeb,
    verify_equivariant,
)
from unitary_core import Representation, matrix_group, permutation_rep


def z3_example() -> Tuple[FiniteGroup, Representation, EquivariantUEB]:
    """Z3 acting on a qubit by diag(1, omega), with the basis it permutes as (0)(1 3 2)"""
    G, rho = matrix_group([np.diag([1, OMEGA])], name="Z3")
    return G, rho, verify_equivariant(example_ueb(), rho)


def z3_protocol() -> ProtocolSpec:
    """
    Both halves of the resource carry diag(1, omega) and the twist is Pauli X;
    the channel is the four tetrahedron arrows turned about the first one
    """
    G, rho, eueb = z3_example()
    channel = arrows_channel(G, G.index_of("a"))
    return build_protocol_spec(eueb, channel=channel, X=PAULI_X, rho_alice=rho, rho_bob=rho)


def binary_tetrahedral_example() -> Tuple[FiniteGroup, Representation, EquivariantUEB]:
    """The binary tetrahedral group on a qubit with a lifted tetrahedral OEB"""
    G, rho = binary_lift("A4")
    return G, rho, lift_oeb(discrete_catalog("A4")[0], rho)


def binary_tetrahedral_protocol() -> ProtocolSpec:
    G, rho, eueb = binary_tetrahedral_example()
    return build_protocol_spec(eueb, X=np.eye(2, dtype=complex))


def s3_hadamard_example() -> Tuple[FiniteGroup, Representation, EquivariantUEB]:
    """S3 permuting a qutrit's basis, with the UEB built from the commuting Hadamard"""
    G = build_group("S3")
    rho = permutation_rep(natural_gset(G))
    return G, rho, hadamard_ueb(rho, commuting_hadamard(3))


def s3_hadamard_protocol() -> ProtocolSpec:
    G, rho, eueb = s3_hadamard_example()
    return build_protocol_spec(eueb, X=np.eye(3, dtype=complex))


EXAMPLES: Dict[str, Callable[[], Tuple[FiniteGroup, Representation, EquivariantUEB]]] = {
    "z3": z3_example,
    "binary-tetrahedral": binary_tetrahedral_example,
    "s3-hadamard": s3_hadamard_example,
}

PROTOCOLS: Dict[str, Callable[[], ProtocolSpec]] = {
    "z3": z3_protocol,
    "binary-tetrahedral": binary_tetrahedral_protocol,
    "s3-hadamard": s3_hadamard_protocol,
}


def protocol_named(name: str) -> ProtocolSpec:
    if name not in PROTOCOLS:
        raise ValueError(f"Unknown protocol fixture: {name} (choose from {', '.join(PROTOCOLS)})")
    return PROTOCOLS[name]()


def example_named(name: str) -> Tuple[FiniteGroup, Representation, EquivariantUEB]:
    if name not in EXAMPLES:
        raise ValueError(f"Unknown example: {name} (choose from {', '.join(EXAMPLES)})")
    return EXAMPLES[name]()
