"""
Finite Groups and G-sets
Multiplication-table groups, subgroups, cosets, conjugacy classes of
subgroups and finite group actions
"""

import itertools
import math
import re
from dataclasses import dataclass, field
from typing import Callable, Dict, Hashable, List, Optional, Sequence, Tuple

import numpy as np
from config import *


class FiniteGroup:
    """
    A finite group stored as an index -> element lookup and a Cayley table on
    indices. Methods work on indices; `elements` only carries labels.
    """

    def __init__(self, elements: Sequence, table, identity: int = 0, name: str = "G"):
        """
        Args:
            elements: Element identifiers (permutation image tuples or words)
            table: table[a, b] = index of a*b
            identity: Index of the identity element
            name: Label string
        """
        self.elements = list(elements)
        self.table = np.asarray(table, dtype=int)
        self.identity = int(identity)
        self.name = name

        n = len(self.elements)
        if self.table.shape != (n, n):
            raise ValueError(f"Table shape {self.table.shape} does not match {n} elements")

        e = self.identity
        if not (
            np.array_equal(self.table[e], np.arange(n))
            and np.array_equal(self.table[:, e], np.arange(n))
        ):
            raise ValueError("Identity row/column do not act as identity")

        inverses = np.full(n, -1, dtype=int)
        for a in range(n):
            hits = np.flatnonzero(self.table[a] == e)
            if len(hits) != 1 or self.table[hits[0], a] != e:
                raise ValueError(f"Element {self.label(a)} has no two-sided inverse")
            inverses[a] = hits[0]
        self._inverses = inverses

    def __len__(self):
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self._inverses[a])

    def conj(self, g: int, x: int) -> int:
        """g x g^-1"""
        return self.mul(self.mul(g, x), self.inv(g))

    def power(self, a: int, k: int) -> int:
        result = self.identity
        base = a if k >= 0 else self.inv(a)
        for _ in range(abs(k)):
            result = self.mul(result, base)
        return result

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            k += 1
        return k

    def is_associative(self) -> bool:
        """Exhaustive check, vectorised over all triples"""
        T = self.table
        return bool(np.array_equal(T[T], T[:, T]))

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def label(self, a: int) -> str:
        elem = self.elements[a]
        if isinstance(elem, tuple):
            return cycle_notation(elem)
        return str(elem)

    def index_of(self, elem) -> int:
        return self.elements.index(elem)

    def same_as(self, other: "FiniteGroup") -> bool:
        return self is other or (
            self.order == other.order and np.array_equal(self.table, other.table)
        )

    def to_dict(self) -> Dict:
        return {
            "name": self.name,
            "elements": [
                list(e) if isinstance(e, tuple) else e for e in self.elements
            ],
            "table": self.table.tolist(),
            "identity": self.identity,
        }

    @classmethod
    def from_dict(cls, data: Dict) -> "FiniteGroup":
        elements = [tuple(e) if isinstance(e, list) else e for e in data["elements"]]
        return cls(elements, data["table"], data.get("identity", 0), data.get("name", "G"))


@dataclass(frozen=True)
class Subgroup:
    """A subgroup, stored as the sorted member indices of its parent"""

    parent: FiniteGroup = field(compare=False, repr=False)
    members: Tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, g: int) -> bool:
        return g in self._member_set

    @property
    def _member_set(self):
        return frozenset(self.members)

    def issubset(self, other: "Subgroup") -> bool:
        return self._member_set <= other._member_set

    def index(self) -> int:
        return self.parent.order // self.order

    def as_group(self, name: Optional[str] = None) -> FiniteGroup:
        """
        The subgroup as a FiniteGroup of its own; element k of the result is
        parent element members[k].
        """
        position = {g: k for k, g in enumerate(self.members)}
        table = [
            [position[self.parent.mul(a, b)] for b in self.members] for a in self.members
        ]
        return FiniteGroup(
            [self.parent.elements[g] for g in self.members],
            table,
            identity=position[self.parent.identity],
            name=name or f"{self.parent.name}:H{self.order}",
        )


@dataclass
class ConjClassOfSubgroups:
    """A conjugacy class of subgroups and the classes it lies below"""

    representative: Subgroup
    members: List[Subgroup]
    contained_in: Tuple[int, ...] = ()

    @property
    def order(self) -> int:
        return self.representative.order

    def __contains__(self, H: Subgroup) -> bool:
        return any(H.members == K.members for K in self.members)


@dataclass
class GSet:
    """
    A finite G-set. action[g, x] is the image of point x under g; `side` says
    whether it is a left action (g, x) -> g.x or a right action (x, g) -> x.g
    """

    group: FiniteGroup
    points: List
    action: np.ndarray
    side: str = "left"

    def __post_init__(self):
        self.action = np.asarray(self.action, dtype=int)
        if self.side not in ("left", "right"):
            raise ValueError(f"Unknown side marker: {self.side}")
        if self.action.shape != (self.group.order, len(self.points)):
            raise ValueError("Action table shape does not match group and points")

    def __len__(self):
        return len(self.points)

    def act(self, g: int, x: int) -> int:
        return int(self.action[g, x])

    def permutation(self, g: int) -> Tuple[int, ...]:
        return tuple(int(v) for v in self.action[g])

    def axioms_hold(self) -> bool:
        """Identity and compatibility, exhaustively over (g, h, x)"""
        G = self.group
        if not np.array_equal(self.action[G.identity], np.arange(len(self.points))):
            return False
        for g in range(G.order):
            if sorted(self.action[g]) != list(range(len(self.points))):
                return False
        A = self.action
        # left: (gh).x = g.(h.x); right: x.(gh) = (x.g).h
        for g in range(G.order):
            for h in range(G.order):
                gh = G.mul(g, h)
                if self.side == "left":
                    composed = A[g][A[h]]
                else:
                    composed = A[h][A[g]]
                if not np.array_equal(A[gh], composed):
                    return False
        return True

    def is_transitive(self) -> bool:
        return len(orbits(self)) == 1

    def is_free(self) -> bool:
        return all(stabilizer(self, x).order == 1 for x in range(len(self.points)))

    def to_dict(self) -> Dict:
        return {
            "points": [str(p) for p in self.points],
            "action": {str(g): self.action[g].tolist() for g in range(self.group.order)},
            "side": self.side,
        }

    @classmethod
    def from_dict(cls, group: FiniteGroup, data: Dict) -> "GSet":
        action = np.array([data["action"][str(g)] for g in range(group.order)])
        return cls(group, list(data["points"]), action, data.get("side", "left"))


# ===== PERMUTATIONS =====


def cycle_notation(perm: Sequence[int]) -> str:
    """1-based cycle notation, '()' for the identity"""
    seen, parts = set(), []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cycle, x = [], start
        while x not in seen:
            seen.add(x)
            cycle.append(x + 1)
            x = perm[x]
        parts.append("(" + ",".join(str(c) for c in cycle) + ")")
    return "".join(parts) or "()"


def parse_cycles(text: str, degree: int) -> Tuple[int, ...]:
    """Parse 1-based cycle notation such as '(1,2)(3,4)' or '(1 2 3)'"""
    images = list(range(degree))
    for cycle in re.findall(r"\(([^()]*)\)", text):
        points = [int(p) - 1 for p in re.split(r"[,\s]+", cycle.strip()) if p]
        for k, p in enumerate(points):
            if not 0 <= p < degree:
                raise ValueError(f"Point {p + 1} outside 1..{degree}")
            images[p] = points[(k + 1) % len(points)]
    if sorted(images) != list(range(degree)):
        raise ValueError(f"Not a permutation: {text}")
    return tuple(images)


def compose(p: Sequence[int], q: Sequence[int]) -> Tuple[int, ...]:
    """Product p*q as maps: first q, then p"""
    return tuple(p[q[i]] for i in range(len(q)))


# ===== GROUP CONSTRUCTION =====


def close_under(
    generators: Sequence,
    multiply: Callable,
    key: Callable[[object], Hashable],
    identity,
    cap: int = GROUP_SIZE_CAP,
) -> Tuple[List, List[str]]:
    """
    Breadth-first closure of a generating set under `multiply`.

    Returns:
        (elements, words): elements in discovery order and the generator
        word reaching each one ('e' for the identity, letters a, b, c, ...)
    """
    letters = "abcdefghijklmnopqrstuvwxyz"
    elements, words = [identity], ["e"]
    seen = {key(identity): 0}
    frontier = [0]
    while frontier:
        next_frontier = []
        for idx in frontier:
            for k, gen in enumerate(generators):
                y = multiply(elements[idx], gen)
                ky = key(y)
                if ky in seen:
                    continue
                if len(elements) >= cap:
                    raise ValueError(f"Group closure exceeds size cap {cap}")
                seen[ky] = len(elements)
                elements.append(y)
                word = words[idx] if words[idx] != "e" else ""
                words.append(word + letters[k % len(letters)])
                next_frontier.append(len(elements) - 1)
        frontier = next_frontier
    return elements, words


def table_from_elements(elements: Sequence, multiply: Callable, key: Callable) -> np.ndarray:
    lookup = {key(x): i for i, x in enumerate(elements)}
    n = len(elements)
    table = np.empty((n, n), dtype=int)
    for i, x in enumerate(elements):
        for j, y in enumerate(elements):
            k = key(multiply(x, y))
            if k not in lookup:
                raise ValueError("Elements are not closed under multiplication")
            table[i, j] = lookup[k]
    return table


def build_group(spec, name: Optional[str] = None, cap: int = GROUP_SIZE_CAP) -> FiniteGroup:
    """
    Build a permutation group from generator permutations or a named preset

    Args:
        spec: Preset name ('Z3', 'D4', 'A4', 'S4', 'A5', 'S5', 'trivial') or a
            list of generators, each an image tuple on range(m) or a 1-based
            cycle string
        cap: Maximum allowed order

    Returns:
        FiniteGroup with elements sorted lexicographically (identity first)
    """
    if isinstance(spec, str):
        generators, degree = _preset_generators(spec)
        name = name or spec
    else:
        raw = list(spec)
        degree = _degree_of(raw)
        generators = [
            parse_cycles(g, degree) if isinstance(g, str) else tuple(int(v) for v in g)
            for g in raw
        ]
    for g in generators:
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise ValueError(f"Generator {g} is not a permutation of range({degree})")

    identity = tuple(range(degree))
    elements, _ = close_under(generators, compose, lambda p: p, identity, cap)
    elements = sorted(elements)
    table = table_from_elements(elements, compose, lambda p: p)
    return FiniteGroup(elements, table, identity=0, name=name or f"<{len(generators)} gens>")


def _degree_of(generators: Sequence) -> int:
    degree = 0
    for g in generators:
        if isinstance(g, str):
            points = [int(p) for p in re.findall(r"\d+", g)]
            degree = max([degree] + points)
        else:
            degree = max(degree, len(g))
    return max(degree, 1)


def _preset_generators(spec: str) -> Tuple[List[Tuple[int, ...]], int]:
    tag = spec.strip()
    if tag.lower() in ("trivial", "1", "z1"):
        return [], 1

    match = re.fullmatch(r"([ZDS])(\d+)", tag)
    if match:
        kind, n = match.group(1), int(match.group(2))
        if n < 1:
            raise ValueError(f"Bad preset order in {spec}")
        if kind == "Z":
            return [tuple((i + 1) % n for i in range(n))], n
        if kind == "S":
            if n == 1:
                return [], 1
            if n == 2:
                return [(1, 0)], 2
            return [tuple((i + 1) % n for i in range(n)), (1, 0) + tuple(range(2, n))], n
        # dihedral: symmetries of an n-gon; D1 = Z2, D2 = Klein four group
        if n == 1:
            return [(1, 0)], 2
        if n == 2:
            return [(1, 0, 3, 2), (2, 3, 0, 1)], 4
        rotation = tuple((i + 1) % n for i in range(n))
        reflection = tuple((-i) % n for i in range(n))
        return [rotation, reflection], n

    if tag == "A4":
        return [parse_cycles("(1,2,3)", 4), parse_cycles("(1,2)(3,4)", 4)], 4
    if tag == "A5":
        return [parse_cycles("(1,2,3)", 5), parse_cycles("(1,2,3,4,5)", 5)], 5
    raise ValueError(f"Unknown group preset: {spec}")


# ===== SUBGROUPS =====


def generated_subgroup(G: FiniteGroup, generators: Sequence[int]) -> Subgroup:
    members = {G.identity}
    frontier = [G.identity]
    while frontier:
        next_frontier = []
        for x in frontier:
            for s in generators:
                y = G.mul(x, s)
                if y not in members:
                    members.add(y)
                    next_frontier.append(y)
        frontier = next_frontier
    return Subgroup(G, tuple(sorted(members)))


def is_subgroup(G: FiniteGroup, members: Sequence[int]) -> bool:
    s = set(members)
    if G.identity not in s:
        return False
    return all(G.mul(a, b) in s for a in s for b in s) and all(G.inv(a) in s for a in s)


def make_subgroup(G: FiniteGroup, members: Sequence[int]) -> Subgroup:
    if not is_subgroup(G, members):
        raise ValueError("Members are not closed under the group law")
    return Subgroup(G, tuple(sorted(set(members))))


def whole_group(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, tuple(range(G.order)))


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, (G.identity,))


def enumerate_subgroups(G: FiniteGroup) -> List[Subgroup]:
    """
    All subgroups exactly once, sorted by order then member sequence.
    Seeded by cyclic subgroups and grown by joins with cyclic subgroups.
    """
    if G.order > GROUP_SIZE_CAP:
        raise ValueError(f"Group order {G.order} exceeds size cap")

    cyclic = {}
    for g in range(G.order):
        H = generated_subgroup(G, [g])
        cyclic.setdefault(H.members, g)

    found: Dict[Tuple[int, ...], List[int]] = {m: [g] for m, g in cyclic.items()}
    queue = list(found)
    while queue:
        members = queue.pop()
        gens = found[members]
        member_set = set(members)
        for cyc_members, g in cyclic.items():
            if g in member_set:
                continue
            joined = generated_subgroup(G, gens + [g]).members
            if joined not in found:
                found[joined] = gens + [g]
                queue.append(joined)

    subgroups = [Subgroup(G, m) for m in found]
    return sorted(subgroups, key=lambda H: (H.order, H.members))


def conjugate_subgroup(H: Subgroup, g: int) -> Subgroup:
    """g H g^-1"""
    G = H.parent
    return Subgroup(G, tuple(sorted({G.conj(g, h) for h in H.members})))


def conjugacy_classes_of_subgroups(
    G: FiniteGroup, subgroups: Optional[List[Subgroup]] = None
) -> List[ConjClassOfSubgroups]:
    """
    Partition the subgroups into conjugacy classes, ordered like the
    subgroup list. Each class records the indices of the classes it lies
    below (C1 <= C2 iff some member of C1 is contained in some member of C2).
    """
    subgroups = subgroups if subgroups is not None else enumerate_subgroups(G)
    assigned = set()
    classes: List[ConjClassOfSubgroups] = []
    for H in subgroups:
        if H.members in assigned:
            continue
        conjugates = {conjugate_subgroup(H, g).members for g in range(G.order)}
        members = [Subgroup(G, m) for m in sorted(conjugates)]
        assigned |= conjugates
        classes.append(ConjClassOfSubgroups(representative=H, members=members))

    for i, C in enumerate(classes):
        above = [
            j
            for j, D in enumerate(classes)
            if any(C.representative.issubset(K) for K in D.members)
        ]
        C.contained_in = tuple(above)
    return classes


def class_index_of(classes: List[ConjClassOfSubgroups], H: Subgroup) -> int:
    for i, C in enumerate(classes):
        if H in C:
            return i
    raise ValueError("Subgroup not found in any conjugacy class")


def derived_subgroup(G: FiniteGroup) -> Subgroup:
    commutators = {
        G.mul(G.mul(a, b), G.mul(G.inv(a), G.inv(b)))
        for a in range(G.order)
        for b in range(G.order)
    }
    return generated_subgroup(G, sorted(commutators))


def small_generating_set(G: FiniteGroup) -> List[int]:
    """Greedy generating set: add the first element outside the current span"""
    gens: List[int] = []
    span = {G.identity}
    for g in range(G.order):
        if g not in span:
            gens.append(g)
            span = set(generated_subgroup(G, gens).members)
        if len(span) == G.order:
            break
    return gens


def linear_characters(G: FiniteGroup) -> Tuple[int, List[np.ndarray]]:
    """
    All homomorphisms G -> U(1), found through the abelianization G/[G,G].

    Returns:
        (modulus, characters): each character is an integer array k with
        chi(g) = exp(2 pi i k[g] / modulus)
    """
    D = set(derived_subgroup(G).members)
    abelian_order = G.order // len(D)

    # exponent of G/[G,G]
    modulus = 1
    for g in range(G.order):
        k, x = 1, g
        while x not in D:
            x = G.mul(x, g)
            k += 1
        modulus = modulus * k // math.gcd(modulus, k)

    gens = small_generating_set(G)
    characters = []
    for values in itertools.product(range(modulus), repeat=len(gens)):
        chi = _extend_character(G, gens, values, modulus)
        if chi is not None:
            characters.append(chi)
    if len(characters) != abelian_order:
        raise ValueError(
            f"Found {len(characters)} linear characters, expected {abelian_order}"
        )
    characters.sort(key=lambda c: tuple(c))
    return modulus, characters


def _extend_character(G, gens, values, modulus) -> Optional[np.ndarray]:
    chi = np.full(G.order, -1, dtype=int)
    chi[G.identity] = 0
    frontier = [G.identity]
    while frontier:
        next_frontier = []
        for x in frontier:
            for s, v in zip(gens, values):
                y = G.mul(x, s)
                value = (chi[x] + v) % modulus
                if chi[y] < 0:
                    chi[y] = value
                    next_frontier.append(y)
                elif chi[y] != value:
                    return None
        frontier = next_frontier
    # homomorphism check over the whole table
    for a in range(G.order):
        if not np.array_equal((chi[a] + chi) % modulus, chi[G.table[a]]):
            return None
    return chi


# ===== G-SETS =====


def coset_gset(G: FiniteGroup, H: Subgroup) -> GSet:
    """
    Right cosets Hx with the canonical left action g.(Hx) = H x g^-1
    """
    if not is_subgroup(G, H.members):
        raise ValueError("H is not a subgroup of G")
    cosets: List[Tuple[int, ...]] = []
    coset_of = {}
    for x in range(G.order):
        if x in coset_of:
            continue
        coset = tuple(sorted({G.mul(h, x) for h in H.members}))
        for y in coset:
            coset_of[y] = len(cosets)
        cosets.append(coset)

    action = np.empty((G.order, len(cosets)), dtype=int)
    for g in range(G.order):
        g_inv = G.inv(g)
        for c, coset in enumerate(cosets):
            action[g, c] = coset_of[G.mul(coset[0], g_inv)]
    points = [f"H{G.label(coset[0])}" for coset in cosets]
    gset = GSet(G, points, action, side="left")
    gset.cosets = cosets
    return gset


def regular_gset(G: FiniteGroup, side: str = "left") -> GSet:
    """G acting on itself: left by g.x = gx, right by x.g = xg"""
    if side == "left":
        action = G.table.copy()
    else:
        action = G.table.T.copy()
    return GSet(G, [G.label(x) for x in range(G.order)], action, side)


def natural_gset(G: FiniteGroup) -> GSet:
    """A permutation group acting on the points it permutes: g.x = g(x)"""
    if not all(isinstance(e, tuple) for e in G.elements):
        raise ValueError(f"{G.name} is not a permutation group")
    degree = len(G.elements[0])
    action = np.array([list(e) for e in G.elements], dtype=int)
    return GSet(G, list(range(degree)), action, side="left")


def trivial_gset(G: FiniteGroup, n_points: int, side: str = "left") -> GSet:
    action = np.tile(np.arange(n_points), (G.order, 1))
    return GSet(G, list(range(n_points)), action, side)


def gset_from_permutations(
    G: FiniteGroup, generator_images: Dict[int, Sequence[int]], points: Sequence, side="left"
) -> GSet:
    """
    Extend an action given on group generators to the whole group

    Args:
        generator_images: group element index -> permutation of point indices
    """
    n = len(points)
    action = np.full((G.order, n), -1, dtype=int)
    action[G.identity] = np.arange(n)
    frontier = [G.identity]
    while frontier:
        next_frontier = []
        for x in frontier:
            for s, perm in generator_images.items():
                y = G.mul(x, s)
                perm = np.asarray(perm)
                image = action[x][perm] if side == "left" else perm[action[x]]
                if action[y][0] < 0:
                    action[y] = image
                    next_frontier.append(y)
                elif not np.array_equal(action[y], image):
                    raise ValueError("Generator images do not define an action")
        frontier = next_frontier
    if (action < 0).any():
        raise ValueError("Generator images do not generate the whole group")
    gset = GSet(G, list(points), action, side)
    if not gset.axioms_hold():
        raise ValueError("Generator images do not define an action")
    return gset


def invert_side(X: GSet) -> GSet:
    """
    Convert a right action tau into the left action (g, x) -> tau(x, g^-1)
    and a left action sigma into the right action (x, g) -> sigma(g^-1, x)
    """
    G = X.group
    action = np.array([X.action[G.inv(g)] for g in range(G.order)])
    side = "left" if X.side == "right" else "right"
    return GSet(G, list(X.points), action, side)


def restrict_gset(X: GSet, point_subset: Sequence[int]) -> GSet:
    """Restrict to an invariant subset (an orbit, typically)"""
    subset = list(point_subset)
    position = {x: k for k, x in enumerate(subset)}
    action = np.empty((X.group.order, len(subset)), dtype=int)
    for g in range(X.group.order):
        for k, x in enumerate(subset):
            y = X.act(g, x)
            if y not in position:
                raise ValueError("Point subset is not invariant")
            action[g, k] = position[y]
    return GSet(X.group, [X.points[x] for x in subset], action, X.side)


def restrict_to_subgroup(X: GSet, H: Subgroup) -> GSet:
    """The same points acted on by H only (group elements renumbered as H.as_group())"""
    return GSet(H.as_group(), list(X.points), X.action[list(H.members)], X.side)


def stabilizer(X: GSet, x: int) -> Subgroup:
    G = X.group
    return Subgroup(G, tuple(g for g in range(G.order) if X.act(g, x) == x))


class UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}
        self.rank = {x: 0 for x in items}

    def find(self, x):
        y = self.parent[x]
        if self.parent[y] != y:
            y = self.parent[x] = self.find(y)
        return y

    def union(self, x, y):
        x, y = self.find(x), self.find(y)
        if x == y:
            return
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x


def orbits(X: GSet) -> List[List[int]]:
    """Orbit partition, each orbit sorted, orbits ordered by smallest point"""
    uf = UnionFind(range(len(X.points)))
    for g in range(X.group.order):
        for x in range(len(X.points)):
            uf.union(x, X.act(g, x))
    groups: Dict[int, List[int]] = {}
    for x in range(len(X.points)):
        groups.setdefault(uf.find(x), []).append(x)
    return sorted((sorted(o) for o in groups.values()), key=lambda o: o[0])


def orbit_of(X: GSet, x: int) -> List[int]:
    return sorted({X.act(g, x) for g in range(X.group.order)})


def find_gset_isomorphism(X: GSet, Y: GSet) -> Optional[Dict[int, int]]:
    """
    An equivariant bijection X -> Y, or None.

    Orbits are matched greedily: an orbit of X through x is sent onto an unused
    orbit of Y containing a point y with exactly the same stabilizer, and
    extended by g.x -> g.y.
    """
    if not X.group.same_as(Y.group):
        raise ValueError("G-sets are acted on by different groups")
    if X.side != Y.side or len(X) != len(Y):
        return None

    G = X.group
    used = set()
    bijection: Dict[int, int] = {}
    for orbit_x in orbits(X):
        x = orbit_x[0]
        stab_x = stabilizer(X, x).members
        match = None
        for k, orbit_y in enumerate(orbits(Y)):
            if k in used or len(orbit_y) != len(orbit_x):
                continue
            for y in orbit_y:
                if stabilizer(Y, y).members == stab_x:
                    match = (k, y)
                    break
            if match:
                break
        if match is None:
            return None
        used.add(match[0])
        for g in range(G.order):
            bijection[X.act(g, x)] = Y.act(g, match[1])

    for g in range(G.order):
        for x in range(len(X)):
            if bijection[X.act(g, x)] != Y.act(g, bijection[x]):
                return None
    return bijection
