"""
Unit tests for finite groups, subgroups and G-sets
"""
import pytest
import numpy as np
import sys
from pathlib import Path

# Add src to path so imports work
sys.path.append(str(Path(__file__).parent.parent / 'src'))

from group_core import (
    FiniteGroup,
    build_group,
    compose,
    conjugacy_classes_of_subgroups,
    coset_gset,
    cycle_notation,
    derived_subgroup,
    enumerate_subgroups,
    find_gset_isomorphism,
    gset_from_permutations,
    invert_side,
    linear_characters,
    make_subgroup,
    natural_gset,
    orbit_of,
    orbits,
    parse_cycles,
    regular_gset,
    restrict_gset,
    restrict_to_subgroup,
    stabilizer,
    trivial_subgroup,
)


@pytest.fixture
def s3():
    return build_group("S3")


@pytest.fixture
def a4():
    return build_group("A4")


def test_presets_have_expected_orders():
    """Named presets close to groups of the right order"""
    for spec, order in [("trivial", 1), ("Z3", 3), ("Z4", 4), ("S3", 6), ("D4", 8), ("A4", 12), ("S4", 24), ("A5", 60)]:
        G = build_group(spec)
        assert G.order == order
        assert G.is_associative()


def test_z3_is_cyclic():
    G = build_group("Z3")
    assert G.is_abelian()
    assert max(G.element_order(g) for g in range(G.order)) == 3


def test_s3_not_abelian(s3):
    assert not s3.is_abelian()


def test_cycle_notation_roundtrip():
    perm = parse_cycles("(1,2,3)(4,5)", 5)
    assert perm == (1, 2, 0, 4, 3)
    assert parse_cycles(cycle_notation(perm), 5) == perm
    assert cycle_notation((0, 1, 2)) == "()"


def test_compose_applies_right_factor_first():
    assert compose((1, 0, 2), (0, 2, 1)) == (1, 2, 0)


def test_parse_cycles_rejects_out_of_range():
    with pytest.raises(ValueError):
        parse_cycles("(1,7)", 3)


def test_table_rejects_non_group():
    with pytest.raises(ValueError):
        FiniteGroup([0, 1], [[0, 0], [1, 1]])


def test_group_json_roundtrip(a4):
    again = FiniteGroup.from_dict(a4.to_dict())
    assert again.same_as(a4)


def test_inverses_and_powers(a4):
    for g in range(a4.order):
        assert a4.mul(g, a4.inv(g)) == a4.identity
        assert a4.power(g, a4.element_order(g)) == a4.identity


def test_subgroups_of_z4():
    orders = [H.order for H in enumerate_subgroups(build_group("Z4"))]
    assert orders == [1, 2, 4]


def test_subgroup_lattice_of_s3(s3):
    subgroups = enumerate_subgroups(s3)
    assert len(subgroups) == 6
    classes = conjugacy_classes_of_subgroups(s3, subgroups)
    assert [C.order for C in classes] == [1, 2, 3, 6]
    assert [len(C.members) for C in classes] == [1, 3, 1, 1]


def test_subgroup_classes_of_a4(a4):
    classes = conjugacy_classes_of_subgroups(a4)
    assert sorted(C.order for C in classes) == [1, 2, 3, 4, 12]
    # every class lies below the whole group
    top = len(classes) - 1
    assert all(top in C.contained_in for C in classes)


def test_derived_subgroup_of_a4_is_klein(a4):
    assert derived_subgroup(a4).order == 4


def test_linear_characters():
    for spec, modulus, count in [("Z4", 4, 4), ("S3", 2, 2), ("A4", 3, 3), ("A5", 1, 1)]:
        G = build_group(spec)
        m, characters = linear_characters(G)
        assert m == modulus
        assert len(characters) == count
        for k in characters:
            for a in range(G.order):
                for b in range(G.order):
                    assert (k[a] + k[b]) % m == k[G.mul(a, b)]


def test_coset_gset_action(s3):
    H = next(H for H in enumerate_subgroups(s3) if H.order == 2)
    X = coset_gset(s3, H)
    assert len(X) == 3
    assert X.axioms_hold()
    assert X.is_transitive()
    assert stabilizer(X, 0).members == H.members


def test_regular_gset_is_free_and_transitive(a4):
    for side in ("left", "right"):
        X = regular_gset(a4, side)
        assert X.axioms_hold()
        assert X.is_free()
        assert X.is_transitive()


def test_invert_side_switches_action(a4):
    right = regular_gset(a4, "right")
    left = invert_side(right)
    assert left.side == "left"
    assert left.axioms_hold()
    assert invert_side(left).side == "right"
    assert np.array_equal(invert_side(left).action, right.action)


def test_orbit_stabilizer(a4):
    """|orbit| * |stabilizer| = |G| at every point"""
    X = natural_gset(a4)
    for x in range(len(X)):
        assert len(orbit_of(X, x)) * stabilizer(X, x).order == a4.order


def test_orbits_of_restricted_action(s3):
    H = make_subgroup(s3, [0, next(g for g in range(1, s3.order) if s3.element_order(g) == 2)])
    Y = natural_gset(H.as_group())
    assert sorted(len(o) for o in orbits(Y)) == [1, 2]


def test_gset_from_permutations():
    G = build_group("Z3")
    gen = G.index_of((1, 2, 0))
    X = gset_from_permutations(G, {gen: [1, 2, 0]}, ["a", "b", "c"])
    assert X.is_transitive()
    with pytest.raises(ValueError):
        gset_from_permutations(G, {gen: [1, 0, 2]}, ["a", "b", "c"])


def test_restrict_to_orbit(a4):
    X = natural_gset(a4)
    Y = restrict_gset(X, orbits(X)[0])
    assert Y.axioms_hold()
    with pytest.raises(ValueError):
        restrict_gset(coset_gset(a4, trivial_subgroup(a4)), [0])


def test_gset_isomorphism_between_conjugate_cosets(s3):
    Hs = [H for H in enumerate_subgroups(s3) if H.order == 2]
    X, Y = coset_gset(s3, Hs[0]), coset_gset(s3, Hs[1])
    bijection = find_gset_isomorphism(X, Y)
    assert bijection is not None
    for g in range(s3.order):
        for x in range(len(X)):
            assert bijection[X.act(g, x)] == Y.act(g, bijection[x])

    Z3 = next(H for H in enumerate_subgroups(s3) if H.order == 3)
    assert find_gset_isomorphism(X, coset_gset(s3, Z3)) is None


def test_restrict_natural_action_to_rotations(s3):
    Z3 = next(H for H in enumerate_subgroups(s3) if H.order == 3)
    Y = restrict_to_subgroup(natural_gset(s3), Z3)
    assert Y.group.order == 3
    assert Y.axioms_hold()
    assert Y.is_transitive()
    assert Y.is_free()
