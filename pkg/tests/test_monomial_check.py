"""
Unit tests for exact characters and the monomial decomposition check
"""
from fractions import Fraction

import pytest
import numpy as np
import sys
from pathlib import Path

# Add src to path so imports work
sys.path.append(str(Path(__file__).parent.parent / 'src'))

from group_core import conjugacy_classes_of_subgroups, natural_gset
from monomial_check import (
    A5_CLASS_REPS,
    GOLDEN,
    CyclotomicScalar,
    QuadraticFieldScalar,
    a5_group,
    a5_irrep_characters,
    character_of_rep,
    icosahedral_character_check,
    induce_character,
    inner_product,
    monomial_characters,
    monomial_check_for,
    monomial_decomposition_feasible,
    one_dim_characters,
    restrict_character,
    s3_standard_character,
    table2_frame,
)
from unitary_core import permutation_rep


@pytest.fixture(scope="module")
def a5():
    return a5_group()


def _rounded(chi):
    return tuple(int(round(z.real)) for z in chi.to_complex())


def test_cyclotomic_identities():
    one = CyclotomicScalar.rational(1)
    assert CyclotomicScalar.root(20) * CyclotomicScalar.root(20) * CyclotomicScalar.root(20) == 1
    assert one + CyclotomicScalar.root(20) + CyclotomicScalar.root(40) == 0
    sqrt5 = GOLDEN.to_cyclotomic() * 2 - 1
    assert sqrt5 * sqrt5 == 5
    assert CyclotomicScalar.root(7).conjugate() == CyclotomicScalar.root(53)
    assert complex(CyclotomicScalar.root(15)) == pytest.approx(1j)


def test_golden_ratio():
    assert GOLDEN * GOLDEN == GOLDEN + 1
    assert GOLDEN.galois_conjugate() == 1 - GOLDEN
    assert float(GOLDEN) == pytest.approx((1 + np.sqrt(5)) / 2)
    assert not GOLDEN.is_rational()


def test_quadratic_recognition():
    assert GOLDEN.to_cyclotomic().to_quadratic() == GOLDEN
    assert CyclotomicScalar.rational(Fraction(3, 4)).to_quadratic() == QuadraticFieldScalar(Fraction(3, 4))
    assert CyclotomicScalar.root(1).to_quadratic() is None


def test_a5_classes(a5):
    G, classes = a5
    assert [len(c) for c in classes] == [1, 15, 20, 12, 12]
    assert [G.label(c[0]) for c in classes] == A5_CLASS_REPS


def test_irreducible_characters_are_orthonormal(a5):
    G, classes = a5
    v1, v2 = a5_irrep_characters(G, classes)
    assert inner_product(v1, v1) == 1
    assert inner_product(v2, v2) == 1
    assert inner_product(v1, v2) == 0


def test_monomial_characters_of_a5(a5):
    G, classes = a5
    rows = {_rounded(chi) for chi in monomial_characters(G, 6, classes)}
    assert rows == {
        (1, 1, 1, 1, 1),
        (5, 1, 2, 0, 0),
        (5, 1, -1, 0, 0),
        (6, 2, 0, 1, 1),
        (6, -2, 0, 1, 1),
    }


def test_table2_frame(a5):
    G, classes = a5
    frame = table2_frame(monomial_characters(G, 6, classes))
    assert list(frame.columns) == ["label", "degree"] + A5_CLASS_REPS
    assert sorted(frame["degree"]) == [1, 5, 5, 6, 6]


def test_permutation_character(a5):
    G, classes = a5
    chi = character_of_rep(permutation_rep(natural_gset(G)), classes)
    assert chi.exact
    assert _rounded(chi) == (5, 1, 2, 0, 0)


def test_frobenius_reciprocity(a5):
    G, classes = a5
    H = next(C.representative for C in conjugacy_classes_of_subgroups(G) if C.order == 12)
    for chi in a5_irrep_characters(G, classes):
        restricted = restrict_character(chi, H)
        for lam in one_dim_characters(H):
            induced = induce_character(lam, H, classes)
            assert inner_product(induced, chi) == inner_product(lam, restricted)


def test_a5_three_dimensional_irreps_are_not_monomial():
    for rep in ("3d-irrep", "3d-irrep-conj"):
        verdict = monomial_check_for("A5", rep)
        assert not verdict.feasible
        assert verdict.certificate["kind"] == "irrationality"
        assert verdict.certificate["class"] == "(1,2,3,4,5)"


def test_s3_standard_square_is_monomial():
    verdict = monomial_check_for("S3", "standard")
    assert verdict.feasible
    assert sum(verdict.witness.values()) >= 2
    G, chi = s3_standard_character()
    assert _rounded(chi)[0] == 2


def test_exhaustive_search_certificate():
    G, chi = s3_standard_character()
    verdict = monomial_decomposition_feasible(chi, G)
    # the standard character itself is induced from Z3
    assert verdict.feasible
    target = chi * chi.conjugate()
    trivial_only = [c for c in monomial_characters(G, 4, chi.classes) if c.degree == 1]
    refused = monomial_decomposition_feasible(target, G, trivial_only)
    assert not refused.feasible
    assert refused.certificate["kind"] == "exhaustive search"


def test_icosahedral_traces_agree():
    check = icosahedral_character_check()
    assert check["agree"]


def test_unknown_named_check():
    with pytest.raises(ValueError):
        monomial_check_for("A4", "standard")
