"""
Monomial Check
Characters of finite groups, induction from one-dimensional characters of
subgroups, and the decision whether a character splits into monomial
characters (non-negative integer combinations of induced characters)
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd
import sympy
from config import *
from group_core import (
    FiniteGroup,
    Subgroup,
    build_group,
    conjugacy_classes_of_subgroups,
    linear_characters,
    parse_cycles,
)
from unitary_core import Representation

ROOT_ORDER = MAX_EXACT_ROOT_ORDER
_ZETA = sympy.Symbol("zeta")


# ===== EXACT SCALARS =====


@lru_cache(maxsize=None)
def _cyclotomic_modulus() -> sympy.Poly:
    return sympy.Poly(sympy.cyclotomic_poly(ROOT_ORDER, _ZETA), _ZETA, domain=sympy.QQ)


def _to_fraction(c) -> Fraction:
    c = sympy.Rational(c)
    return Fraction(int(c.p), int(c.q))


class CyclotomicScalar:
    """
    An element of Q(zeta), zeta = exp(2 pi i / 60), stored as a polynomial in
    zeta reduced modulo the 60th cyclotomic polynomial, so equality is exact
    """

    __slots__ = ("poly",)

    def __init__(self, poly: sympy.Poly):
        self.poly = poly.rem(_cyclotomic_modulus())

    @classmethod
    def root(cls, k: int) -> "CyclotomicScalar":
        return cls(sympy.Poly(_ZETA ** (k % ROOT_ORDER), _ZETA, domain=sympy.QQ))

    @classmethod
    def rational(cls, value) -> "CyclotomicScalar":
        value = Fraction(value)
        return cls(sympy.Poly(sympy.Rational(value.numerator, value.denominator), _ZETA, domain=sympy.QQ))

    def coefficients(self) -> List[Fraction]:
        """Coefficients of zeta^0 .. zeta^(deg - 1)"""
        width = _cyclotomic_modulus().degree()
        coeffs = [_to_fraction(c) for c in reversed(self.poly.all_coeffs())]
        return coeffs + [Fraction(0)] * (width - len(coeffs))

    def _lift(self, other) -> "CyclotomicScalar":
        if isinstance(other, CyclotomicScalar):
            return other
        if isinstance(other, QuadraticFieldScalar):
            return other.to_cyclotomic()
        return CyclotomicScalar.rational(other)

    def __add__(self, other):
        return CyclotomicScalar(self.poly + self._lift(other).poly)

    __radd__ = __add__

    def __sub__(self, other):
        return CyclotomicScalar(self.poly - self._lift(other).poly)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __neg__(self):
        return CyclotomicScalar(-self.poly)

    def __mul__(self, other):
        return CyclotomicScalar(self.poly * self._lift(other).poly)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return CyclotomicScalar(self.poly * sympy.Rational(other.denominator, other.numerator))
        raise TypeError("Only division by rationals is supported")

    def __eq__(self, other):
        if isinstance(other, (CyclotomicScalar, QuadraticFieldScalar, int, Fraction)):
            return (self - other).poly.is_zero
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self.coefficients()))

    def conjugate(self) -> "CyclotomicScalar":
        """zeta -> zeta^-1"""
        terms = sum(
            (sympy.Rational(c.numerator, c.denominator) * _ZETA ** ((-k) % ROOT_ORDER))
            for k, c in enumerate(self.coefficients())
            if c
        )
        return CyclotomicScalar(sympy.Poly(terms or 0, _ZETA, domain=sympy.QQ))

    def __complex__(self):
        return complex(
            sum(float(c) * np.exp(2j * np.pi * k / ROOT_ORDER) for k, c in enumerate(self.coefficients()))
        )

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coefficients()[1:])

    def to_quadratic(self) -> Optional["QuadraticFieldScalar"]:
        """p + q sqrt5 when the value lies in Q(sqrt5), else None"""
        v = self.coefficients()
        if all(c == 0 for c in v[1:]):
            return QuadraticFieldScalar(v[0], Fraction(0))
        s = _sqrt5().coefficients()
        k = next(k for k in range(1, len(s)) if s[k] != 0)
        q = v[k] / s[k]
        p = v[0] - q * s[0]
        candidate = QuadraticFieldScalar(p, q)
        return candidate if candidate.to_cyclotomic() == self else None

    def __repr__(self):
        quad = self.to_quadratic()
        return str(quad) if quad is not None else f"{complex(self):.6f}"


@lru_cache(maxsize=None)
def _sqrt5() -> CyclotomicScalar:
    # zeta5 + zeta5^4 = (sqrt5 - 1) / 2
    step = ROOT_ORDER // 5
    return CyclotomicScalar.root(step) * 2 + CyclotomicScalar.root(4 * step) * 2 + 1


@dataclass(frozen=True)
class QuadraticFieldScalar:
    """p + q sqrt5 with rational p, q"""

    p: Fraction
    q: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "p", Fraction(self.p))
        object.__setattr__(self, "q", Fraction(self.q))

    @staticmethod
    def _coerce(other) -> "QuadraticFieldScalar":
        if isinstance(other, QuadraticFieldScalar):
            return other
        return QuadraticFieldScalar(Fraction(other))

    def __add__(self, other):
        o = self._coerce(other)
        return QuadraticFieldScalar(self.p + o.p, self.q + o.q)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return QuadraticFieldScalar(self.p - o.p, self.q - o.q)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return QuadraticFieldScalar(-self.p, -self.q)

    def __mul__(self, other):
        o = self._coerce(other)
        return QuadraticFieldScalar(self.p * o.p + 5 * self.q * o.q, self.p * o.q + self.q * o.p)

    __rmul__ = __mul__

    def galois_conjugate(self) -> "QuadraticFieldScalar":
        """sqrt5 -> -sqrt5"""
        return QuadraticFieldScalar(self.p, -self.q)

    def is_rational(self) -> bool:
        return self.q == 0

    def __float__(self):
        return float(self.p) + float(self.q) * math.sqrt(5)

    def __complex__(self):
        return complex(float(self))

    def to_cyclotomic(self) -> CyclotomicScalar:
        return CyclotomicScalar.rational(self.p) + _sqrt5() * self.q

    def __str__(self):
        if self.q == 0:
            return str(self.p)
        sign = "+" if self.q > 0 else "-"
        return f"{self.p}{sign}{abs(self.q)}*sqrt5"


GOLDEN = QuadraticFieldScalar(Fraction(1, 2), Fraction(1, 2))

Scalar = Union[CyclotomicScalar, complex]


# ===== CLASS FUNCTIONS =====


def conjugacy_classes(G: FiniteGroup) -> List[List[int]]:
    """Element conjugacy classes, each sorted, ordered by smallest element"""
    seen, classes = set(), []
    for x in range(G.order):
        if x in seen:
            continue
        cls = sorted({G.conj(g, x) for g in range(G.order)})
        seen.update(cls)
        classes.append(cls)
    return classes


@dataclass
class ClassFunction:
    """
    One value per conjugacy class; exact values are CyclotomicScalars,
    float values complex numbers
    """

    group: FiniteGroup
    classes: List[List[int]]
    values: List[Scalar]
    exact: bool = True
    label: str = ""

    def __post_init__(self):
        if len(self.values) != len(self.classes):
            raise ValueError("One value per conjugacy class is required")

    @property
    def degree(self) -> int:
        return int(round(complex(self.value_at(self.group.identity)).real))

    def class_of(self, g: int) -> int:
        return next(k for k, cls in enumerate(self.classes) if g in cls)

    def value_at(self, g: int) -> Scalar:
        return self.values[self.class_of(g)]

    def to_complex(self) -> np.ndarray:
        return np.array([complex(v) for v in self.values])

    def _combine(self, other: "ClassFunction", op) -> "ClassFunction":
        if self.classes != other.classes:
            raise ValueError("Class functions on different class lists")
        exact = self.exact and other.exact
        a = self.values if exact else list(self.to_complex())
        b = other.values if exact else list(other.to_complex())
        return ClassFunction(self.group, self.classes, [op(x, y) for x, y in zip(a, b)], exact)

    def __add__(self, other):
        return self._combine(other, lambda x, y: x + y)

    def __sub__(self, other):
        return self._combine(other, lambda x, y: x - y)

    def __mul__(self, other):
        return self._combine(other, lambda x, y: x * y)

    def scaled(self, k: int) -> "ClassFunction":
        return ClassFunction(self.group, self.classes, [v * k for v in self.values], self.exact)

    def conjugate(self) -> "ClassFunction":
        values = [v.conjugate() for v in self.values] if self.exact else list(self.to_complex().conj())
        return ClassFunction(self.group, self.classes, values, self.exact, f"{self.label}*")

    def is_zero(self, tol: float = FLOAT_CHARACTER_TOLERANCE) -> bool:
        if self.exact:
            return all(v.poly.is_zero for v in self.values)
        return bool(np.abs(self.to_complex()).max() < tol)

    def matches(self, other: "ClassFunction", tol: float = FLOAT_CHARACTER_TOLERANCE) -> bool:
        return (self - other).is_zero(tol)

    def key(self) -> Tuple:
        if self.exact:
            return tuple(tuple(v.coefficients()) for v in self.values)
        return tuple(np.round(self.to_complex(), 6))

    def display_values(self) -> List[str]:
        return [repr(v) if self.exact else f"{v:.6f}" for v in self.values]


def _exact_or_float(z: complex, tol: float = FLOAT_CHARACTER_TOLERANCE) -> Optional[CyclotomicScalar]:
    """Recognise (a + b sqrt5)/2 with small integers a, b; None otherwise"""
    if abs(z.imag) > tol:
        return None
    for b in sorted(range(-20, 21), key=abs):
        a = round(2 * z.real - b * math.sqrt(5))
        if abs((a + b * math.sqrt(5)) / 2 - z.real) < tol:
            return QuadraticFieldScalar(Fraction(a, 2), Fraction(b, 2)).to_cyclotomic()
    return None


def character_of_rep(rep: Representation, classes: Optional[List[List[int]]] = None) -> ClassFunction:
    """Traces on class representatives; exact when every trace lies in Q(sqrt5)"""
    classes = classes or conjugacy_classes(rep.group)
    traces = [complex(np.trace(rep(cls[0]))) for cls in classes]
    exact = [_exact_or_float(t) for t in traces]
    if all(v is not None for v in exact):
        return ClassFunction(rep.group, classes, exact, True, f"chi_{rep.name}")
    print(f"⚠️ Character of {rep.name} kept as floats")
    return ClassFunction(rep.group, classes, traces, False, f"chi_{rep.name}")


def trivial_character(G: FiniteGroup, classes=None) -> ClassFunction:
    classes = classes or conjugacy_classes(G)
    return ClassFunction(G, classes, [CyclotomicScalar.rational(1) for _ in classes], True, "1")


def one_dim_characters(H: Subgroup) -> List[ClassFunction]:
    """
    Every one-dimensional character of H, as class functions on H.as_group()
    (element k is parent element H.members[k])
    """
    K = H.as_group()
    classes = conjugacy_classes(K)
    modulus, characters = linear_characters(K)
    exact = ROOT_ORDER % modulus == 0
    if not exact:
        print(f"⚠️ Exponent {modulus} of {K.name}'s abelianization exceeds exact range; using floats")
    result = []
    for idx, k in enumerate(characters):
        if exact:
            step = ROOT_ORDER // modulus
            values = [CyclotomicScalar.root(step * int(k[cls[0]])) for cls in classes]
        else:
            values = [complex(np.exp(2j * np.pi * k[cls[0]] / modulus)) for cls in classes]
        result.append(ClassFunction(K, classes, values, exact, f"{K.name}:lambda{idx}"))
    return result


def induce_character(chi: ClassFunction, H: Subgroup, classes: Optional[List[List[int]]] = None) -> ClassFunction:
    """
    chi_ind(g) = (1/|H|) sum over x in G with x g x^-1 in H of chi(x g x^-1)

    Args:
        chi: Class function on H.as_group()
        H: The subgroup, with its parent G
    """
    G = H.parent
    classes = classes or conjugacy_classes(G)
    position = {g: k for k, g in enumerate(H.members)}
    values = []
    for cls in classes:
        g = cls[0]
        total = CyclotomicScalar.rational(0) if chi.exact else 0j
        for x in range(G.order):
            y = G.conj(x, g)
            if y in position:
                total = total + chi.value_at(position[y])
        values.append(total / H.order)
    label = f"Ind[{chi.label}]"
    return ClassFunction(G, classes, values, chi.exact, label)


def restrict_character(chi: ClassFunction, H: Subgroup) -> ClassFunction:
    K = H.as_group()
    classes = conjugacy_classes(K)
    values = [chi.value_at(H.members[cls[0]]) for cls in classes]
    return ClassFunction(K, classes, values, chi.exact, f"{chi.label}|H{H.order}")


def inner_product(a: ClassFunction, b: ClassFunction) -> Scalar:
    """(1/|G|) sum over classes of |C| a(C) conj(b(C))"""
    G = a.group
    if a.exact and b.exact:
        total = CyclotomicScalar.rational(0)
        for cls, x, y in zip(a.classes, a.values, b.values):
            total = total + x * y.conjugate() * len(cls)
        return total / G.order
    sizes = np.array([len(cls) for cls in a.classes])
    return complex((sizes * a.to_complex() * b.to_complex().conj()).sum() / G.order)


# ===== MONOMIAL CHARACTERS =====


def monomial_characters(G: FiniteGroup, max_degree: int, classes=None) -> List[ClassFunction]:
    """
    Characters induced from one-dimensional characters of subgroups (one per
    conjugacy class of subgroups), degree at most max_degree, duplicates by
    value vector removed
    """
    classes = classes or conjugacy_classes(G)
    seen, result = set(), []
    for C in conjugacy_classes_of_subgroups(G):
        H = C.representative
        if G.order // H.order > max_degree:
            continue
        for chi in one_dim_characters(H):
            induced = induce_character(chi, H, classes)
            key = induced.key()
            if key not in seen:
                seen.add(key)
                result.append(induced)
    return sorted(result, key=lambda c: c.degree)


@dataclass
class MonomialVerdict:
    feasible: bool
    witness: Dict[str, int] = field(default_factory=dict)
    certificate: Dict = field(default_factory=dict)

    def to_dict(self) -> Dict:
        return {"feasible": self.feasible, "witness": self.witness, "certificate": self.certificate}


def monomial_decomposition_feasible(
    target: ClassFunction, G: FiniteGroup, candidates: Optional[List[ClassFunction]] = None
) -> MonomialVerdict:
    """
    Search non-negative integer combinations of monomial characters equal to
    the target, by depth-first search with degree pruning

    Returns:
        feasible with multiplicities per candidate label, or infeasible with
        an irrationality or exhaustive-search certificate
    """
    candidates = candidates if candidates is not None else monomial_characters(G, target.degree, target.classes)
    candidates = [c for c in candidates if c.degree <= target.degree]

    if target.exact and all(c.exact for c in candidates):
        for k, value in enumerate(target.values):
            if not value.is_rational() and all(c.values[k].is_rational() for c in candidates):
                rep = target.classes[k][0]
                return MonomialVerdict(
                    False,
                    certificate={
                        "kind": "irrationality",
                        "class": G.label(rep),
                        "value": repr(value),
                        "reason": "target value is irrational while every monomial character is rational there",
                    },
                )

    multiplicities = [0] * len(candidates)

    def search(index: int, remaining: ClassFunction, degree_left: int) -> bool:
        if degree_left == 0:
            return remaining.is_zero()
        if index == len(candidates):
            return False
        chi = candidates[index]
        for count in range(degree_left // chi.degree, -1, -1):
            multiplicities[index] = count
            if search(index + 1, remaining - chi.scaled(count), degree_left - count * chi.degree):
                return True
        multiplicities[index] = 0
        return False

    if search(0, target, target.degree):
        witness = {
            f"{c.label}:{' '.join(c.display_values())}": m for c, m in zip(candidates, multiplicities) if m
        }
        return MonomialVerdict(True, witness=witness)
    return MonomialVerdict(
        False,
        certificate={
            "kind": "exhaustive search",
            "degree": target.degree,
            "candidates": len(candidates),
            "reason": "no non-negative integer combination of monomial characters of degree <= target degree matches",
        },
    )


# ===== A5 =====

A5_CLASS_REPS = ["()", "(1,2)(3,4)", "(1,2,3)", "(1,2,3,4,5)", "(1,2,3,5,4)"]


def a5_group() -> Tuple[FiniteGroup, List[List[int]]]:
    """A5 with its classes ordered as (), (12)(34), (123), (12345), (12354)"""
    G = build_group("A5")
    classes = conjugacy_classes(G)
    ordered = []
    for text in A5_CLASS_REPS:
        g = G.index_of(parse_cycles(text, 5))
        cls = next(cls for cls in classes if g in cls)
        ordered.append([g] + [x for x in cls if x != g])
    return G, ordered


def a5_irrep_characters(G: FiniteGroup, classes: List[List[int]]) -> List[ClassFunction]:
    """The two 3-dimensional irreducible characters, golden-ratio entries on the 5-cycles"""
    phi = GOLDEN
    rows = [
        [QuadraticFieldScalar(3), QuadraticFieldScalar(-1), QuadraticFieldScalar(0), phi, 1 - phi],
        [QuadraticFieldScalar(3), QuadraticFieldScalar(-1), QuadraticFieldScalar(0), 1 - phi, phi],
    ]
    return [
        ClassFunction(G, classes, [v.to_cyclotomic() for v in row], True, f"V{k + 1}")
        for k, row in enumerate(rows)
    ]


def icosahedral_character_check(tol: float = FLOAT_CHARACTER_TOLERANCE) -> Dict:
    """
    Compare the exact 3-dimensional character values with traces of the
    icosahedral rotation matrices, class by class (matched by class size
    and value)
    """
    from oeb_catalog import so3_subgroup

    rot_group = so3_subgroup("A5")
    R = rot_group.group
    float_classes = conjugacy_classes(R)
    measured = sorted(
        (len(cls), round(float(np.trace(rot_group.rotations[cls[0]].matrix())), 9)) for cls in float_classes
    )
    G, classes = a5_group()
    exact = a5_irrep_characters(G, classes)[0]
    expected = sorted((len(cls), round(complex(v).real, 9)) for cls, v in zip(classes, exact.values))
    agree = len(measured) == len(expected) and all(
        a[0] == b[0] and abs(a[1] - b[1]) < tol for a, b in zip(measured, expected)
    )
    return {"agree": agree, "measured": measured, "expected": expected}


def table2_frame(characters: Sequence[ClassFunction]) -> pd.DataFrame:
    rows = []
    for chi in characters:
        row = {"label": chi.label, "degree": chi.degree}
        for text, value in zip(A5_CLASS_REPS, chi.display_values()):
            row[text] = value
        rows.append(row)
    return pd.DataFrame(rows)


def s3_standard_character() -> Tuple[FiniteGroup, ClassFunction]:
    """The 2-dimensional irreducible character of S3: permutation character minus trivial"""
    from unitary_core import permutation_rep
    from group_core import natural_gset

    G = build_group("S3")
    perm = character_of_rep(permutation_rep(natural_gset(G)))
    return G, perm - trivial_character(G, perm.classes)


def monomial_check_for(group_tag: str, rep_tag: str) -> MonomialVerdict:
    """Named checks: ('A5', '3d-irrep' or '3d-irrep-conj') and ('S3', 'standard')"""
    if group_tag == "A5" and rep_tag in ("3d-irrep", "3d-irrep-conj"):
        G, classes = a5_group()
        chi = a5_irrep_characters(G, classes)[0 if rep_tag == "3d-irrep" else 1]
    elif group_tag == "S3" and rep_tag == "standard":
        G, chi = s3_standard_character()
    else:
        raise ValueError(f"No named monomial check for group {group_tag}, rep {rep_tag}")
    target = chi * chi.conjugate()
    target.label = f"|{chi.label}|^2"
    return monomial_decomposition_feasible(target, G)
