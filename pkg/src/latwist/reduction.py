"""Genus formulas, reduced classes, and Cremona reduction with certificates.

The reduction drives the H-coefficient of a rational-model class down by
reflections along H-E_i-E_j-E_k (written Gamma below) and transpositions
along E_i-E_j, recording every generator so the result carries a checkable
word.  Square -1 classes with K-pairing -1 end at a basis class (or at
H-E_i-E_j when n = 2), square -2 classes with K-pairing 0 end at a binary
class E_i-E_j or a ternary class H-E_i-E_j-E_k; everything else ends at a
reduced class, at a negative-coefficient certificate of non-sphericality,
or at an explicit Irreducible report.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .lattice import (
    RATIONAL,
    RULED,
    FormClass,
    HomClass,
    LatticeModel,
    form_pairing,
    mat_identity,
    mat_mul,
    mat_vec,
    pairing,
    reflect,
    reflection_matrix,
)

KIND_ZERO = "Zero"
KIND_MINUS_BASIS = "PlusMinusBasisE"
KIND_BINARY = "Binary"
KIND_TERNARY = "Ternary"
KIND_EXC_EI = "ExceptionalEi"
KIND_EXC_HEIEJ = "ExceptionalHEiEj"
KIND_REDUCED = "Reduced"
KIND_NEGATIVE = "NegativeCoefficient"
KIND_IRREDUCIBLE = "Irreducible"

ALL_KINDS = frozenset(
    {
        KIND_ZERO,
        KIND_MINUS_BASIS,
        KIND_BINARY,
        KIND_TERNARY,
        KIND_EXC_EI,
        KIND_EXC_HEIEJ,
        KIND_REDUCED,
        KIND_NEGATIVE,
        KIND_IRREDUCIBLE,
    }
)

SPHERICAL_KINDS = frozenset({KIND_BINARY, KIND_TERNARY})


@dataclass(frozen=True)
class ReflectionWord:
    """An ordered product of reflections along admissible classes.

    ``matrix`` is the product of the generator reflection matrices in
    listed order, acting on coefficient column vectors.  Under that
    convention the last listed generator acts first on a class.
    """

    model: LatticeModel
    generators: tuple

    @property
    def matrix(self) -> tuple:
        return self._matrix

    def __post_init__(self):
        m = mat_identity(self.model.rank)
        for g in self.generators:
            if g.model != self.model:
                raise ValueError("incompatible lattice models")
            m = mat_mul(m, reflection_matrix(g))
        object.__setattr__(self, "_matrix", m)

    @staticmethod
    def from_applied(model: LatticeModel, applied) -> "ReflectionWord":
        """Build a word from generators listed in application order."""
        return ReflectionWord(model, tuple(reversed(tuple(applied))))

    def apply(self, x: HomClass) -> HomClass:
        if x.model != self.model:
            raise ValueError("incompatible lattice models")
        return HomClass(self.model, mat_vec(self.matrix, x.coeffs))

    def inverse(self) -> "ReflectionWord":
        return ReflectionWord(self.model, tuple(reversed(self.generators)))

    def __mul__(self, other: "ReflectionWord") -> "ReflectionWord":
        if other.model != self.model:
            raise ValueError("incompatible lattice models")
        return ReflectionWord(self.model, self.generators + other.generators)

    def __len__(self):
        return len(self.generators)


@dataclass(frozen=True)
class NormalForm:
    """Outcome of cremona_reduce.

    word.matrix applied to the input class equals the representative,
    negated when sign_flipped is set.  The representative is stored with
    its first nonzero coefficient positive.
    """

    kind: str
    representative: HomClass
    word: ReflectionWord
    sign_flipped: bool

    def __post_init__(self):
        if self.kind not in ALL_KINDS:
            raise ValueError(f"unknown normal form kind {self.kind!r}")


def eta_K(e: HomClass, K: FormClass) -> Fraction:
    """The K-symplectic genus (K(e) + e.e)/2 + 1."""
    return Fraction(form_pairing(K, e) + pairing(e, e), 2) + 1


def gt_dimension(e: HomClass, K: FormClass) -> Fraction:
    """Expected moduli dimension (-K(e) + e.e)/2."""
    return Fraction(-form_pairing(K, e) + pairing(e, e), 2)


def _sorted_b(xi: HomClass):
    """H-coefficient and the b_i of a = aH - sum b_i E_i, b descending."""
    return xi.coeffs[0], sorted((-c for c in xi.coeffs[1:]), reverse=True)


def _defect(a, b):
    # absent b_2, b_3 count as zero when n < 3
    return a - sum(b[:3])


def is_reduced(xi: HomClass) -> bool:
    """a >= 0, all b_i >= 0, and a >= b_1 + b_2 + b_3 after sorting."""
    if xi.model.kind != RATIONAL:
        raise ValueError("reduced form defined for rational model only")
    a, b = _sorted_b(xi)
    if a < 0 or (b and b[-1] < 0):
        return False
    return _defect(a, b) >= 0


def _match_terminal(xi: HomClass):
    """Return the terminal pattern kind of xi, or None.

    Patterns: 0, +-E_i, +-(E_i-E_j), +-(H-E_i-E_j) when n = 2 only,
    +-(H-E_i-E_j-E_k).  The sign is not normalized here.
    """
    a = xi.coeffs[0]
    tail = xi.coeffs[1:]
    nonzero = [c for c in tail if c]
    if a == 0:
        if not nonzero:
            return KIND_ZERO
        if len(nonzero) == 1 and abs(nonzero[0]) == 1:
            return KIND_EXC_EI if nonzero[0] > 0 else KIND_MINUS_BASIS
        if len(nonzero) == 2 and sorted(nonzero) == [-1, 1]:
            return KIND_BINARY
        return None
    if abs(a) == 1:
        if len(nonzero) == 2 and nonzero == [-a, -a] and xi.model.n == 2:
            return KIND_EXC_HEIEJ
        if len(nonzero) == 3 and nonzero == [-a, -a, -a]:
            return KIND_TERNARY
    return None


def _normalize_sign(xi: HomClass):
    """Representative with first nonzero coefficient positive, plus flip bit."""
    for c in xi.coeffs:
        if c > 0:
            return xi, False
        if c < 0:
            return -xi, True
    return xi, False


_GAMMA_CAP_SLACK = 4


def cremona_reduce(xi: HomClass) -> NormalForm:
    """Reduce a rational-model class to a terminal pattern with a word.

    The loop checks terminal patterns, flips the whole class when the
    H-coefficient is negative (recorded in sign_flipped, not as a
    generator), sorts the b_i by explicit transposition reflections,
    stops with NegativeCoefficient when a > 0 with some b_i < 0 and
    nonnegative defect, and otherwise applies Gamma on the three largest
    b_i while the defect is negative.  A generous iteration cap and a
    stuck-state check return Irreducible instead of looping on inputs
    outside the classes the terminal patterns cover.
    """
    model = xi.model
    if model.kind != RATIONAL:
        raise ValueError("Cremona reduction defined for rational model only")
    n = model.n
    cur = xi
    flipped = False
    applied = []
    gamma_cap = abs(xi.coeffs[0]) + n + _GAMMA_CAP_SLACK
    gamma_count = 0

    def finish(kind):
        rep, extra = _normalize_sign(cur)
        return NormalForm(
            kind=kind,
            representative=rep,
            word=ReflectionWord.from_applied(model, applied),
            sign_flipped=flipped ^ extra,
        )

    while True:
        kind = _match_terminal(cur)
        if kind is not None:
            if flipped:
                # the flag tracks the net sign, so a flipped -E_i is a
                # net +E_i and vice versa
                if kind == KIND_EXC_EI:
                    kind = KIND_MINUS_BASIS
                elif kind == KIND_MINUS_BASIS:
                    kind = KIND_EXC_EI
            return finish(kind)
        a = cur.coeffs[0]
        if a < 0:
            cur = -cur
            flipped = not flipped
            continue
        # sort b descending with explicit transpositions
        for pos in range(n):
            best = pos
            for q in range(pos + 1, n):
                if -cur.coeffs[1 + q] > -cur.coeffs[1 + best]:
                    best = q
            if best != pos:
                g = model.E(pos + 1) - model.E(best + 1)
                applied.append(g)
                cur = reflect(g, cur)
        if is_reduced(cur):
            return finish(KIND_REDUCED)
        b = [-c for c in cur.coeffs[1:]]
        d = _defect(a, b)
        if a > 0 and b and b[-1] < 0 and d >= 0:
            return finish(KIND_NEGATIVE)
        if d < 0 and n >= 3:
            if gamma_count >= gamma_cap:
                warnings.warn(
                    "Cremona reduction hit its iteration cap; reporting Irreducible",
                    RuntimeWarning,
                    stacklevel=2,
                )
                return finish(KIND_IRREDUCIBLE)
            gamma_count += 1
            g = HomClass(
                model,
                (1, -1, -1, -1) + (0,) * (n - 3),
            )
            applied.append(g)
            cur = reflect(g, cur)
            continue
        # no move applies: either n < 3 with negative defect or a stuck
        # a = 0 class; both sit outside the covered terminal patterns
        return finish(KIND_IRREDUCIBLE)


def _k_delta_signs(model: LatticeModel, K: FormClass):
    """For rational K = K_0 or a K_delta variant, the E-sign vector.

    Returns None when K is not of that shape.
    """
    if K.model != model or model.kind != RATIONAL:
        return None
    if K.coeffs[0] != -3:
        return None
    signs = []
    for c in K.coeffs[1:]:
        if c == 1:
            signs.append(1)
        elif c == -1:
            signs.append(-1)
        else:
            return None
    return tuple(signs)


def _conjugate_to_k0(xi: HomClass, K: FormClass) -> HomClass:
    """Map xi by the sign isometry that carries K (a K_delta) to K_0."""
    signs = _k_delta_signs(xi.model, K)
    if signs is None:
        raise ValueError("K must be K_0 or a K_delta variant; conjugate to K_0 first")
    coeffs = (xi.coeffs[0],) + tuple(s * c for s, c in zip(signs, xi.coeffs[1:]))
    return HomClass(xi.model, coeffs)


def is_exceptional(xi: HomClass, K: FormClass) -> bool:
    """Square -1, K-pairing -1, and reduction to +E_i (or +(H-E_i-E_j) at n=2).

    Rational K may be K_0 or any K_delta variant; ruled K must be K_0,
    where the exceptional classes are exactly E_i and F-E_i.
    """
    if xi.model != K.model:
        raise ValueError("incompatible lattice models")
    if xi.model.kind == RULED:
        if K != xi.model.k0_form():
            raise ValueError("conjugate to K_0 first")
        if pairing(xi, xi) != -1 or form_pairing(K, xi) != -1:
            return False
        t, f = xi.coeffs[0], xi.coeffs[1]
        nonzero = [c for c in xi.coeffs[2:] if c]
        if t != 0 or len(nonzero) != 1:
            return False
        return (f, nonzero[0]) in ((0, 1), (1, -1))
    conjugated = _conjugate_to_k0(xi, K)
    if pairing(xi, xi) != -1 or form_pairing(K, xi) != -1:
        return False
    nf = cremona_reduce(conjugated)
    return nf.kind in (KIND_EXC_EI, KIND_EXC_HEIEJ) and not nf.sign_flipped


def is_K_null_spherical(xi: HomClass, K: FormClass) -> bool:
    """Square -2, K-pairing 0, and equivalence to a binary or ternary class.

    Rational K may be K_0 or any K_delta variant; ruled K must be K_0,
    where the list is +-(F-E_i-E_j) and +-(E_i-E_j).
    """
    if xi.model != K.model:
        raise ValueError("incompatible lattice models")
    if xi.model.kind == RULED:
        if K != xi.model.k0_form():
            raise ValueError("conjugate to K_0 first")
        if pairing(xi, xi) != -2 or form_pairing(K, xi) != 0:
            return False
        t, f = xi.coeffs[0], xi.coeffs[1]
        nonzero = [c for c in xi.coeffs[2:] if c]
        if t != 0 or len(nonzero) != 2:
            return False
        if f == 0:
            return sorted(nonzero) == [-1, 1]
        return abs(f) == 1 and nonzero == [-f, -f]
    conjugated = _conjugate_to_k0(xi, K)
    if pairing(xi, xi) != -2 or form_pairing(K, xi) != 0:
        return False
    nf = cremona_reduce(conjugated)
    return nf.kind in SPHERICAL_KINDS


class EtaBound(NamedTuple):
    value: Fraction
    exact: bool


def eta_lower_bound(e: HomClass) -> EtaBound:
    """Certified lower bound for the symplectic genus of e.

    Maximizes eta over the canonical classes K_delta, which all pair the
    class into their cones when the H-coefficient is positive.  The max
    separates per coordinate, so it is computed in closed form.  The
    bound is exact when e is reduced, reported in the flag.
    """
    if e.model.kind != RATIONAL:
        raise ValueError("eta bound defined for rational model only")
    a = e.coeffs[0]
    if a <= 0:
        raise ValueError("K_delta family not certified for nonpositive H-coefficient")
    best_k = -3 * a + sum(abs(c) for c in e.coeffs[1:])
    value = Fraction(best_k + pairing(e, e), 2) + 1
    return EtaBound(value, is_reduced(e))
