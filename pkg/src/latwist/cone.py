"""Exceptional classes, the symplectic cone, and Lagrangian sphere classes.

Rational exceptional classes are enumerated by solving the coupled
Diophantine constraints

    sum b_i = 3a - 1,    sum b_i^2 = a^2 + 1

for xi = aH - sum b_i E_i.  For n <= 8 the Cauchy-Schwarz estimate
(3a-1)^2 <= n(a^2+1) confines a to a finite window and the enumeration
is complete.  For n >= 9 the set is infinite and a caller-supplied
degree bound caps |a|; results are then flagged as bounded.  Ruled
models have the closed-form set {E_i, F - E_i}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import NamedTuple, Optional

from .lattice import (
    RATIONAL,
    RULED,
    FormClass,
    HomClass,
    LatticeModel,
    _gram_product,
    form_pairing,
    is_characteristic,
    pairing,
)
from .reduction import (
    ReflectionWord,
    _conjugate_to_k0,
    _k_delta_signs,
    cremona_reduce,
    is_K_null_spherical,
)

CONE_YES = "yes"
CONE_NO = "no"
CONE_YES_UP_TO_BOUND = "yes_up_to_bound"

_RULED_CONE_NOTE = "positive square and exceptional areas only"


@dataclass(frozen=True)
class ExceptionalSet:
    """The classes of square -1 and K-pairing -1, canonically sorted.

    ``complete`` is true exactly when the listing is provably exhaustive:
    rational models with n <= 8 and every ruled model.  Otherwise
    ``degree_bound`` records the |a| cap that was searched.
    """

    model: LatticeModel
    K: FormClass
    classes: tuple
    complete: bool
    degree_bound: Optional[int] = None

    def __iter__(self):
        return iter(self.classes)

    def __len__(self):
        return len(self.classes)

    def __contains__(self, xi):
        return xi in self.classes


def _b_vectors(n, total, square):
    """All integer vectors of length n with the given sum and sum of squares."""
    out = []

    def rec(pos, s, q, prefix):
        r = n - pos
        if r == 0:
            if s == 0 and q == 0:
                out.append(tuple(prefix))
            return
        if s * s > r * q:
            return
        lim = isqrt(q)
        for v in range(-lim, lim + 1):
            q2 = q - v * v
            s2 = s - v
            if s2 * s2 > (r - 1) * q2:
                continue
            prefix.append(v)
            rec(pos + 1, s2, q2, prefix)
            prefix.pop()

    if square >= 0:
        rec(0, total, square, [])
    return out


def _rational_a_window(n):
    # roots of (9-n)a^2 - 6a + (1-n) <= 0, the Cauchy-Schwarz feasibility window
    disc = 9 + (9 - n) * (n - 1)
    root = math.isqrt(disc) if disc >= 0 else 0
    lo = math.ceil(Fraction(3 - root, 9 - n))
    hi = math.floor(Fraction(3 + root, 9 - n))
    return lo, hi


@lru_cache(maxsize=None)
def _enumerate_cached(model, K, degree_bound):
    if model.kind == RULED:
        if K != model.k0_form():
            raise ValueError("conjugate to K_0 first")
        classes = []
        F = model.unit(1)
        for i in range(1, model.n + 1):
            classes.append(model.E(i))
            classes.append(F - model.E(i))
        return ExceptionalSet(
            model=model,
            K=K,
            classes=tuple(sorted(classes, key=lambda x: x.coeffs)),
            complete=True,
        )

    # rational: solve in the standard frame, then undo the sign change
    # that carries a K_delta variant back to K_0
    signs = None
    if K != model.k0_form():
        signs = _k_delta_signs(model, K)
        if signs is None:
            raise ValueError("K must be K_0 or a K_delta variant; conjugate to K_0 first")
    n = model.n
    if n <= 8:
        a_lo, a_hi = _rational_a_window(n)
        complete = True
    else:
        if degree_bound is None:
            raise ValueError("degree_bound required for rational models with n >= 9")
        a_lo, a_hi = -degree_bound, degree_bound
        complete = False
    classes = []
    for a in range(a_lo, a_hi + 1):
        if (3 * a - 1) ** 2 > n * (a * a + 1):
            continue
        for b in _b_vectors(n, 3 * a - 1, a * a + 1):
            coeffs = (a,) + tuple(-v for v in b)
            if signs is not None:
                coeffs = (a,) + tuple(s * c for s, c in zip(signs, coeffs[1:]))
            classes.append(HomClass(model, coeffs))
    return ExceptionalSet(
        model=model,
        K=K,
        classes=tuple(sorted(classes, key=lambda x: x.coeffs)),
        complete=complete,
        degree_bound=None if complete else degree_bound,
    )


def enumerate_exceptional(model, K=None, degree_bound=None) -> ExceptionalSet:
    """The set of exceptional classes for K (default K_0).

    Rational models with n >= 9 require ``degree_bound``; the returned
    set then carries complete=False and the bound used.
    """
    if K is None:
        K = model.k0_form()
    if K.model != model:
        raise ValueError("incompatible lattice models")
    if model.kind == RATIONAL and model.n <= 8:
        degree_bound = None
    out = _enumerate_cached(model, K, degree_bound)
    for xi in out.classes:
        assert pairing(xi, xi) == -1 and form_pairing(K, xi) == -1
    return out


class ConeResult(NamedTuple):
    """Cone membership verdict with the violating class when negative."""

    verdict: str
    witness: Optional[HomClass]
    degree_bound: Optional[int]
    note: Optional[str]

    def __bool__(self):
        return self.verdict != CONE_NO


def _default_degree_bound(tau):
    peak = max(abs(c) for c in tau.coeffs)
    return max(1, math.ceil(3 * peak * tau.model.rank))


def in_cone(tau: FormClass, K=None, degree_bound=None) -> ConeResult:
    """Whether tau^2 > 0 and tau(E) > 0 for every exceptional class E.

    The cone is open: boundary forms answer no.  When only a bounded
    exceptional set is available the positive answer is downgraded to
    yes_up_to_bound.  Ruled verdicts check exactly these two conditions
    and say so in the note.
    """
    model = tau.model
    if K is None:
        K = model.k0_form()
    if _gram_product(model, tau.coeffs, tau.coeffs) <= 0:
        return ConeResult(CONE_NO, None, None, "nonpositive square")
    if model.kind == RATIONAL and model.n >= 9 and degree_bound is None:
        degree_bound = _default_degree_bound(tau)
    exc = enumerate_exceptional(model, K, degree_bound)
    for E in exc.classes:
        if form_pairing(tau, E) <= 0:
            return ConeResult(CONE_NO, E, exc.degree_bound, None)
    if not exc.complete:
        return ConeResult(CONE_YES_UP_TO_BOUND, None, exc.degree_bound, None)
    note = _RULED_CONE_NOTE if model.kind == RULED else None
    return ConeResult(CONE_YES, None, None, note)


class LagrangianResult(NamedTuple):
    """Verdict of the Lagrangian-sphere-class criterion.

    On yes, ``word``/``kind`` hold the reduction certificate for rational
    models (computed after the sign change when K is a K_delta variant).
    On no, ``reason`` names every failed clause.
    """

    yes: bool
    reason: Optional[str]
    word: Optional[ReflectionWord]
    kind: Optional[str]
    area: Fraction
    characteristic: bool

    def __bool__(self):
        return self.yes


def is_lagrangian_spherical(
    xi: HomClass,
    tau: FormClass,
    K=None,
    *,
    degree_bound=None,
    allow_bounded_cone=False,
) -> LagrangianResult:
    """Yes iff xi is K-null spherical and has tau-area zero.

    tau must satisfy the closed cone conditions: positive square and
    nonnegative area on every exceptional class.  Boundary forms are
    admitted because a zero-area exceptional class does not interfere
    with either clause of the criterion.  A check that is only valid up
    to a degree bound is accepted only with allow_bounded_cone=True.
    """
    model = xi.model
    if tau.model != model:
        raise ValueError("incompatible lattice models")
    if K is None:
        K = model.k0_form()
    if _gram_product(model, tau.coeffs, tau.coeffs) <= 0:
        raise ValueError("form fails the cone conditions")
    if model.kind == RATIONAL and model.n >= 9 and degree_bound is None:
        degree_bound = _default_degree_bound(tau)
    exc = enumerate_exceptional(model, K, degree_bound)
    if any(form_pairing(tau, E) < 0 for E in exc.classes):
        raise ValueError("form fails the cone conditions")
    if not exc.complete and not allow_bounded_cone:
        raise ValueError(
            "cone membership verified only up to a degree bound; "
            "pass allow_bounded_cone=True to accept"
        )
    spherical = is_K_null_spherical(xi, K)
    area = form_pairing(tau, xi)
    failures = []
    if not spherical:
        failures.append("not K-null spherical")
    if area != 0:
        failures.append("nonzero area")
    word = kind = None
    if not failures and model.kind == RATIONAL:
        nf = cremona_reduce(_conjugate_to_k0(xi, K))
        word, kind = nf.word, nf.kind
    return LagrangianResult(
        yes=not failures,
        reason="; ".join(failures) if failures else None,
        word=word,
        kind=kind,
        area=area,
        characteristic=is_characteristic(xi),
    )


def inflation_admissible(
    A: HomClass,
    tau: FormClass,
    K=None,
    *,
    degree_bound=None,
    allow_bounded=False,
) -> bool:
    """The four inflation hypotheses, evaluated exactly.

    A^2 > 0, tau(A) > 0, A - PD(K) has nonnegative square and positive
    tau-value, and A.E >= 0 for every exceptional class E.
    """
    model = A.model
    if tau.model != model:
        raise ValueError("incompatible lattice models")
    if K is None:
        K = model.k0_form()
    cone = in_cone(tau, K, degree_bound)
    if cone.verdict == CONE_NO:
        raise ValueError("form fails the cone conditions")
    if cone.verdict == CONE_YES_UP_TO_BOUND and not allow_bounded:
        raise ValueError(
            "exceptional set only enumerated up to a degree bound; "
            "pass allow_bounded=True to accept"
        )
    if any(c.denominator != 1 for c in K.coeffs):
        raise ValueError("K is not an integral class")
    pd_k = HomClass(model, tuple(int(c) for c in K.coeffs))
    B = A - pd_k
    if pairing(A, A) <= 0 or form_pairing(tau, A) <= 0:
        return False
    if pairing(B, B) < 0 or form_pairing(tau, B) <= 0:
        return False
    exc = enumerate_exceptional(model, K, degree_bound or cone.degree_bound)
    return all(pairing(A, E) >= 0 for E in exc.classes)
