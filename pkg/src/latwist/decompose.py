"""Factoring lattice isometries into reflection words.

All three decompositions return a ReflectionWord whose generator
product equals the input matrix exactly; the product is recomputed and
compared before returning, so a successful call is its own certificate.

decompose_K      rational isometries preserving K_0, factored into
                 binary twists R(E_i-E_j) and ternary twists
                 R(H-E_i-E_j-E_k).  Column by column the image of E_i
                 is reduced to a basis class: while its H-coefficient
                 is positive, a ternary twist on the three largest
                 exceptional coefficients strictly lowers it, and a
                 final transposition moves the basis class into place.
                 Settled columns are never touched again because every
                 later generator is orthogonal to them.

decompose_K_alpha  as above, but every generator must also annihilate
                 a fixed form alpha.  The matrix is first conjugated by
                 a frame change sending a greedily chosen family of
                 alpha-minimal, mutually orthogonal exceptional classes
                 to E_1, E_2, ...  In that frame the staged reduction
                 can only ever meet area-zero generators: each ternary
                 core has nonnegative area by minimality of the frame
                 while the running image's area is pinned to its
                 minimum, forcing equality.  The word is conjugated
                 back at the end, which preserves both the product and
                 the area of every core.

decompose_ruled  ruled isometries preserving K_0 and alpha, factored
                 into twists along E_i-E_j and F-E_i-E_j.  The fiber
                 class must be fixed outright.  Exceptional indices are
                 consumed in order of increasing area; the image of the
                 chosen class is either already in place, orthogonal to
                 it (one twist), or its fiber complement (two twists
                 through a spare index).

A matrix that validates but cannot be factored raises
DecompositionError rather than being silently accepted; such a matrix
lies outside the subgroup the twist generators span.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

from .classexpr import model_from_json, model_to_json
from .cone import CONE_YES, enumerate_exceptional, in_cone
from .lattice import (
    RATIONAL,
    RULED,
    FormClass,
    HomClass,
    LatticeModel,
    form_pairing,
    mat_identity,
    mat_mul,
    mat_transpose,
    mat_vec,
    pairing,
    reflect,
    reflection_matrix,
)
from .reduction import ReflectionWord


class DecompositionError(RuntimeError):
    """The matrix validated but could not be factored into twists."""


@dataclass(frozen=True)
class IsometryMatrix:
    """An integer matrix acting on coefficient column vectors."""

    model: LatticeModel
    entries: tuple

    def __post_init__(self):
        rank = self.model.rank
        entries = tuple(tuple(row) for row in self.entries)
        if len(entries) != rank or any(len(row) != rank for row in entries):
            raise ValueError(f"matrix must be {rank}x{rank}")
        for row in entries:
            for v in row:
                if not isinstance(v, int) or isinstance(v, bool):
                    raise TypeError("matrix entries must be integers")
        object.__setattr__(self, "entries", entries)

    @staticmethod
    def identity(model: LatticeModel) -> "IsometryMatrix":
        return IsometryMatrix(model, mat_identity(model.rank))

    @staticmethod
    def from_word(word: ReflectionWord) -> "IsometryMatrix":
        return IsometryMatrix(word.model, word.matrix)

    def apply(self, xi: HomClass) -> HomClass:
        if xi.model != self.model:
            raise ValueError("incompatible lattice models")
        return HomClass(self.model, mat_vec(self.entries, xi.coeffs))


class ValidationReport(NamedTuple):
    """Which of the isometry preconditions hold, failures named."""

    ok: bool
    failures: tuple

    def __bool__(self):
        return self.ok


def _pullback(model, entries, coeffs):
    # form composed with the matrix; in the Poincare-dual coefficient
    # convention that is G M^T G applied to the form's vector
    g = model.gram
    return mat_vec(g, mat_vec(mat_transpose(entries), mat_vec(g, coeffs)))


def validate(M: IsometryMatrix, K: Optional[FormClass] = None, alpha=None) -> ValidationReport:
    """Check pairing preservation, K-preservation, and alpha-preservation."""
    model = M.model
    if K is None:
        K = model.k0_form()
    failures = []
    gram = model.gram
    if mat_mul(mat_transpose(M.entries), mat_mul(gram, M.entries)) != gram:
        failures.append("pairing not preserved")
    if _pullback(model, M.entries, K.coeffs) != tuple(K.coeffs):
        failures.append("K not preserved")
    if alpha is not None and _pullback(model, M.entries, alpha.coeffs) != tuple(alpha.coeffs):
        failures.append("alpha not preserved")
    return ValidationReport(ok=not failures, failures=tuple(failures))


def _require_valid(M, K, alpha=None):
    report = validate(M, K, alpha)
    if not report.ok:
        raise ValueError("matrix fails validation: " + ", ".join(report.failures))


def _finish(model, M, gens):
    # gens were applied chronologically by left multiplication, so the
    # listed-order product of an involutive family reproduces M
    word = ReflectionWord(model, tuple(gens))
    if word.matrix != M.entries:
        raise DecompositionError("residual not resolvable")
    return word


def _class_reduction_gens(model, v, i):
    """Chronological twists carrying v to E_i, supported on indices >= i.

    v must be an exceptional class orthogonal to E_1, ..., E_{i-1}.
    """
    n = model.n
    H = model.unit(0)
    gens = []
    while v.coeffs[0] != 0:
        if v.coeffs[0] < 0:
            raise DecompositionError("residual not resolvable")
        top = sorted(range(i, n + 1), key=lambda j: v.coeffs[j])[:3]
        if len(top) < 3:
            raise DecompositionError("residual not resolvable")
        if v.coeffs[0] + sum(v.coeffs[j] for j in top) >= 0:
            raise DecompositionError("residual not resolvable")
        g = H - model.E(top[0]) - model.E(top[1]) - model.E(top[2])
        gens.append(g)
        v = reflect(g, v)
    target = next((j for j in range(i, n + 1) if v == model.E(j)), None)
    if target is None:
        raise DecompositionError("residual not resolvable")
    if target != i:
        gens.append(model.E(i) - model.E(target))
    return gens


def _staged_reduction(model, entries):
    """Chronological generators reducing the matrix to the identity.

    The identity M = product of the generators in listed order holds
    because each one is applied by left multiplication and reflections
    are involutions.
    """
    n = model.n
    cur = entries
    gens = []
    for i in range(1, n - 1):
        v = HomClass(model, tuple(row[i] for row in cur))
        for g in _class_reduction_gens(model, v, i):
            gens.append(g)
            cur = mat_mul(reflection_matrix(g), cur)
    if n >= 2:
        last = HomClass(model, tuple(row[n] for row in cur))
        if last == model.E(n - 1):
            g = model.E(n - 1) - model.E(n)
            gens.append(g)
            cur = mat_mul(reflection_matrix(g), cur)
    if cur != mat_identity(model.rank):
        raise DecompositionError("residual not resolvable")
    return gens


def decompose_K(M: IsometryMatrix) -> ReflectionWord:
    """Factor a K_0-preserving rational isometry into twist generators."""
    model = M.model
    if model.kind != RATIONAL:
        raise ValueError("decompose_K expects a rational model")
    _require_valid(M, model.k0_form())
    return _finish(model, M, _staged_reduction(model, M.entries))


def _greedy_orthogonal_family(model, alpha):
    """n-2 mutually orthogonal exceptional classes of successively
    minimal alpha-area.

    Ties break toward the lexicographically smallest coefficient
    vector, keeping certificates reproducible.
    """
    if model.n > 8:
        raise DecompositionError("alpha-minimality basis construction failed")
    pool = list(enumerate_exceptional(model).classes)
    family = []
    for _ in range(model.n - 2):
        if not pool:
            raise DecompositionError("alpha-minimality basis construction failed")
        best = min(pool, key=lambda e: (form_pairing(alpha, e), e.coeffs))
        family.append(best)
        pool = [e for e in pool if pairing(e, best) == 0]
    return family


def _frame_isometry(model, family):
    """A product of K_0-twists psi with psi(family[i-1]) = E_i."""
    cur = mat_identity(model.rank)
    for i, e in enumerate(family, start=1):
        v = HomClass(model, mat_vec(cur, e.coeffs))
        for g in _class_reduction_gens(model, v, i):
            cur = mat_mul(reflection_matrix(g), cur)
    return cur


def decompose_K_alpha(M: IsometryMatrix, alpha: FormClass) -> ReflectionWord:
    """Factor a (K_0, alpha)-preserving rational isometry into twists
    whose cores all have alpha-area zero."""
    model = M.model
    if model.kind != RATIONAL:
        raise ValueError("decompose_K_alpha expects a rational model")
    if alpha.model != model:
        raise ValueError("incompatible lattice models")
    _require_valid(M, model.k0_form(), alpha)

    if model.n <= 2:
        gens = _staged_reduction(model, M.entries)
        for g in gens:
            if form_pairing(alpha, g) != 0:
                raise DecompositionError("generator with nonzero alpha-area")
        return _finish(model, M, gens)

    if model.n > 8:
        raise DecompositionError("alpha-minimality basis construction failed")
    if in_cone(alpha).verdict != CONE_YES:
        raise ValueError("alpha must lie in the symplectic cone")

    family = _greedy_orthogonal_family(model, alpha)
    psi = _frame_isometry(model, family)
    gram = model.gram
    # psi preserves gram, so its inverse is G psi^T G
    psi_inv = mat_mul(gram, mat_mul(mat_transpose(psi), gram))
    # pulling alpha back along psi^{-1} pushes its dual vector forward
    alpha_prime = FormClass(model, mat_vec(psi, alpha.coeffs))
    M_prime = mat_mul(psi, mat_mul(M.entries, psi_inv))

    gens = []
    for g in _staged_reduction(model, M_prime):
        if form_pairing(alpha_prime, g) != 0:
            raise DecompositionError("generator with nonzero alpha-area")
        gens.append(HomClass(model, mat_vec(psi_inv, g.coeffs)))
    for g in gens:
        assert form_pairing(alpha, g) == 0
    return _finish(model, M, gens)


def decompose_ruled(M: IsometryMatrix, alpha: FormClass) -> ReflectionWord:
    """Factor a (K_0, alpha)-preserving ruled isometry into twists along
    E_i-E_j and F-E_i-E_j cores, all of alpha-area zero."""
    model = M.model
    if model.kind != RULED:
        raise ValueError("decompose_ruled expects a ruled model")
    if alpha.model != model:
        raise ValueError("incompatible lattice models")
    _require_valid(M, model.k0_form(), alpha)
    n = model.n
    F = model.unit(1)
    if M.apply(F) != F:
        raise DecompositionError("fiber class not preserved")
    if n == 0:
        if M.entries != mat_identity(model.rank):
            raise DecompositionError("no twists available")
        return ReflectionWord(model, ())

    cur = M.entries
    gens = []
    remaining = list(range(1, n + 1))

    def img(xi):
        return HomClass(model, mat_vec(cur, xi.coeffs))

    def push(g):
        nonlocal cur
        if form_pairing(alpha, g) != 0:
            raise DecompositionError("generator with nonzero alpha-area")
        gens.append(g)
        cur = mat_mul(reflection_matrix(g), cur)

    while remaining:
        pool = []
        for j in remaining:
            pool.append((j, model.E(j)))
            pool.append((j, F - model.E(j)))
        j, e = min(pool, key=lambda p: (form_pairing(alpha, p[1]), p[1].coeffs))
        c = img(e)
        if c not in {x for _, x in pool}:
            raise DecompositionError("residual not resolvable")
        if c != e:
            if pairing(c, e) == 0:
                push(e - c)
            else:
                # c is the fiber complement of e; route through a spare index
                spare = [k for k in remaining if k != j]
                if not spare:
                    raise DecompositionError("residual not resolvable")
                e2 = model.E(spare[0])
                push(e2 - e)
                push(F - e2 - e)
            if img(e) != e:
                raise DecompositionError("residual not resolvable")
        remaining.remove(j)
    if cur != mat_identity(model.rank):
        raise DecompositionError("residual not resolvable")
    return _finish(model, M, gens)


def matrix_to_json(M: IsometryMatrix) -> dict:
    return {
        "model": model_to_json(M.model),
        "entries": [list(row) for row in M.entries],
    }


def matrix_from_json(data: dict) -> IsometryMatrix:
    model = model_from_json(data["model"])
    entries = data["entries"]
    if not isinstance(entries, list) or not all(isinstance(r, list) for r in entries):
        raise ValueError("entries must be a list of rows")
    return IsometryMatrix(model, tuple(tuple(row) for row in entries))
