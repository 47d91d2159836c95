"""Brute-force oracles, independent of the reduction algorithms.

Two primitives: bounded exhaustive enumeration of classes satisfying
numeric constraints, and breadth-first orbit search over the twist
generators with canonical-form dedup.  Cross-checking runs both sides
of every classification decision and reports disagreements, which are
expected to be none.
"""

from dataclasses import dataclass
from itertools import combinations
import random
from typing import NamedTuple

from .classexpr import class_to_json, model_to_json, print_class
from .lattice import (
    RATIONAL,
    HomClass,
    LatticeModel,
    form_pairing,
    is_characteristic,
    pairing,
)
from .reduction import is_K_null_spherical, is_exceptional

__all__ = [
    "SAFETY_LIMIT",
    "EnumQuery",
    "enumerate_classes",
    "enumerate",
    "bfs_is_exceptional",
    "bfs_is_knull_spherical",
    "CrosscheckReport",
    "crosscheck",
]

SAFETY_LIMIT = 8

# full-grid scans have no constraint to prune on; cap the vector count
_GRID_LIMIT = 2_000_000

# predicate name -> implied (square, k_pairing), None entries left free
_PREDICATES = {
    "exceptional": (-1, -1),
    "knull": (-2, 0),
    "characteristic": (None, None),
}


def _check_int(value, label):
    if not isinstance(value, int) or isinstance(value, bool):
        raise TypeError(f"{label} must be an integer")


@dataclass(frozen=True)
class EnumQuery:
    """Constraints for a bounded exhaustive scan.

    ``square`` and ``k_pairing`` pin the corresponding invariants when
    given.  ``predicate`` names a standard filter and implies the
    matching numeric constraints (``characteristic`` filters by parity
    instead).  ``coeff_bound`` caps every basis coefficient in absolute
    value.
    """

    model: LatticeModel
    coeff_bound: int
    square: int | None = None
    k_pairing: int | None = None
    predicate: str | None = None

    def __post_init__(self):
        _check_int(self.coeff_bound, "coeff_bound")
        if self.coeff_bound < 1:
            raise ValueError("coeff_bound must be positive")
        for label in ("square", "k_pairing"):
            value = getattr(self, label)
            if value is not None:
                _check_int(value, label)
        if self.predicate is not None:
            if self.predicate not in _PREDICATES:
                raise ValueError(f"unknown predicate {self.predicate!r}")
            implied_s, implied_k = _PREDICATES[self.predicate]
            for value, implied in ((self.square, implied_s), (self.k_pairing, implied_k)):
                if value is not None and implied is not None and value != implied:
                    raise ValueError("predicate conflicts with explicit constraints")

    @property
    def resolved_square(self):
        if self.square is not None:
            return self.square
        return _PREDICATES[self.predicate][0] if self.predicate else None

    @property
    def resolved_k_pairing(self):
        if self.k_pairing is not None:
            return self.k_pairing
        return _PREDICATES[self.predicate][1] if self.predicate else None


def _e_tails(n, bound, total, sq_total):
    """All integer tails of length n with |entry| <= bound, matching the
    optional sum and square-sum targets, in lexicographic order."""
    if n == 0:
        if total in (None, 0) and sq_total in (None, 0):
            yield ()
        return
    # Cauchy-Schwarz and capacity pruning on the remaining block
    if sq_total is not None:
        if sq_total < 0 or sq_total > n * bound * bound:
            return
        if total is not None and total * total > n * sq_total:
            return
    elif total is not None and abs(total) > n * bound:
        return
    for value in range(-bound, bound + 1):
        rest_total = None if total is None else total - value
        rest_sq = None if sq_total is None else sq_total - value * value
        for tail in _e_tails(n - 1, bound, rest_total, rest_sq):
            yield (value,) + tail


def _is_characteristic_direct(x: HomClass) -> bool:
    model = x.model
    for i in range(model.rank):
        unit = model.unit(i)
        if (pairing(x, unit) - pairing(unit, unit)) % 2 != 0:
            return False
    return True


def enumerate_classes(q: EnumQuery, *, allow_large: bool = False) -> list:
    """All classes within the coefficient bound matching the query.

    Scans are sharded over the head coordinates (H, or T and F), each
    shard generated in lexicographic order, so the merged output is
    sorted by coefficient tuple and fully deterministic.
    """
    if q.coeff_bound > SAFETY_LIMIT and not allow_large:
        raise ValueError("bound exceeds safety limit")
    model = q.model
    bound = q.coeff_bound
    s = q.resolved_square
    k = q.resolved_k_pairing
    if s is None and k is None:
        size = (2 * bound + 1) ** model.rank
        if size > _GRID_LIMIT and not allow_large:
            raise ValueError("bound exceeds safety limit")

    n = model.n
    out = []
    if model.kind == RATIONAL:
        for a in range(-bound, bound + 1):
            total = None if k is None else -3 * a - k
            sq_total = None if s is None else a * a - s
            for tail in _e_tails(n, bound, total, sq_total):
                out.append(HomClass(model, (a,) + tail))
    else:
        g = model.genus
        for t in range(-bound, bound + 1):
            for f in range(-bound, bound + 1):
                total = None if k is None else (2 * g - 2) * t - 2 * f - k
                sq_total = None if s is None else 2 * t * f - s
                for tail in _e_tails(n, bound, total, sq_total):
                    out.append(HomClass(model, (t, f) + tail))
    if q.predicate == "characteristic":
        out = [x for x in out if _is_characteristic_direct(x)]
    return out


# ---------------------------------------------------------------------------
# orbit search


def _canon(model, coeffs):
    head = model.e_offset
    return coeffs[:head] + tuple(sorted(coeffs[head:]))


def _children(model, node):
    """Canonical forms one twist away, one child per distinct value tuple.

    Transpositions of E-coefficients are absorbed by canonicalization,
    so only the head-mixing generators produce children: the ternary
    twists in the rational model, the fiber-binary twists in the ruled
    model.
    """
    head = model.e_offset
    c = node[head:]
    n = len(c)
    seen = set()
    if model.kind == RATIONAL:
        a = node[0]
        for i, j, k in combinations(range(n), 3):
            trip = (c[i], c[j], c[k])
            if trip in seen:
                continue
            seen.add(trip)
            d = a + c[i] + c[j] + c[k]
            if d == 0:
                continue
            tail = list(c)
            tail[i] -= d
            tail[j] -= d
            tail[k] -= d
            yield (a + d,) + tuple(sorted(tail))
    else:
        t, f = node[0], node[1]
        for i, j in combinations(range(n), 2):
            pair = (c[i], c[j])
            if pair in seen:
                continue
            seen.add(pair)
            d = t + c[i] + c[j]
            if d == 0:
                continue
            tail = list(c)
            tail[i] -= d
            tail[j] -= d
            yield (t, f + d) + tuple(sorted(tail))


def _orbit_search(x: HomClass, target, depth) -> bool:
    model = x.model
    if depth is None:
        depth = 2 * model.n
    node = _canon(model, tuple(x.coeffs))
    if target(model, node):
        return True
    seen = {node}
    frontier = [node]
    for _ in range(depth):
        nxt = []
        for node in frontier:
            for child in _children(model, node):
                if child in seen:
                    continue
                seen.add(child)
                if target(model, child):
                    return True
                nxt.append(child)
        frontier = nxt
        if not frontier:
            break
    return False


def _target_exceptional(model, node):
    head = model.e_offset
    c = node[head:]
    nonzero = [v for v in c if v]
    if model.kind == RATIONAL:
        a = node[0]
        if a == 0:
            return nonzero == [1]
        # at n=2 no ternary twist exists and H-E1-E2 seeds its own orbit
        if model.n == 2 and a == 1:
            return c == (-1, -1)
        return False
    t, f = node[0], node[1]
    if t != 0 or len(nonzero) != 1:
        return False
    return (f, nonzero[0]) in ((0, 1), (1, -1))


def _target_knull(model, node):
    head = model.e_offset
    c = node[head:]
    nonzero = sorted(v for v in c if v)
    if model.kind == RATIONAL:
        a = node[0]
        if a == 0:
            return nonzero == [-1, 1]
        if a in (1, -1):
            return nonzero == [-a, -a, -a]
        return False
    t, f = node[0], node[1]
    if t != 0:
        return False
    if f == 0:
        return nonzero == [-1, 1]
    return abs(f) == 1 and nonzero == [-f, -f]


def bfs_is_exceptional(x: HomClass, *, depth: int | None = None) -> bool:
    """Exceptional test from the definition: numeric invariants plus a
    bounded-depth orbit search reaching a seed class."""
    k0 = x.model.k0_form()
    if pairing(x, x) != -1 or form_pairing(k0, x) != -1:
        return False
    return _orbit_search(x, _target_exceptional, depth)


def bfs_is_knull_spherical(x: HomClass, *, depth: int | None = None) -> bool:
    """K-null spherical test from the definition: numeric invariants
    plus a bounded-depth orbit search reaching a binary or ternary
    class (fiber-binary in the ruled model)."""
    k0 = x.model.k0_form()
    if pairing(x, x) != -2 or form_pairing(k0, x) != 0:
        return False
    return _orbit_search(x, _target_knull, depth)


# ---------------------------------------------------------------------------
# cross-checking


class Disagreement(NamedTuple):
    cls: HomClass
    operation: str
    library: bool
    oracle: bool


@dataclass(frozen=True)
class CrosscheckReport:
    query: EnumQuery
    classes: tuple
    disagreements: tuple

    @property
    def checked(self) -> int:
        return len(self.classes)

    @property
    def ok(self) -> bool:
        return not self.disagreements

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        q = self.query
        return {
            "query": {
                "model": model_to_json(q.model),
                "coeff_bound": q.coeff_bound,
                "square": q.square,
                "k_pairing": q.k_pairing,
                "predicate": q.predicate,
            },
            "classes": [class_to_json(x) for x in self.classes],
            "summary": {
                "checked": self.checked,
                "disagreements": [
                    {
                        "class": class_to_json(d.cls),
                        "text": print_class(d.cls),
                        "operation": d.operation,
                        "library": d.library,
                        "oracle": d.oracle,
                    }
                    for d in self.disagreements
                ],
            },
        }


def crosscheck(
    q: EnumQuery,
    *,
    allow_large: bool = False,
    depth: int | None = None,
    sample: int | None = None,
    seed: int | None = None,
) -> CrosscheckReport:
    """Compare the library classifications with the definitional oracles
    on every class matched by the query.

    ``sample`` keeps a seeded random subset when the query matches more
    classes than requested.  The report lists all disagreements; an
    empty list means the two sides agree everywhere.
    """
    classes = enumerate_classes(q, allow_large=allow_large)
    if sample is not None and len(classes) > sample:
        rng = random.Random(seed)
        classes = sorted(rng.sample(classes, sample), key=lambda x: x.coeffs)
    k0 = q.model.k0_form()
    disagreements = []
    for x in classes:
        lib = is_exceptional(x, k0)
        orc = bfs_is_exceptional(x, depth=depth)
        if lib != orc:
            disagreements.append(Disagreement(x, "exceptional", lib, orc))
        lib = is_K_null_spherical(x, k0)
        orc = bfs_is_knull_spherical(x, depth=depth)
        if lib != orc:
            disagreements.append(Disagreement(x, "knull", lib, orc))
        if q.predicate == "characteristic":
            lib = is_characteristic(x)
            orc = _is_characteristic_direct(x)
            if lib != orc:
                disagreements.append(Disagreement(x, "characteristic", lib, orc))
    return CrosscheckReport(q, tuple(classes), tuple(disagreements))


# the operation is published under this name; keep the builtin out of
# reach below this line
enumerate = enumerate_classes
