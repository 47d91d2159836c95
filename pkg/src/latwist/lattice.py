"""Intersection lattices of blown-up rational and ruled surfaces.

Two models are supported, each with a fixed ordered basis:

  rational: basis (H, E1, ..., En), H.H = 1, Ei.Ei = -1, cross terms 0
  ruled:    basis (T, F, E1, ..., En), T.F = 1, T.T = F.F = 0, Ei.Ei = -1

Homology classes carry integer coefficients, cohomology classes carry
exact rationals, and both pair through the same gram matrix (a class is
identified with its Poincare dual, so one coefficient convention serves
both sides).  Everything here is exact; no floats appear anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

RATIONAL = "rational"
RULED = "ruled"

_ADMISSIBLE_SQUARES = (1, -1, 2, -2)


@dataclass(frozen=True)
class LatticeModel:
    """The ambient lattice: either rational(n) or ruled(h, n).

    ``n`` counts the exceptional basis classes.  ``genus`` is the base
    genus of the ruled model and is 0 for rational models.
    """

    kind: str
    n: int
    genus: int = 0

    def __post_init__(self):
        if self.kind not in (RATIONAL, RULED):
            raise ValueError(f"unknown model kind {self.kind!r}")
        if self.n < 0:
            raise ValueError("n must be nonnegative")
        if self.kind == RULED and self.genus < 1:
            raise ValueError("ruled model needs positive genus")
        if self.kind == RATIONAL and self.genus != 0:
            raise ValueError("rational model carries no genus")

    @staticmethod
    def rational(n: int) -> "LatticeModel":
        return LatticeModel(RATIONAL, n)

    @staticmethod
    def ruled(h: int, n: int) -> "LatticeModel":
        return LatticeModel(RULED, n, h)

    @property
    def rank(self) -> int:
        return (1 if self.kind == RATIONAL else 2) + self.n

    @property
    def e_offset(self) -> int:
        """Index of E1 in the coefficient vector."""
        return 1 if self.kind == RATIONAL else 2

    @property
    def basis_names(self) -> tuple:
        head = ("H",) if self.kind == RATIONAL else ("T", "F")
        return head + tuple(f"E{i}" for i in range(1, self.n + 1))

    @property
    def gram(self) -> tuple:
        r = self.rank
        rows = [[0] * r for _ in range(r)]
        if self.kind == RATIONAL:
            rows[0][0] = 1
        else:
            rows[0][1] = 1
            rows[1][0] = 1
        for i in range(self.e_offset, r):
            rows[i][i] = -1
        return tuple(tuple(row) for row in rows)

    def k0(self) -> "HomClass":
        """PD of the standard canonical class, as a homology class."""
        if self.kind == RATIONAL:
            coeffs = (-3,) + (1,) * self.n
        else:
            coeffs = (-2, 2 * self.genus - 2) + (1,) * self.n
        return HomClass(self, coeffs)

    def k0_form(self) -> "FormClass":
        """The standard canonical class, as an evaluating form."""
        return FormClass(self, self.k0().coeffs)

    def zero(self) -> "HomClass":
        return HomClass(self, (0,) * self.rank)

    def unit(self, index: int) -> "HomClass":
        coeffs = [0] * self.rank
        coeffs[index] = 1
        return HomClass(self, tuple(coeffs))

    def E(self, i: int) -> "HomClass":
        """The i-th exceptional basis class, 1-based."""
        if not 1 <= i <= self.n:
            raise ValueError(f"index out of range: E{i} in a model with n={self.n}")
        return self.unit(self.e_offset + i - 1)

    def basis(self) -> tuple:
        return tuple(self.unit(j) for j in range(self.rank))

    def __repr__(self):
        if self.kind == RATIONAL:
            return f"LatticeModel.rational({self.n})"
        return f"LatticeModel.ruled({self.genus}, {self.n})"


def _check_same_model(x, y):
    if x.model != y.model:
        raise ValueError("incompatible lattice models")


@dataclass(frozen=True)
class HomClass:
    """A homology class: an integer coefficient vector in basis order."""

    model: LatticeModel
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.model.rank:
            raise ValueError("coefficient vector length does not match rank")
        for c in self.coeffs:
            if not isinstance(c, int):
                raise TypeError("homology coefficients must be exact integers")

    def square(self) -> int:
        return pairing(self, self)

    def e_coeffs(self) -> tuple:
        return self.coeffs[self.model.e_offset:]

    def __add__(self, other):
        _check_same_model(self, other)
        return HomClass(self.model, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        _check_same_model(self, other)
        return HomClass(self.model, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return HomClass(self.model, tuple(-a for a in self.coeffs))

    def __rmul__(self, k):
        if not isinstance(k, int):
            raise TypeError("homology classes scale by integers only")
        return HomClass(self.model, tuple(k * a for a in self.coeffs))


@dataclass(frozen=True)
class FormClass:
    """A cohomology class: an exact rational coefficient vector."""

    model: LatticeModel
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.model.rank:
            raise ValueError("coefficient vector length does not match rank")
        coerced = []
        for c in self.coeffs:
            if isinstance(c, float):
                raise TypeError("form coefficients must be exact rationals, not floats")
            coerced.append(Fraction(c))
        object.__setattr__(self, "coeffs", tuple(coerced))

    def __add__(self, other):
        _check_same_model(self, other)
        return FormClass(self.model, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        _check_same_model(self, other)
        return FormClass(self.model, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return FormClass(self.model, tuple(-a for a in self.coeffs))

    def __rmul__(self, k):
        return FormClass(self.model, tuple(Fraction(k) * a for a in self.coeffs))


def _gram_product(model: LatticeModel, u, v):
    """u^T gram v on raw coefficient sequences, int or Fraction."""
    off = model.e_offset
    if model.kind == RATIONAL:
        head = u[0] * v[0]
    else:
        head = u[0] * v[1] + u[1] * v[0]
    return head - sum(a * b for a, b in zip(u[off:], v[off:]))


def pairing(x: HomClass, y: HomClass) -> int:
    """The intersection pairing x.y."""
    _check_same_model(x, y)
    return _gram_product(x.model, x.coeffs, y.coeffs)


def form_pairing(tau: FormClass, x) -> Fraction:
    """Evaluate the form tau on the class x, exactly."""
    _check_same_model(tau, x)
    return Fraction(_gram_product(tau.model, tau.coeffs, x.coeffs))


def reflect(gamma: HomClass, beta: HomClass) -> HomClass:
    """The reflection along gamma: beta - 2(gamma.beta)/(gamma.gamma) gamma.

    Defined only for gamma of square +-1 or +-2, which keeps the result
    integral for every integral beta.
    """
    _check_same_model(gamma, beta)
    s = pairing(gamma, gamma)
    if s not in _ADMISSIBLE_SQUARES:
        raise ValueError("reflection undefined for this square")
    c, rem = divmod(2 * pairing(gamma, beta), s)
    if rem:
        # unreachable for the admissible squares, kept as a hard check
        raise ArithmeticError("non-integral reflection coefficient")
    return HomClass(beta.model, tuple(b - c * g for b, g in zip(beta.coeffs, gamma.coeffs)))


def reflection_matrix(gamma: HomClass) -> tuple:
    """Matrix of reflect(gamma, .) acting on coefficient vectors."""
    model = gamma.model
    cols = [reflect(gamma, model.unit(j)).coeffs for j in range(model.rank)]
    return tuple(tuple(cols[j][i] for j in range(model.rank)) for i in range(model.rank))


def is_characteristic(xi: HomClass) -> bool:
    """Whether xi.x = x.x mod 2 for every class x.

    By bilinearity it is enough to test the basis vectors.
    """
    model = xi.model
    gram = model.gram
    for j in range(model.rank):
        dot = sum(gram[j][i] * xi.coeffs[i] for i in range(model.rank))
        if (dot - gram[j][j]) % 2:
            return False
    return True


# Small exact matrix helpers shared by the word and isometry types.
# Matrices are tuples of row tuples acting on column coefficient vectors.

def mat_identity(rank: int) -> tuple:
    return tuple(tuple(1 if i == j else 0 for j in range(rank)) for i in range(rank))


def mat_mul(a: tuple, b: tuple) -> tuple:
    bt = tuple(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def mat_vec(a: tuple, v) -> tuple:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def mat_transpose(a: tuple) -> tuple:
    return tuple(zip(*a))
