"""
2x2 matrices over an exact commutative ring.

The ring is either GaussianRational (elements of GL2(F)) or Poly (elements
of GL2(F[X])). Anything implementing the `RingElement` protocol works.
"""

from collections.abc import Callable, Sequence
from dataclasses import dataclass
from typing import Generic, Protocol, TypeVar

from freiheit.algebra.gaussian import GaussianRational
from freiheit.algebra.poly import Poly
from freiheit.errors import ParseError


class RingElement(Protocol):
    """What Mat2 needs from its entries."""

    def __add__(self, other): ...
    def __sub__(self, other): ...
    def __mul__(self, other): ...
    def __neg__(self): ...
    def is_zero(self) -> bool: ...
    def inverse(self): ...
    def render(self) -> str: ...


R = TypeVar("R", bound=RingElement)


@dataclass(frozen=True)
class Mat2(Generic[R]):
    """
    The matrix [[a, b], [c, d]].

    Immutable; products, inverses and conjugates return new matrices.
    """

    a: R
    b: R
    c: R
    d: R

    @classmethod
    def of(cls, rows: Sequence[Sequence], ring: type = GaussianRational) -> "Mat2":
        """Build from [[a, b], [c, d]], coercing entries into `ring`."""
        if len(rows) != 2 or any(len(row) != 2 for row in rows):
            raise ParseError(f"Expected a 2x2 array, got {rows!r}")
        coerce = GaussianRational.coerce if ring is GaussianRational else _coerce_poly_entry
        (a, b), (c, d) = rows
        return cls(coerce(a), coerce(b), coerce(c), coerce(d))

    @classmethod
    def identity(cls, ring: type = GaussianRational) -> "Mat2":
        return cls(ring.one(), ring.zero(), ring.zero(), ring.one())

    @property
    def ring(self) -> type:
        return type(self.a)

    def rows(self) -> tuple[tuple[R, R], tuple[R, R]]:
        return ((self.a, self.b), (self.c, self.d))

    def det(self) -> R:
        return self.a * self.d - self.b * self.c

    def trace(self) -> R:
        return self.a + self.d

    def __mul__(self, other: "Mat2") -> "Mat2":
        if not isinstance(other, Mat2):
            return NotImplemented
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __add__(self, other: "Mat2") -> "Mat2":
        if not isinstance(other, Mat2):
            return NotImplemented
        return Mat2(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    def __neg__(self) -> "Mat2":
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def inverse(self) -> "Mat2":
        """Inverse matrix; the determinant must be a unit of the ring."""
        det = self.det()
        if det.is_zero():
            raise ZeroDivisionError("Matrix is singular")
        u = det.inverse()
        return Mat2(self.d * u, -self.b * u, -self.c * u, self.a * u)

    def __pow__(self, n: int) -> "Mat2":
        base = self if n >= 0 else self.inverse()
        result = Mat2.identity(self.ring)
        n = abs(n)
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate_by(self, p: "Mat2") -> "Mat2":
        """P * M * P^-1."""
        return p * self * p.inverse()

    def map(self, f: Callable) -> "Mat2":
        return Mat2(f(self.a), f(self.b), f(self.c), f(self.d))

    def lift(self) -> "Mat2[Poly]":
        """View a matrix over F as a matrix of constant polynomials."""
        if self.ring is Poly:
            return self
        return self.map(Poly.constant)

    def is_identity(self) -> bool:
        return self.is_scalar() and self.a == self.ring.one()

    def is_scalar(self) -> bool:
        return self.b.is_zero() and self.c.is_zero() and self.a == self.d

    def is_upper_triangular(self) -> bool:
        return self.c.is_zero()

    def apply(self, vector: tuple) -> tuple:
        x, y = vector
        return (self.a * x + self.b * y, self.c * x + self.d * y)

    def to_complex(self) -> tuple[complex, complex, complex, complex]:
        if self.ring is not GaussianRational:
            raise TypeError("Only matrices over Q(i) have complex entries")
        return (self.a.to_complex(), self.b.to_complex(), self.c.to_complex(), self.d.to_complex())

    def render(self) -> list[list[str]]:
        """JSON form: [[a, b], [c, d]] with entries in their text forms."""
        return [[self.a.render(), self.b.render()], [self.c.render(), self.d.render()]]

    @classmethod
    def parse(cls, rows, ring: type = GaussianRational) -> "Mat2":
        if ring is GaussianRational:
            return cls.of([[GaussianRational.parse(str(x)) for x in row] for row in rows])
        return cls.of([[Poly.parse(str(x)) for x in row] for row in rows], ring=Poly)

    def __str__(self) -> str:
        (a, b), (c, d) = self.render()
        return f"[[{a}, {b}], [{c}, {d}]]"


def _coerce_poly_entry(value) -> Poly:
    if isinstance(value, Poly):
        return value
    if isinstance(value, str):
        return Poly.parse(value)
    return Poly.constant(value)


def lambda_power(m: int) -> Mat2[Poly]:
    """Lambda^m = [[1, m*X], [0, 1]]."""
    return Mat2(Poly.one(), Poly.monomial(m, 1) if m else Poly.zero(), Poly.zero(), Poly.one())
