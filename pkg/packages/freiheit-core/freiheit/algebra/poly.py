"""
Dense univariate polynomials over Q(i) in the indeterminate X.

Coefficients are stored lowest degree first with no trailing zeros, so the
zero polynomial is the empty tuple and has degree NEG_INF.
"""

from dataclasses import dataclass
from itertools import zip_longest

from freiheit.algebra.gaussian import GAUSSIAN_ZERO, GaussianRational
from freiheit.errors import ParseError

# Degree of the zero polynomial; below every integer and absorbing under +.
NEG_INF = float("-inf")


def _trim(coeffs) -> tuple[GaussianRational, ...]:
    coeffs = [GaussianRational.coerce(c) for c in coeffs]
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    return tuple(coeffs)


def render_degree(degree: int | float) -> int | str:
    """JSON-friendly degree: integers stay integers, NEG_INF becomes "-inf"."""
    return "-inf" if degree == NEG_INF else int(degree)


def parse_degree(value: int | str) -> int | float:
    return NEG_INF if value == "-inf" else int(value)


@dataclass(frozen=True, slots=True)
class Poly:
    """
    A polynomial c0 + c1*X + ... + cn*X^n with Gaussian rational coefficients.

    Attributes:
        coeffs: Coefficients, lowest degree first, highest one nonzero
    """

    coeffs: tuple[GaussianRational, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @classmethod
    def zero(cls) -> "Poly":
        return cls(())

    @classmethod
    def one(cls) -> "Poly":
        return cls((GaussianRational.one(),))

    @classmethod
    def x(cls) -> "Poly":
        """The indeterminate X."""
        return cls((GAUSSIAN_ZERO, GaussianRational.one()))

    @classmethod
    def constant(cls, value) -> "Poly":
        return cls((GaussianRational.coerce(value),))

    @classmethod
    def monomial(cls, coefficient, degree: int) -> "Poly":
        if degree < 0:
            raise ValueError(f"Monomial degree must be non-negative, got {degree}")
        return cls((GAUSSIAN_ZERO,) * degree + (GaussianRational.coerce(coefficient),))

    @property
    def degree(self) -> int | float:
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def coefficient(self, k: int) -> GaussianRational:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else GAUSSIAN_ZERO

    def leading(self) -> GaussianRational:
        return self.coeffs[-1] if self.coeffs else GAUSSIAN_ZERO

    def scale(self, factor) -> "Poly":
        factor = GaussianRational.coerce(factor)
        if factor.is_zero():
            return Poly.zero()
        return Poly(tuple(c * factor for c in self.coeffs))

    def shift(self, k: int = 1) -> "Poly":
        """Multiply by X^k."""
        if not self.coeffs:
            return self
        return Poly((GAUSSIAN_ZERO,) * k + self.coeffs)

    def inverse(self) -> "Poly":
        """Inverse in F[X]; only nonzero constants are units."""
        if len(self.coeffs) != 1:
            raise ZeroDivisionError(f"{self.render()} is not a unit of F[X]")
        return Poly((self.coeffs[0].inverse(),))

    def evaluate(self, point) -> GaussianRational:
        point = GaussianRational.coerce(point)
        result = GAUSSIAN_ZERO
        for c in reversed(self.coeffs):
            result = result * point + c
        return result

    def __add__(self, other) -> "Poly":
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return Poly(
            tuple(a + b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=GAUSSIAN_ZERO))
        )

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "Poly":
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return -self + other

    def __mul__(self, other) -> "Poly":
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Poly.zero()
        if len(other.coeffs) == 1:
            return self.scale(other.coeffs[0])
        if len(self.coeffs) == 1:
            return other.scale(self.coeffs[0])
        product = [GAUSSIAN_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                product[i + j] = product[i + j] + a * b
        return Poly(tuple(product))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def render(self) -> str:
        """Sparse text form, highest degree first: "X^2 + -3*X + (1/2+i)"."""
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c.is_zero():
                continue
            terms.append(_render_term(c, k))
        return " + ".join(terms)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"Poly({self.render()!r})"

    @classmethod
    def parse(cls, text: str) -> "Poly":
        """Parse the text form produced by `render`."""
        text = text.strip()
        if text in ("", "0"):
            return cls.zero()
        coeffs: dict[int, GaussianRational] = {}
        for term in text.split(" + "):
            coefficient, degree = _parse_term(term.strip(), text)
            coeffs[degree] = coeffs.get(degree, GAUSSIAN_ZERO) + coefficient
        top = max(coeffs)
        return cls(tuple(coeffs.get(k, GAUSSIAN_ZERO) for k in range(top + 1)))


def _render_term(c: GaussianRational, k: int) -> str:
    coefficient = c.render()
    if c.re != 0 and c.im != 0:
        coefficient = f"({coefficient})"
    if k == 0:
        return coefficient
    power = "X" if k == 1 else f"X^{k}"
    if c == 1:
        return power
    if c == -1:
        return f"-{power}"
    return f"{coefficient}*{power}"


def _parse_term(term: str, source: str) -> tuple[GaussianRational, int]:
    if "X" not in term:
        return GaussianRational.parse(term.strip("()")), 0
    head, _, power = term.partition("X")
    if power == "":
        degree = 1
    elif power.startswith("^") and power[1:].isdigit():
        degree = int(power[1:])
    else:
        raise ParseError(f"Invalid polynomial term {term!r} in {source!r}")
    head = head.rstrip("*")
    if head in ("", "+"):
        return GaussianRational.one(), degree
    if head == "-":
        return -GaussianRational.one(), degree
    return GaussianRational.parse(head.strip("()")), degree


def _coerce_poly(value):
    if isinstance(value, Poly):
        return value
    if isinstance(value, GaussianRational):
        return Poly((value,))
    if isinstance(value, int):
        return Poly((GaussianRational(value, 0),))
    return NotImplemented


X = Poly.x()
