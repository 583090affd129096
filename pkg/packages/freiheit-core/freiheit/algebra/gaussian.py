"""
Gaussian rationals Q(i).

Exact complex numbers with rational real and imaginary parts. Text form is
"a/b+c/d*i", e.g. "1/2-3*i", "-2*i", "5".
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from freiheit.errors import ParseError

_UNSIGNED = r"\d+(?:/\d+)?"
# "a", "a+b*i", "a-i", "b*i", "-i"; the "*" before i is optional
_GAUSSIAN_RE = re.compile(
    rf"^(?:(?P<real>[+-]?{_UNSIGNED})"
    rf"|(?P<re>[+-]?{_UNSIGNED})(?P<sign>[+-])(?P<im>{_UNSIGNED})?\*?i"
    rf"|(?P<im_sign>[+-])?(?P<im_only>{_UNSIGNED})?\*?i)$"
)


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"Cannot use {type(value).__name__} as an exact rational")


@dataclass(frozen=True, slots=True)
class GaussianRational:
    """
    An element re + im*i of Q(i).

    Both parts are Fractions, so they are always reduced with a positive
    denominator.
    """

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", _as_fraction(self.re))
        object.__setattr__(self, "im", _as_fraction(self.im))

    @classmethod
    def zero(cls) -> "GaussianRational":
        return cls(0, 0)

    @classmethod
    def one(cls) -> "GaussianRational":
        return cls(1, 0)

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        """Accept a GaussianRational, an int/Fraction, or a text form."""
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, str):
            return cls.parse(value)
        return cls(_as_fraction(value), 0)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        """Field norm re^2 + im^2."""
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussianRational":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("Gaussian rational 0 has no inverse")
        return GaussianRational(self.re / n, -self.im / n)

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __add__(self, other) -> "GaussianRational":
        other = _coerce_operand(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other) -> "GaussianRational":
        other = _coerce_operand(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other) -> "GaussianRational":
        return -self + other

    def __mul__(self, other) -> "GaussianRational":
        other = _coerce_operand(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> "GaussianRational":
        other = _coerce_operand(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> "GaussianRational":
        return self.inverse() * other

    def __eq__(self, other) -> bool:
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def render(self) -> str:
        """Canonical text form, parsed back by `parse`."""
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}*i"

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"GaussianRational({self.render()!r})"

    @classmethod
    def parse(cls, text: str) -> "GaussianRational":
        """Parse "a/b+c/d*i" style text (spaces ignored)."""
        compact = text.replace(" ", "")
        match = _GAUSSIAN_RE.match(compact)
        if not match:
            raise ParseError(f"Invalid Gaussian rational: {text!r}")
        if match.group("real") is not None:
            return cls(Fraction(match.group("real")), 0)
        if match.group("re") is not None:
            real, sign, coefficient = match.group("re"), match.group("sign"), match.group("im")
        else:
            real, sign, coefficient = "0", match.group("im_sign"), match.group("im_only")
        im = Fraction(coefficient) if coefficient else Fraction(1)
        return cls(Fraction(real), -im if sign == "-" else im)


def _coerce_operand(value):
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussianRational(value, 0)
    return NotImplemented


GAUSSIAN_ZERO = GaussianRational(0, 0)
GAUSSIAN_ONE = GaussianRational(1, 0)
