"""
Models for upper-half-space geometry.

Points of H^3 = {(z, t): z complex, t > 0}, numeric PSL2(C) representatives,
and the reports produced by the displacement-sum obstruction.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

# Verdicts for ObstructionReport
OBSTRUCTION_VERDICTS = ("consistent", "obstructed")

# Stated verbatim in every obstructed report: for input that may not be
# discrete the test cannot tell which half of the disjunction fails.
OBSTRUCTION_MEANING = (
    "the elements do not simultaneously generate a discrete group "
    "and freely generate a free group of rank k"
)
CONSISTENT_MEANING = "no conclusion: the displacement sum is at most 1/2"


def complex_pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def parse_complex(value) -> complex:
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError(f"Complex numbers are [re, im] pairs, got {value!r}")
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, str):
        return complex(value.replace(" ", "").replace("i", "j"))
    raise ValueError(f"Cannot read a complex number from {value!r}")


@dataclass(frozen=True)
class UHPoint:
    """
    A point (z, t) of upper half-space.

    Attributes:
        z: Horizontal coordinate
        t: Height, strictly positive
    """

    z: complex
    t: float

    def __post_init__(self):
        object.__setattr__(self, "z", complex(self.z))
        object.__setattr__(self, "t", float(self.t))
        if not self.t > 0 or not math.isfinite(self.t):
            raise ValueError(f"Height must be a positive real number, got {self.t}")

    @classmethod
    def j(cls) -> "UHPoint":
        """The point (0, 1)."""
        return cls(0j, 1.0)

    @classmethod
    def from_coordinates(cls, x: np.ndarray) -> "UHPoint":
        """Inverse of `coordinates`: (Re z, Im z, log t)."""
        return cls(complex(x[0], x[1]), math.exp(x[2]))

    def coordinates(self) -> np.ndarray:
        return np.array([self.z.real, self.z.imag, math.log(self.t)])

    def to_dict(self) -> dict:
        return {"z": complex_pair(self.z), "t": self.t}

    @classmethod
    def from_dict(cls, data: dict) -> "UHPoint":
        return cls(parse_complex(data["z"]), float(data["t"]))


@dataclass(frozen=True)
class MoebiusNumeric:
    """
    A double-precision SL2(C) representative of an element of PSL2(C).

    Use `normalized` to build one from an arbitrary invertible matrix.
    """

    a: complex
    b: complex
    c: complex
    d: complex

    DET_TOL = 1e-9

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        scale = max(1.0, self.frobenius_sq())
        if abs(self.det() - 1) > self.DET_TOL * scale:
            raise ValueError(f"Matrix is not normalized: det = {self.det()}")

    @classmethod
    def normalized(cls, a, b, c, d) -> "MoebiusNumeric":
        """Scale [[a, b], [c, d]] by 1/sqrt(det) so the determinant is 1."""
        a, b, c, d = complex(a), complex(b), complex(c), complex(d)
        det = a * d - b * c
        if det == 0:
            raise ValueError("Matrix is singular")
        s = cmath.sqrt(det)
        return cls(a / s, b / s, c / s, d / s)

    @classmethod
    def identity(cls) -> "MoebiusNumeric":
        return cls(1, 0, 0, 1)

    @classmethod
    def from_array(cls, m) -> "MoebiusNumeric":
        m = np.asarray(m, dtype=complex)
        return cls.normalized(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    @classmethod
    def from_exact(cls, matrix) -> "MoebiusNumeric":
        """Numeric image of a Mat2 over Q(i)."""
        return cls.normalized(*matrix.to_complex())

    def as_array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    def trace(self) -> complex:
        return self.a + self.d

    def frobenius_sq(self) -> float:
        return abs(self.a) ** 2 + abs(self.b) ** 2 + abs(self.c) ** 2 + abs(self.d) ** 2

    def __matmul__(self, other: "MoebiusNumeric") -> "MoebiusNumeric":
        if not isinstance(other, MoebiusNumeric):
            return NotImplemented
        return MoebiusNumeric.from_array(self.as_array() @ other.as_array())

    __mul__ = __matmul__

    def inverse(self) -> "MoebiusNumeric":
        return MoebiusNumeric(self.d, -self.b, -self.c, self.a)

    def conjugate_by(self, other: "MoebiusNumeric") -> "MoebiusNumeric":
        """other * self * other^-1."""
        return other @ self @ other.inverse()

    def distance_to_identity(self) -> float:
        """Distance to {I, -I} in the max-entry norm."""
        return min(
            max(abs(self.a - s), abs(self.b), abs(self.c), abs(self.d - s)) for s in (1, -1)
        )

    def is_identity(self, tol: float = 1e-9) -> bool:
        """True when the matrix is +-I to within tol (identity in PSL2(C))."""
        return self.distance_to_identity() <= tol

    def to_dict(self) -> list:
        """JSON form: [[[re, im], [re, im]], [[re, im], [re, im]]]."""
        return [
            [complex_pair(self.a), complex_pair(self.b)],
            [complex_pair(self.c), complex_pair(self.d)],
        ]

    @classmethod
    def from_dict(cls, rows) -> "MoebiusNumeric":
        (a, b), (c, d) = rows
        return cls.normalized(parse_complex(a), parse_complex(b), parse_complex(c), parse_complex(d))


@dataclass
class ObstructionReport:
    """
    Displacement-sum test at one basepoint.

    Attributes:
        displacements: d_i = dist(P, A_i P)
        basepoint: P
        margin: 1/2 - sum 1/(1 + e^d_i)
        tol: obstructed iff margin < -tol
        verdict: Derived from margin and tol unless given, as when a
            serialized report is read back
    """

    displacements: list[float]
    basepoint: UHPoint
    margin: float
    tol: float = 1e-9
    verdict: str | None = None

    def __post_init__(self):
        if self.verdict is None:
            self.verdict = self.expected_verdict()
        if self.verdict not in OBSTRUCTION_VERDICTS:
            raise ValueError(
                f"Invalid verdict '{self.verdict}'. "
                f"Must be one of: {', '.join(OBSTRUCTION_VERDICTS)}"
            )

    def expected_verdict(self) -> str:
        return "obstructed" if self.margin < -self.tol else "consistent"

    @property
    def obstructed(self) -> bool:
        return self.verdict == "obstructed"

    @property
    def k(self) -> int:
        return len(self.displacements)

    def to_dict(self) -> dict:
        return {
            "kind": "obstruction",
            "k": self.k,
            "displacements": list(self.displacements),
            "basepoint": self.basepoint.to_dict(),
            "margin": self.margin,
            "tol": self.tol,
            "verdict": self.verdict,
            "meaning": OBSTRUCTION_MEANING if self.obstructed else CONSISTENT_MEANING,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ObstructionReport":
        return cls(
            displacements=[float(d) for d in data["displacements"]],
            basepoint=UHPoint.from_dict(data["basepoint"]),
            margin=float(data["margin"]),
            tol=float(data.get("tol", 1e-9)),
            verdict=data.get("verdict"),
        )


@dataclass
class BasepointSearch:
    """Outcome of minimizing the margin over basepoints."""

    initial: ObstructionReport
    best: ObstructionReport
    restarts: int
    converged: bool
    seed: int

    def to_dict(self) -> dict:
        return {
            "kind": "basepoint-search",
            "initial": self.initial.to_dict(),
            "best": self.best.to_dict(),
            "restarts": self.restarts,
            "converged": self.converged,
            "seed": self.seed,
            "verdict": self.best.verdict,
        }


@dataclass
class ShortLoopBound:
    """
    Bounds implied by generators that all move a point less than log(2k-1).

    Valid for a torsion-free Kleinian group generated by the matrices.
    """

    displacements: list[float]
    basepoint: UHPoint
    k: int
    threshold: float
    chibar_bound: int
    miof_bound: int

    @property
    def max_displacement(self) -> float:
        return max(self.displacements)

    def to_dict(self) -> dict:
        return {
            "kind": "short-loop-bound",
            "displacements": list(self.displacements),
            "basepoint": self.basepoint.to_dict(),
            "max_displacement": self.max_displacement,
            "k": self.k,
            "threshold": self.threshold,
            "chibar_bound": self.chibar_bound,
            "miof_bound": self.miof_bound,
        }
