"""
Models for the ping-pong certifier and the Jorgensen filter.
"""

import math
from dataclasses import dataclass, field

from freiheit.models.hyperbolic import MoebiusNumeric, complex_pair, parse_complex

# Verdicts for SchottkyCertificate
SCHOTTKY_VERDICTS = ("certified", "failed")

# Verdicts for JorgensenResult
JORGENSEN_VERDICTS = ("passed", "violated")


def _render_gap(gap: float) -> float | str:
    if math.isinf(gap):
        return "inf" if gap > 0 else "-inf"
    return gap


@dataclass(frozen=True)
class IsometricDisk:
    """
    The disk bounded by the isometric circle |cz + d| = 1.

    Attributes:
        center: -d/c
        radius: 1/|c|
        owner: Index of the generator
        sign: +1 for the generator, -1 for its inverse
    """

    center: complex
    radius: float
    owner: int
    sign: int = 1

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        if not self.radius > 0:
            raise ValueError(f"Disk radius must be positive, got {self.radius}")
        if self.sign not in (1, -1):
            raise ValueError(f"Disk sign must be +1 or -1, got {self.sign}")

    @property
    def label(self) -> str:
        return f"{self.owner}{'+' if self.sign == 1 else '-'}"

    def gap(self, other: "IsometricDisk") -> float:
        """Distance between the two closed disks; negative when they overlap."""
        return abs(self.center - other.center) - self.radius - other.radius

    def contains(self, z: complex) -> bool:
        return abs(z - self.center) < self.radius

    def to_dict(self) -> dict:
        return {
            "center": complex_pair(self.center),
            "radius": self.radius,
            "owner": self.owner,
            "sign": self.sign,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "IsometricDisk":
        return cls(
            center=parse_complex(data["center"]),
            radius=float(data["radius"]),
            owner=int(data["owner"]),
            sign=int(data.get("sign", 1)),
        )


@dataclass
class SchottkyCertificate:
    """
    Round-disk ping-pong certificate for k Moebius generators.

    certified means the 2k isometric disks of the (possibly conjugated)
    generators are pairwise disjoint with gap >= margin, so the generators
    are independent and generate a discrete group.

    Attributes:
        generators: The matrices as given
        disks: Generator disk then inverse disk, for each generator in order
        margin: Required minimal gap
        min_gap: Achieved minimal gap (-inf when no disks could be built)
        failed_pair: Labels of the closest pair when the check fails
        conjugator: Conjugation applied before building disks, if any
        seed: Seed of the random conjugation, if one was drawn
    """

    generators: list[MoebiusNumeric]
    disks: list[IsometricDisk]
    margin: float
    min_gap: float
    verdict: str = "failed"
    failed_pair: tuple[str, str] | None = None
    conjugator: MoebiusNumeric | None = None
    seed: int | None = None
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.verdict not in SCHOTTKY_VERDICTS:
            raise ValueError(
                f"Invalid verdict '{self.verdict}'. "
                f"Must be one of: {', '.join(SCHOTTKY_VERDICTS)}"
            )

    @property
    def certified(self) -> bool:
        return self.verdict == "certified"

    @property
    def rank(self) -> int:
        return len(self.generators)

    def to_dict(self) -> dict:
        return {
            "kind": "schottky",
            "generators": [g.to_dict() for g in self.generators],
            "disks": [d.to_dict() for d in self.disks],
            "margin": self.margin,
            "min_gap": _render_gap(self.min_gap),
            "verdict": self.verdict,
            "failed_pair": list(self.failed_pair) if self.failed_pair else None,
            "conjugator": self.conjugator.to_dict() if self.conjugator else None,
            "seed": self.seed,
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SchottkyCertificate":
        min_gap = data["min_gap"]
        conjugator = data.get("conjugator")
        failed = data.get("failed_pair")
        return cls(
            generators=[MoebiusNumeric.from_dict(g) for g in data["generators"]],
            disks=[IsometricDisk.from_dict(d) for d in data["disks"]],
            margin=float(data["margin"]),
            min_gap=float(min_gap),
            verdict=data.get("verdict", "failed"),
            failed_pair=tuple(failed) if failed else None,
            conjugator=MoebiusNumeric.from_dict(conjugator) if conjugator else None,
            seed=data.get("seed"),
            notes=list(data.get("notes", [])),
        )


@dataclass(frozen=True)
class JorgensenResult:
    """|tr^2 A - 4| + |tr[A, B] - 2| against the bound 1."""

    value: float
    tol: float = 1e-9

    @property
    def verdict(self) -> str:
        return "violated" if self.value < 1 - self.tol else "passed"

    @property
    def violated(self) -> bool:
        return self.verdict == "violated"

    def to_dict(self) -> dict:
        return {
            "kind": "jorgensen",
            "value": self.value,
            "tol": self.tol,
            "verdict": self.verdict,
            "meaning": (
                "the pair does not generate a discrete non-elementary group"
                if self.violated
                else "no conclusion"
            ),
        }
