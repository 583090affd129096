"""
Models for the free-group calculus.

Group descriptors for the classes whose Euler characteristic is pinned down,
and the reports produced by the iof, miof and inequality checks.
"""

from dataclasses import dataclass, field
from typing import Any

# Valid descriptor kinds
GROUP_KINDS = (
    "trivial",       # The trivial group
    "free",          # Free group of rank n >= 1 (n = 1 is infinite cyclic)
    "surface",       # Closed orientable surface group of genus g >= 1
    "free_product",  # Free product of the listed factors
)

# How an IofReport was obtained
IOF_METHODS = (
    "exact-folding",      # Words in a free group; Stallings folding decides independence
    "certificate-based",  # Matrices; Schottky certificates below, obstructions above
)

# Verdicts for TheoremBReport
INEQUALITY_VERDICTS = ("consistent", "inconclusive", "counterexample")


@dataclass(frozen=True)
class GroupDescriptor:
    """
    A group named by its isomorphism type.

    Attributes:
        kind: One of GROUP_KINDS
        rank: Rank of a free group
        genus: Genus of a surface group
        factors: Factors of a free product
    """

    kind: str
    rank: int = 0
    genus: int = 0
    factors: tuple["GroupDescriptor", ...] = ()

    def __post_init__(self):
        if self.kind not in GROUP_KINDS:
            raise ValueError(
                f"Invalid group kind '{self.kind}'. "
                f"Must be one of: {', '.join(GROUP_KINDS)}"
            )
        if self.kind == "free" and self.rank < 1:
            raise ValueError(f"Free group rank must be positive, got {self.rank}")
        if self.kind == "surface" and self.genus < 1:
            raise ValueError(f"Surface genus must be positive, got {self.genus}")
        object.__setattr__(self, "factors", tuple(self.factors))
        if self.kind == "free_product" and not self.factors:
            raise ValueError("A free product needs at least one factor")

    @classmethod
    def trivial(cls) -> "GroupDescriptor":
        return cls("trivial")

    @classmethod
    def free(cls, rank: int) -> "GroupDescriptor":
        return cls("free", rank=rank)

    @classmethod
    def cyclic(cls) -> "GroupDescriptor":
        """The infinite cyclic group."""
        return cls("free", rank=1)

    @classmethod
    def surface(cls, genus: int) -> "GroupDescriptor":
        return cls("surface", genus=genus)

    @classmethod
    def free_product(cls, *factors: "GroupDescriptor") -> "GroupDescriptor":
        return cls("free_product", factors=tuple(factors))

    def free_rank(self) -> int | None:
        """Rank when the group is free (trivial counts as rank 0), else None."""
        if self.kind == "trivial":
            return 0
        if self.kind == "free":
            return self.rank
        if self.kind == "surface":
            return None
        ranks = [f.free_rank() for f in self.factors]
        return None if any(r is None for r in ranks) else sum(ranks)

    @property
    def is_free(self) -> bool:
        return self.free_rank() is not None

    def render(self) -> str:
        if self.kind == "trivial":
            return "1"
        if self.kind == "free":
            return "Z" if self.rank == 1 else f"F{self.rank}"
        if self.kind == "surface":
            return f"S{self.genus}"
        return " * ".join(f.render() for f in self.factors)

    def to_dict(self) -> dict:
        data: dict[str, Any] = {"kind": self.kind}
        if self.kind == "free":
            data["rank"] = self.rank
        elif self.kind == "surface":
            data["genus"] = self.genus
        elif self.kind == "free_product":
            data["factors"] = [f.to_dict() for f in self.factors]
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "GroupDescriptor":
        kind = data.get("kind")
        if kind == "free_product":
            return cls.free_product(*(cls.from_dict(f) for f in data.get("factors", [])))
        return cls(
            kind=kind,
            rank=int(data.get("rank", 0)),
            genus=int(data.get("genus", 0)),
        )


@dataclass
class IofReport:
    """
    Bounds on iof of a finite generating set.

    Attributes:
        generating_set: The elements in their JSON form
        lower: Size of the witness, a subset known to be independent
        upper: No subset larger than this can be independent
        witness: Indices into generating_set
        method: One of IOF_METHODS
        ambient_rank: n for words in F_n; None for matrices
        subsets_checked: Subsets examined by the search
        assumptions: What each bound rests on
    """

    generating_set: list
    lower: int
    upper: int
    witness: list[int]
    method: str = "exact-folding"
    ambient_rank: int | None = None
    subsets_checked: int = 0
    assumptions: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.method not in IOF_METHODS:
            raise ValueError(
                f"Invalid method '{self.method}'. "
                f"Must be one of: {', '.join(IOF_METHODS)}"
            )
        if self.lower > self.upper:
            raise ValueError(f"Lower bound {self.lower} exceeds upper bound {self.upper}")
        if len(self.witness) != self.lower:
            raise ValueError(
                f"Witness has {len(self.witness)} elements but the lower bound is {self.lower}"
            )

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def value(self) -> int | None:
        """iof itself when the bounds meet."""
        return self.lower if self.exact else None

    def to_dict(self) -> dict:
        return {
            "kind": "iof",
            "generating_set": list(self.generating_set),
            "ambient_rank": self.ambient_rank,
            "lower": self.lower,
            "upper": self.upper,
            "iof": self.value,
            "witness": list(self.witness),
            "method": self.method,
            "subsets_checked": self.subsets_checked,
            "assumptions": list(self.assumptions),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "IofReport":
        return cls(
            generating_set=list(data["generating_set"]),
            lower=int(data["lower"]),
            upper=int(data["upper"]),
            witness=[int(i) for i in data["witness"]],
            method=data.get("method", "exact-folding"),
            ambient_rank=data.get("ambient_rank"),
            subsets_checked=int(data.get("subsets_checked", 0)),
            assumptions=list(data.get("assumptions", [])),
        )


@dataclass
class MiofBound:
    """
    Bounds on miof(F_k) from generating sets reachable by Nielsen moves.

    upper is the smallest exact iof seen; lower is the deficiency bound
    miof >= deficiency. verdict is derived from the two unless given.
    """

    rank: int
    depth: int
    upper: int
    lower: int
    generating_sets_checked: int
    witness: list[str]
    verdict: str | None = None

    def __post_init__(self):
        if self.verdict is None:
            self.verdict = self.expected_verdict()
        if self.verdict not in INEQUALITY_VERDICTS:
            raise ValueError(
                f"Invalid verdict '{self.verdict}'. "
                f"Must be one of: {', '.join(INEQUALITY_VERDICTS)}"
            )

    def expected_verdict(self) -> str:
        return "consistent" if self.lower <= self.upper else "counterexample"

    def to_dict(self) -> dict:
        return {
            "kind": "miof-bound",
            "rank": self.rank,
            "depth": self.depth,
            "upper": self.upper,
            "lower": self.lower,
            "generating_sets_checked": self.generating_sets_checked,
            "witness": list(self.witness),
            "verdict": self.verdict,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "MiofBound":
        return cls(
            rank=int(data["rank"]),
            depth=int(data["depth"]),
            upper=int(data["upper"]),
            lower=int(data["lower"]),
            generating_sets_checked=int(data.get("generating_sets_checked", 0)),
            witness=[str(w) for w in data["witness"]],
            verdict=data.get("verdict"),
        )


@dataclass
class TheoremBReport:
    """
    chibar(G) against the iof evidence of a generating set of G.

    Since miof(G) <= iof(D) for every generating set D, the evidence can only
    support chibar(G) < iof(D); `verified` states which inequality held.
    """

    group: GroupDescriptor
    chibar: int
    deficiency: int | None
    evidence: IofReport
    verdict: str
    verified: str
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.verdict not in INEQUALITY_VERDICTS:
            raise ValueError(
                f"Invalid verdict '{self.verdict}'. "
                f"Must be one of: {', '.join(INEQUALITY_VERDICTS)}"
            )

    @property
    def consistent(self) -> bool:
        return self.verdict == "consistent"

    def to_dict(self) -> dict:
        return {
            "kind": "theorem-b",
            "group": self.group.to_dict(),
            "chibar": self.chibar,
            "deficiency": self.deficiency,
            "iof_lower": self.evidence.lower,
            "iof_upper": self.evidence.upper,
            "evidence": self.evidence.to_dict(),
            "verdict": self.verdict,
            "verified": self.verified,
            "notes": list(self.notes),
        }


@dataclass
class QuotientReport:
    """iof(D) against iof(eta(D)) for eta killing some generators."""

    words: list[str]
    killed: list[int]
    images: list[str]
    iof_before: int
    iof_after: int

    @property
    def holds(self) -> bool:
        return self.iof_after <= self.iof_before

    @property
    def verdict(self) -> str:
        return "consistent" if self.holds else "counterexample"

    def to_dict(self) -> dict:
        return {
            "kind": "quotient-check",
            "words": list(self.words),
            "killed": list(self.killed),
            "images": list(self.images),
            "iof_before": self.iof_before,
            "iof_after": self.iof_after,
            "verdict": self.verdict,
            "corollary": "miof(eta(G)) <= miof(G) for the surjection eta",
        }
