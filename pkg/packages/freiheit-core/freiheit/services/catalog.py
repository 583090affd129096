"""
Shipped examples.

Each example names its group and carries the evidence the checkers consume:
matrices for the numeric certifiers, words for the exact folding, or exact
generators for the free-product certification.
"""

from dataclasses import dataclass, field

from freiheit.algebra import Mat2
from freiheit.models.groups import GroupDescriptor
from freiheit.models.hyperbolic import MoebiusNumeric
from freiheit.models.words import FreeWord
from freiheit.services.freeness import schottky_example

SCHOTTKY_RANKS = (1, 2, 3, 4)


@dataclass
class CatalogExample:
    """
    A named example.

    Attributes:
        name: Lookup key
        group: Isomorphism type of the generated group
        matrices: Numeric generating set, if any
        words: Generating set inside a free group, if any
        exact: Exact generators over Q(i), if any
        description: One line for listings
    """

    name: str
    group: GroupDescriptor
    description: str = ""
    matrices: list[MoebiusNumeric] = field(default_factory=list)
    words: list[FreeWord] = field(default_factory=list)
    exact: list[Mat2] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "group": self.group.to_dict(),
            "description": self.description,
            "matrices": [m.to_dict() for m in self.matrices],
            "words": [w.render() for w in self.words],
            "exact": [g.render() for g in self.exact],
        }


def diagonal_generators() -> list[Mat2]:
    """The single generator [[2, 0], [0, 1/2]]."""
    return [Mat2.of([[2, 0], [0, "1/2"]])]


def shipped_examples() -> list[CatalogExample]:
    examples = [
        CatalogExample(
            name="trivial",
            group=GroupDescriptor.trivial(),
            description="The trivial group generated by the identity",
            matrices=[MoebiusNumeric.identity()],
            words=[FreeWord.identity()],
        ),
        CatalogExample(
            name="cyclic",
            group=GroupDescriptor.cyclic(),
            description="Infinite cyclic group of a loxodromic",
            matrices=schottky_example(1),
            words=[FreeWord.parse("a")],
        ),
    ]
    for rank in SCHOTTKY_RANKS:
        examples.append(
            CatalogExample(
                name=f"schottky-{rank}",
                group=GroupDescriptor.free(rank),
                description=f"Schottky group of rank {rank} with disks evenly spaced on |z| = 3",
                matrices=schottky_example(rank),
                words=FreeWord.basis(rank),
            )
        )
    examples.extend(
        [
            CatalogExample(
                name="free-redundant-2",
                group=GroupDescriptor.free(2),
                description="F2 generated by a, b, ab",
                words=[FreeWord.parse(w) for w in ("a", "b", "ab")],
            ),
            CatalogExample(
                name="free-redundant-3",
                group=GroupDescriptor.free(3),
                description="F3 generated by a, b, c, ab, bcA and the identity",
                words=[FreeWord.parse(w) for w in ("a", "b", "c", "ab", "bcA", "1")],
            ),
            CatalogExample(
                name="diagonal-magnus",
                group=GroupDescriptor.cyclic(),
                description="Cyclic group of [[2, 0], [0, 1/2]] for the free-product certification",
                exact=diagonal_generators(),
            ),
        ]
    )
    return examples


def get_example(name: str) -> CatalogExample:
    for example in shipped_examples():
        if example.name == name:
            return example
    names = ", ".join(e.name for e in shipped_examples())
    raise ValueError(f"Unknown example '{name}'. Must be one of: {names}")


__all__ = ["CatalogExample", "shipped_examples", "get_example", "diagonal_generators"]
