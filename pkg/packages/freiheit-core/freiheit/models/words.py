"""
Freely reduced words in a free group F_n.

Generators are written a, b, c, ... and their inverses A, B, C, ...; the
text form separates letters with spaces ("a b A"), the identity is "1".
"""

import string
from collections.abc import Iterable
from dataclasses import dataclass

from freiheit.errors import ParseError

MAX_GENERATORS = len(string.ascii_lowercase)


def _reduce(letters: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    stack: list[tuple[int, int]] = []
    for gen, exp in letters:
        if exp not in (1, -1):
            raise ParseError(f"Letter exponent must be +1 or -1, got {exp}")
        if gen < 0 or gen >= MAX_GENERATORS:
            raise ParseError(f"Generator index {gen} out of range")
        if stack and stack[-1] == (gen, -exp):
            stack.pop()
        else:
            stack.append((gen, exp))
    return tuple(stack)


@dataclass(frozen=True, order=True)
class FreeWord:
    """
    A freely reduced word; construction always reduces.

    Attributes:
        letters: (generator index, +1 or -1) pairs with no cancelling neighbours
    """

    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _reduce(self.letters))

    @classmethod
    def identity(cls) -> "FreeWord":
        return cls(())

    @classmethod
    def generator(cls, index: int, exponent: int = 1) -> "FreeWord":
        return cls(((index, exponent),))

    @classmethod
    def basis(cls, rank: int) -> list["FreeWord"]:
        return [cls.generator(i) for i in range(rank)]

    def __len__(self) -> int:
        return len(self.letters)

    def is_identity(self) -> bool:
        return not self.letters

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        if not isinstance(other, FreeWord):
            return NotImplemented
        return FreeWord(self.letters + other.letters)

    def inverse(self) -> "FreeWord":
        return FreeWord(tuple((gen, -exp) for gen, exp in reversed(self.letters)))

    def __pow__(self, n: int) -> "FreeWord":
        base = self if n >= 0 else self.inverse()
        return FreeWord(base.letters * abs(n))

    def generators_used(self) -> set[int]:
        return {gen for gen, _ in self.letters}

    def max_generator(self) -> int:
        """Largest generator index used, -1 for the identity."""
        return max((gen for gen, _ in self.letters), default=-1)

    def kill(self, generators: Iterable[int]) -> "FreeWord":
        """Image under the surjection sending `generators` to the identity."""
        killed = set(generators)
        return FreeWord(tuple(letter for letter in self.letters if letter[0] not in killed))

    def substitute(self, images: dict[int, "FreeWord"]) -> "FreeWord":
        """Image under the endomorphism x_i -> images[i] (others fixed)."""
        result: list[tuple[int, int]] = []
        for gen, exp in self.letters:
            image = images.get(gen, FreeWord.generator(gen))
            result.extend((image if exp == 1 else image.inverse()).letters)
        return FreeWord(tuple(result))

    def render(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(
            string.ascii_lowercase[gen] if exp == 1 else string.ascii_uppercase[gen]
            for gen, exp in self.letters
        )

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"FreeWord({self.render()!r})"

    @classmethod
    def parse(cls, text: str) -> "FreeWord":
        """Parse "a b A" (spaces optional); "1" or "" is the identity."""
        compact = text.replace(" ", "")
        if compact in ("", "1"):
            return cls.identity()
        letters = []
        for ch in compact:
            if ch in string.ascii_lowercase:
                letters.append((string.ascii_lowercase.index(ch), 1))
            elif ch in string.ascii_uppercase:
                letters.append((string.ascii_uppercase.index(ch), -1))
            else:
                raise ParseError(f"Invalid letter {ch!r} in word {text!r}")
        return cls(tuple(letters))


def parse_words(texts: Iterable[str]) -> list[FreeWord]:
    return [FreeWord.parse(t) for t in texts]


def ambient_rank(words: Iterable[FreeWord]) -> int:
    """Smallest n such that every word lies in F_n."""
    return max((w.max_generator() + 1 for w in words), default=0)
