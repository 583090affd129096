"""
Models for the polynomial-matrix embedding of G * <Lambda>.

An alternating word g1 L^m1 ... gk L^mk, the certificate that the base group
was conjugated off the upper triangular matrices, the degree profile of an
evaluated word, and the free-product certificate that ties them together.
"""

from dataclasses import dataclass

from freiheit.algebra import GaussianRational, Mat2, parse_degree, render_degree
from freiheit.errors import InvalidWordError

# Verdicts for FreeProductCertificate
FREE_PRODUCT_VERDICTS = ("certified-to-depth", "refuted")


@dataclass(frozen=True)
class AlternatingWord:
    """
    A word gamma_1 Lambda^m_1 ... gamma_k Lambda^m_k.

    Attributes:
        syllables: Pairs (gamma, m), gamma a non-identity matrix over Q(i)
                   and m a non-zero integer
    """

    syllables: tuple[tuple[Mat2, int], ...]

    def __post_init__(self):
        syllables = tuple((gamma, int(m)) for gamma, m in self.syllables)
        object.__setattr__(self, "syllables", syllables)
        if not syllables:
            raise InvalidWordError("An alternating word needs at least one syllable")
        for i, (gamma, m) in enumerate(syllables):
            if gamma.is_identity():
                raise InvalidWordError(f"Syllable {i}: gamma is the identity")
            if m == 0:
                raise InvalidWordError(f"Syllable {i}: exponent of Lambda is zero")

    @property
    def k(self) -> int:
        return len(self.syllables)

    def prefix(self, k: int) -> "AlternatingWord":
        return AlternatingWord(self.syllables[:k])

    def concat(self, other: "AlternatingWord") -> "AlternatingWord":
        return AlternatingWord(self.syllables + other.syllables)

    def rotation_key(self) -> tuple:
        """Sort key used to pick one representative per cyclic rotation class."""
        return tuple((tuple(x for row in gamma.render() for x in row), m) for gamma, m in self.syllables)

    def is_rotation_minimal(self) -> bool:
        """True when no cyclic rotation of the syllables sorts before this word."""
        key = self.rotation_key()
        return all(key <= key[i:] + key[:i] for i in range(1, self.k))

    def to_dict(self) -> dict:
        return {
            "syllables": [{"gamma": gamma.render(), "m": m} for gamma, m in self.syllables],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "AlternatingWord":
        return cls(tuple((Mat2.parse(s["gamma"]), int(s["m"])) for s in data["syllables"]))


@dataclass(frozen=True)
class DegreeProfile:
    """
    Degrees of the entries A, B, C, D of h(w) for a word with k syllables.

    The zero polynomial has degree NEG_INF.
    """

    deg_a: int | float
    deg_b: int | float
    deg_c: int | float
    deg_d: int | float
    k: int

    @property
    def is_valid(self) -> bool:
        """A, C of degree <= k-1, B of degree <= k, D of degree exactly k."""
        k = self.k
        return self.deg_a <= k - 1 and self.deg_c <= k - 1 and self.deg_b <= k and self.deg_d == k

    @classmethod
    def of(cls, matrix: Mat2, k: int) -> "DegreeProfile":
        return cls(matrix.a.degree, matrix.b.degree, matrix.c.degree, matrix.d.degree, k)

    def to_dict(self) -> dict:
        return {
            "deg_a": render_degree(self.deg_a),
            "deg_b": render_degree(self.deg_b),
            "deg_c": render_degree(self.deg_c),
            "deg_d": render_degree(self.deg_d),
            "k": self.k,
            "valid": self.is_valid,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DegreeProfile":
        return cls(
            deg_a=parse_degree(data["deg_a"]),
            deg_b=parse_degree(data["deg_b"]),
            deg_c=parse_degree(data["deg_c"]),
            deg_d=parse_degree(data["deg_d"]),
            k=int(data["k"]),
        )


@dataclass(frozen=True)
class StepPrediction:
    """Degree bounds for w = w* gamma Lambda^m predicted from the profile of w*."""

    max_a: int | float
    max_b: int | float
    max_c: int | float
    exact_d: int | float | None

    def admits(self, profile: DegreeProfile) -> bool:
        d_ok = self.exact_d is None or profile.deg_d == self.exact_d
        return (
            profile.deg_a <= self.max_a
            and profile.deg_b <= self.max_b
            and profile.deg_c <= self.max_c
            and d_ok
        )


@dataclass(frozen=True)
class DegreeCheck:
    """Result of checking one word's degree profile."""

    word: AlternatingWord
    profile: DegreeProfile
    normalized: bool
    scalar: bool

    @property
    def valid(self) -> bool:
        return self.profile.is_valid

    @property
    def counterexample(self) -> bool:
        """An invalid profile for a word the caller warranted as normalized."""
        return self.normalized and not self.valid

    def to_dict(self) -> dict:
        return {
            "word": self.word.to_dict(),
            "profile": self.profile.to_dict(),
            "normalized": self.normalized,
            "scalar": self.scalar,
            "counterexample": self.counterexample,
        }


@dataclass(frozen=True)
class NormalizationCertificate:
    """
    Witness that a conjugation moved the base group off the upper triangular matrices.

    Attributes:
        conjugator: P with P * witness_vector proportional to (1, 0)
        checked_word_length: L; only elements of word length <= L were checked
        witness_vector: v, not an eigenvector of any checked element
        checked_elements: Number of nontrivial elements of length <= L
    """

    conjugator: Mat2
    checked_word_length: int
    witness_vector: tuple[GaussianRational, GaussianRational]
    checked_elements: int = 0

    def to_dict(self) -> dict:
        return {
            "conjugator": self.conjugator.render(),
            "checked_word_length": self.checked_word_length,
            "witness_vector": [x.render() for x in self.witness_vector],
            "checked_elements": self.checked_elements,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "NormalizationCertificate":
        v0, v1 = data["witness_vector"]
        return cls(
            conjugator=Mat2.parse(data["conjugator"]),
            checked_word_length=int(data["checked_word_length"]),
            witness_vector=(GaussianRational.parse(str(v0)), GaussianRational.parse(str(v1))),
            checked_elements=int(data.get("checked_elements", 0)),
        )


@dataclass
class FreeProductCertificate:
    """
    Bounded certificate that <Lambda, G> is the free product G * <Lambda>.

    certified-to-depth means every alternating word with at most
    checked_syllable_depth syllables, built from nontrivial base elements of
    word length <= L and exponents |m| <= exponent_bound, maps to a
    non-scalar matrix with a valid degree profile.
    """

    base_generators: list[Mat2]
    normalization: NormalizationCertificate
    checked_syllable_depth: int
    exponent_bound: int
    verdict: str = "certified-to-depth"
    witness: AlternatingWord | None = None
    witness_profile: DegreeProfile | None = None
    words_checked: int = 0
    rotations_skipped: int = 0

    def __post_init__(self):
        if self.verdict not in FREE_PRODUCT_VERDICTS:
            raise ValueError(
                f"Invalid verdict '{self.verdict}'. "
                f"Must be one of: {', '.join(FREE_PRODUCT_VERDICTS)}"
            )

    @property
    def certified(self) -> bool:
        return self.verdict == "certified-to-depth"

    def to_dict(self) -> dict:
        return {
            "kind": "free-product",
            "base_generators": [g.render() for g in self.base_generators],
            "normalization": self.normalization.to_dict(),
            "checked_syllable_depth": self.checked_syllable_depth,
            "exponent_bound": self.exponent_bound,
            "verdict": self.verdict,
            "witness": self.witness.to_dict() if self.witness else None,
            "witness_profile": self.witness_profile.to_dict() if self.witness_profile else None,
            "words_checked": self.words_checked,
            "rotations_skipped": self.rotations_skipped,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "FreeProductCertificate":
        witness = data.get("witness")
        profile = data.get("witness_profile")
        return cls(
            base_generators=[Mat2.parse(g) for g in data["base_generators"]],
            normalization=NormalizationCertificate.from_dict(data["normalization"]),
            checked_syllable_depth=int(data["checked_syllable_depth"]),
            exponent_bound=int(data.get("exponent_bound", 1)),
            verdict=data.get("verdict", "certified-to-depth"),
            witness=AlternatingWord.from_dict(witness) if witness else None,
            witness_profile=DegreeProfile.from_dict(profile) if profile else None,
            words_checked=int(data.get("words_checked", 0)),
            rotations_skipped=int(data.get("rotations_skipped", 0)),
        )


__all__ = [
    "AlternatingWord",
    "DegreeProfile",
    "StepPrediction",
    "DegreeCheck",
    "NormalizationCertificate",
    "FreeProductCertificate",
    "FREE_PRODUCT_VERDICTS",
]
