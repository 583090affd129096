"""
Error types for freiheit.

Every error is a ValueError subclass so callers that only care about
"bad input" can catch ValueError, while the CLI can name the exact failure.
Negative mathematical verdicts are never raised; they live in reports.
"""


class FreiheitError(ValueError):
    """Base class for all freiheit errors."""


class ParseError(FreiheitError):
    """Text could not be parsed into a value type."""


class InvalidWordError(FreiheitError):
    """An alternating word violates its syllable invariants."""


class ExhaustionError(FreiheitError):
    """The candidate pool for a non-eigenvector was used up."""


class HypothesisViolationError(FreiheitError):
    """The base group contains a non-trivial scalar matrix."""


class DegenerateError(FreiheitError):
    """A Moebius map has no isometric circle (|c| too small)."""


class SizeLimitError(FreiheitError):
    """An exponential search was asked to exceed its configured bound."""


class MismatchError(FreiheitError):
    """Evidence provably does not generate the described group."""
