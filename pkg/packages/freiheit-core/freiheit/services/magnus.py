"""
Magnus Service for freiheit.

Exact certification that a finitely generated G <= GL2(Q(i)) with no
non-trivial scalar generates the free product G * <Lambda>, where
Lambda = [[1, X], [0, 1]] over Q(i)[X].

The check is bounded: base elements of word length <= L, alternating words
of at most `depth` syllables, Lambda exponents |m| <= exponent_bound.
"""

import logging
import multiprocessing
from collections.abc import Sequence

from freiheit.algebra import NEG_INF, GaussianRational, Mat2, Poly
from freiheit.config import FreiheitConfig, get_config
from freiheit.errors import ExhaustionError, FreiheitError, HypothesisViolationError
from freiheit.models.magnus import (
    AlternatingWord,
    DegreeCheck,
    DegreeProfile,
    FreeProductCertificate,
    NormalizationCertificate,
    StepPrediction,
)

logger = logging.getLogger(__name__)


def _check_invertible(gens: Sequence[Mat2]) -> None:
    for i, g in enumerate(gens):
        if g.det().is_zero():
            raise FreiheitError(f"Generator {i} is singular: {g}")


def group_ball(gens: Sequence[Mat2], length: int) -> list[Mat2]:
    """
    Non-identity elements of word length <= length in gens and their inverses.

    Deduplicated as matrices, in breadth-first order (shorter words first).
    """
    if length < 0:
        raise ValueError(f"Word length must be non-negative, got {length}")
    _check_invertible(gens)
    letters = [g for gen in gens for g in (gen, gen.inverse())]
    identity = Mat2.identity()
    seen = {identity}
    ball: list[Mat2] = []
    frontier = [identity]
    for _ in range(length):
        next_frontier = []
        for w in frontier:
            for letter in letters:
                product = w * letter
                if product in seen:
                    continue
                seen.add(product)
                ball.append(product)
                next_frontier.append(product)
        frontier = next_frontier
    return ball


def _is_eigenvector(m: Mat2, n: int) -> bool:
    """True when (1, n) spans an eigenline of m: c + (d - a) n - b n^2 = 0."""
    return (m.c + (m.d - m.a) * n - m.b * (n * n)).is_zero()


def _append_lambda(m: Mat2[Poly], power: int) -> Mat2[Poly]:
    """m * Lambda^power = [[A, power*X*A + B], [C, power*X*C + D]]."""
    return Mat2(
        m.a,
        m.a.shift(1).scale(power) + m.b,
        m.c,
        m.c.shift(1).scale(power) + m.d,
    )


def _append_syllable(m: Mat2[Poly], gamma: Mat2, power: int) -> Mat2[Poly]:
    return _append_lambda(m * gamma.lift(), power)


def evaluate_word(word: AlternatingWord) -> Mat2[Poly]:
    """h(w) = gamma_1 Lambda^m_1 ... gamma_k Lambda^m_k over Q(i)[X]."""
    result = Mat2.identity(Poly)
    for gamma, m in word.syllables:
        result = _append_syllable(result, gamma, m)
    return result


def check_degree_profile(word: AlternatingWord, normalized: bool = True) -> DegreeCheck:
    """
    Evaluate h(w) and report its degree profile.

    With `normalized` set the caller warrants that no gamma_i is upper
    triangular; an invalid profile is then a counterexample.
    """
    image = evaluate_word(word)
    check = DegreeCheck(
        word=word,
        profile=DegreeProfile.of(image, word.k),
        normalized=normalized,
        scalar=image.is_scalar(),
    )
    if check.counterexample:
        logger.error(f"Degree profile counterexample for normalized word: {check.to_dict()}")
    return check


def _const_degree(x: GaussianRational) -> int | float:
    return NEG_INF if x.is_zero() else 0


def predict_step(profile: DegreeProfile, gamma: Mat2, m: int) -> StepPrediction:
    """
    Degree bounds for w = w* gamma Lambda^m from the profile of w*.

    A = A* a + B* c and C = C* a + D* c have degree at most the larger
    summand; B = mX A + (A* b + B* d) and D = mX C + (C* b + D* d) likewise.
    D has an exact degree whenever D* c strictly dominates C* a and the
    shifted term then dominates C* b + D* d.
    """
    if m == 0:
        raise ValueError("Lambda exponent must be non-zero")
    ea, eb, ec, ed = (_const_degree(x) for x in (gamma.a, gamma.b, gamma.c, gamma.d))
    max_a = max(profile.deg_a + ea, profile.deg_b + ec)
    max_q = max(profile.deg_a + eb, profile.deg_b + ed)
    c_lead = profile.deg_d + ec
    c_rest = profile.deg_c + ea
    max_c = max(c_rest, c_lead)
    max_s = max(profile.deg_c + eb, profile.deg_d + ed)

    exact_d = None
    if c_lead > c_rest and c_lead + 1 > max_s:
        exact_d = c_lead + 1
    return StepPrediction(
        max_a=max_a,
        max_b=max(max_a + 1, max_q),
        max_c=max_c,
        exact_d=exact_d,
    )


def _rotation_minimal(key: tuple) -> bool:
    return all(key <= key[i:] + key[:i] for i in range(1, len(key)))


def _search(
    ball: Sequence[Mat2],
    exponents: Sequence[int],
    depth: int,
    first: int | None = None,
) -> tuple[int, int, tuple | None]:
    """
    Depth-first search over alternating words sharing evaluated prefixes.

    Each word is identified by a tuple of (ball index, exponent) pairs.
    Only the rotation-minimal representative of each cyclic class is checked,
    since scalarity is invariant under conjugation.

    Returns:
        (words checked, rotations skipped, first failing key or None)
    """
    syllables = [(i, m) for i in range(len(ball)) for m in exponents]
    checked = 0
    skipped = 0

    def visit(prefix: Mat2[Poly], key: tuple) -> tuple | None:
        nonlocal checked, skipped
        k = len(key)
        if _rotation_minimal(key):
            checked += 1
            profile = DegreeProfile.of(prefix, k)
            if not profile.is_valid or prefix.is_scalar():
                return key
        else:
            skipped += 1
        if k == depth:
            return None
        for i, m in syllables:
            found = visit(_append_syllable(prefix, ball[i], m), key + ((i, m),))
            if found is not None:
                return found
        return None

    roots = syllables if first is None else [s for s in syllables if s[0] == first]
    identity = Mat2.identity(Poly)
    for i, m in roots:
        found = visit(_append_syllable(identity, ball[i], m), ((i, m),))
        if found is not None:
            return checked, skipped, found
    return checked, skipped, None


def _search_subtree(args) -> tuple[int, int, tuple | None]:
    ball, exponents, depth, first = args
    return _search(ball, exponents, depth, first)


class MagnusService:
    """
    Service for the exact free-product certification.

    Bounds default to the `magnus` section of the configuration.
    """

    def __init__(self, config: FreiheitConfig | None = None):
        """
        Initialize magnus service.

        Args:
            config: Optional FreiheitConfig. If not provided, uses global config.
        """
        self._config = config

    @property
    def config(self) -> FreiheitConfig:
        """Get the configuration."""
        if self._config is None:
            self._config = get_config()
        return self._config

    def _check_no_scalars(self, ball: Sequence[Mat2], length: int) -> None:
        for element in ball:
            if element.is_scalar():
                raise HypothesisViolationError(
                    f"Base group contains the non-trivial scalar {element} "
                    f"among words of length <= {length}"
                )

    def find_non_eigenvector(
        self,
        gens: Sequence[Mat2],
        length: int | None = None,
        ball: Sequence[Mat2] | None = None,
    ) -> NormalizationCertificate:
        """
        Find v = (1, n) that is no eigenvector of any element of the ball.

        Candidates n = 0, 1, ..., candidate_pool are tried in order. The
        conjugator P = [[1, 0], [-n, 1]] sends v to (1, 0), so after
        conjugation by P no checked element is upper triangular.

        Raises:
            ExhaustionError: No candidate survived
        """
        length = self.config.magnus.word_length if length is None else length
        if length < 1:
            raise ValueError(f"Word length must be at least 1, got {length}")
        if ball is None:
            ball = group_ball(gens, length)

        pool = self.config.magnus.candidate_pool
        for n in range(pool + 1):
            if any(_is_eigenvector(element, n) for element in ball):
                continue
            conjugator = Mat2.of([[1, 0], [-n, 1]])
            logger.debug(f"Witness vector (1, {n}) after {n} rejected candidates")
            return NormalizationCertificate(
                conjugator=conjugator,
                checked_word_length=length,
                witness_vector=(GaussianRational.one(), GaussianRational.coerce(n)),
                checked_elements=len(ball),
            )
        raise ExhaustionError(
            f"All {pool + 1} candidate vectors are eigenvectors of some element "
            f"of word length <= {length}"
        )

    def certify_free_product(
        self,
        gens: Sequence[Mat2],
        length: int | None = None,
        depth: int | None = None,
        exponent_bound: int | None = None,
    ) -> FreeProductCertificate:
        """
        Certify <Lambda, G> = G * <Lambda> up to the given bounds.

        Args:
            gens: Generators of G over Q(i)
            length: Word length L of base syllables
            depth: Maximal number of syllables
            exponent_bound: Maximal |m| for Lambda^m

        Returns:
            FreeProductCertificate with verdict certified-to-depth or refuted

        Raises:
            HypothesisViolationError: G has a non-trivial scalar of length <= L
            ExhaustionError: No normalizing vector was found
        """
        magnus = self.config.magnus
        length = magnus.word_length if length is None else length
        depth = magnus.syllable_depth if depth is None else depth
        exponent_bound = magnus.exponent_bound if exponent_bound is None else exponent_bound
        if depth < 1:
            raise ValueError(f"Syllable depth must be at least 1, got {depth}")
        if exponent_bound < 1:
            raise ValueError(f"Exponent bound must be at least 1, got {exponent_bound}")

        gens = list(gens)
        ball = group_ball(gens, length)
        self._check_no_scalars(ball, length)
        normalization = self.find_non_eigenvector(gens, length, ball=ball)
        conjugated = [g.conjugate_by(normalization.conjugator) for g in ball]
        exponents = [s * e for e in range(1, exponent_bound + 1) for s in (1, -1)]

        checked, skipped, failure = self._run_search(conjugated, exponents, depth)

        certificate = FreeProductCertificate(
            base_generators=gens,
            normalization=normalization,
            checked_syllable_depth=depth,
            exponent_bound=exponent_bound,
            words_checked=checked,
            rotations_skipped=skipped,
        )
        if failure is not None:
            witness = AlternatingWord(tuple((conjugated[i], m) for i, m in failure))
            certificate.verdict = "refuted"
            certificate.witness = witness
            certificate.witness_profile = DegreeProfile.of(evaluate_word(witness), witness.k)
            logger.error(f"Free product refuted by {witness.to_dict()}")
        else:
            logger.info(
                f"Certified free product to depth {depth} "
                f"({checked} words, {skipped} rotations skipped)"
            )
        return certificate

    def _run_search(self, ball, exponents, depth) -> tuple[int, int, tuple | None]:
        workers = self.config.run.workers
        if workers <= 1 or len(ball) < 2:
            return _search(ball, exponents, depth)

        jobs = [(ball, exponents, depth, i) for i in range(len(ball))]
        with multiprocessing.Pool(workers) as pool:
            results = pool.map(_search_subtree, jobs)

        # Sum up to the first failing subtree so counts match a serial run
        checked = skipped = 0
        for sub_checked, sub_skipped, failure in results:
            checked += sub_checked
            skipped += sub_skipped
            if failure is not None:
                return checked, skipped, failure
        return checked, skipped, None

    def verify_free_product(self, certificate: FreeProductCertificate) -> list[str]:
        """
        Re-check a certificate from its recorded provenance.

        The normalization is re-validated against the recorded witness vector
        and conjugator (no candidate search); a refutation is re-checked by
        re-evaluating its witness. Returns a list of problems, empty if the
        certificate holds.
        """
        problems = []
        norm = certificate.normalization
        v0, v1 = norm.witness_vector
        image = norm.conjugator.apply((v0, v1))
        if image[1] != 0 or image[0] == 0:
            problems.append("conjugator does not send the witness vector to the line of (1, 0)")

        ball = group_ball(certificate.base_generators, norm.checked_word_length)
        for element in ball:
            if element.is_scalar():
                problems.append(f"base group contains the scalar {element}")
                break
            if element.conjugate_by(norm.conjugator).is_upper_triangular():
                problems.append(f"{element} is upper triangular after conjugation")
                break

        if certificate.certified:
            if certificate.witness is not None:
                problems.append("certified certificate carries a witness")
        else:
            if certificate.witness is None:
                problems.append("refuted certificate has no witness")
            else:
                check = check_degree_profile(certificate.witness, normalized=True)
                if check.valid and not check.scalar:
                    problems.append("witness word has a valid degree profile")
                if certificate.witness_profile and certificate.witness_profile != check.profile:
                    problems.append("recorded witness profile does not match the evaluation")
        return problems


__all__ = [
    "MagnusService",
    "group_ball",
    "evaluate_word",
    "check_degree_profile",
    "predict_step",
]
