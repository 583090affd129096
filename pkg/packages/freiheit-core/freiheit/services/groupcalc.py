"""
Group Calculus Service for freiheit.

Index of freedom of a finite generating set, Nielsen-bounded upper bounds for
miof(F_k), chibar and deficiency of the groups whose Euler characteristic is
known, and the checks chibar(G) < miof(G) <= iof(D) and miof(G) >= def(G).

iof(D) is the largest k such that D contains k independent elements, that is
k elements freely generating a free group of rank k.
"""

import itertools
import logging
from collections.abc import Sequence

import numpy as np

from freiheit.config import FreiheitConfig, get_config
from freiheit.errors import DegenerateError, MismatchError, SizeLimitError
from freiheit.models.freeness import SchottkyCertificate
from freiheit.models.groups import (
    GroupDescriptor,
    IofReport,
    MiofBound,
    QuotientReport,
    TheoremBReport,
)
from freiheit.models.hyperbolic import MoebiusNumeric, UHPoint
from freiheit.models.words import FreeWord, ambient_rank
from freiheit.services.freeness import FreenessService, jorgensen_filter
from freiheit.services.hyperbolic import displacement, displacement_margin, sample_basepoints
from freiheit.services.stallings import are_independent, fold, subgroup_rank

logger = logging.getLogger(__name__)


def chibar(group: GroupDescriptor) -> int:
    """
    Minus the Euler characteristic.

    Trivial -1, F_n n - 1, genus g surface 2g - 2; chi(A * B) = chi(A) + chi(B) - 1.
    """
    if group.kind == "trivial":
        return -1
    if group.kind == "free":
        return group.rank - 1
    if group.kind == "surface":
        return 2 * group.genus - 2
    return sum(chibar(f) for f in group.factors) + len(group.factors) - 1


def deficiency(group: GroupDescriptor) -> int:
    """1 - chi(G), which is the deficiency for every descriptor in scope."""
    return 1 + chibar(group)


def miof_lower_bound(group: GroupDescriptor) -> int:
    """
    max(def(G), 1) for non-trivial G, 0 for the trivial group.

    Every descriptor in scope is torsion-free, so a non-trivial G has miof >= 1;
    a deficiency-d presentation gives miof >= def(G).
    """
    if group.kind == "trivial":
        return 0
    return max(deficiency(group), 1)


def _nielsen_neighbours(basis: tuple[FreeWord, ...]) -> list[tuple[FreeWord, ...]]:
    """Generating sets one elementary Nielsen move away."""
    result = []
    k = len(basis)
    for i in range(k):
        result.append(basis[:i] + (basis[i].inverse(),) + basis[i + 1:])
    for i, j in itertools.permutations(range(k), 2):
        for e in (1, -1):
            y = basis[j] ** e
            for image in (basis[i] * y, y * basis[i]):
                result.append(basis[:i] + (image,) + basis[i + 1:])
    return result


def _short_relation(
    mats: Sequence[MoebiusNumeric], max_length: int, tol: float
) -> FreeWord | None:
    """First reduced word of length <= max_length evaluating to within tol of +-I."""
    letters = [(i, e) for i in range(len(mats)) for e in (1, -1)]
    images = {(i, 1): a for i, a in enumerate(mats)}
    images.update({(i, -1): a.inverse() for i, a in enumerate(mats)})

    def extend(prefix: MoebiusNumeric, word: tuple) -> FreeWord | None:
        if word and prefix.is_identity(tol):
            return FreeWord(word)
        if len(word) == max_length:
            return None
        for letter in letters:
            if word and word[-1] == (letter[0], -letter[1]):
                continue
            found = extend(prefix @ images[letter], word + (letter,))
            if found is not None:
                return found
        return None

    return extend(MoebiusNumeric.identity(), ())


class GroupCalcService:
    """
    Service for iof, miof bounds and the Euler characteristic checks.
    """

    def __init__(self, config: FreiheitConfig | None = None):
        """
        Initialize group calculus service.

        Args:
            config: Optional FreiheitConfig. If not provided, uses global config.
        """
        self._config = config
        self._freeness: FreenessService | None = None

    @property
    def config(self) -> FreiheitConfig:
        """Get the configuration."""
        if self._config is None:
            self._config = get_config()
        return self._config

    @property
    def freeness(self) -> FreenessService:
        if self._freeness is None:
            self._freeness = FreenessService(self.config)
        return self._freeness

    def _check_size(self, size: int) -> None:
        limit = self.config.groups.max_subset_size
        if size > limit:
            raise SizeLimitError(
                f"Generating set has {size} elements; subset search is limited to {limit}"
            )

    def iof_free(self, words: Sequence[FreeWord], rank: int | None = None) -> IofReport:
        """
        Exact iof of a finite subset of F_n.

        Subsets are tried in decreasing size, lexicographically within a size;
        the first independent one is the witness.

        Raises:
            SizeLimitError: More than max_subset_size words
        """
        words = list(words)
        self._check_size(len(words))
        n = ambient_rank(words) if rank is None else rank
        usable = [i for i, w in enumerate(words) if not w.is_identity()]
        checked = 0
        witness: list[int] = []
        for size in range(len(usable), 0, -1):
            for subset in itertools.combinations(usable, size):
                checked += 1
                if are_independent([words[i] for i in subset], n):
                    witness = list(subset)
                    break
            if witness:
                break
        logger.debug(f"iof of {len(words)} words in F_{n} is {len(witness)} ({checked} subsets)")
        return IofReport(
            generating_set=[w.render() for w in words],
            lower=len(witness),
            upper=len(witness),
            witness=witness,
            method="exact-folding",
            ambient_rank=n,
            subsets_checked=checked,
        )

    def _ruled_out_singles_and_pairs(self, mats: Sequence[MoebiusNumeric]) -> set[frozenset]:
        groups = self.config.groups
        identity_tol = self.config.tolerances.identity
        ruled_out: set[frozenset] = set()
        for i, a in enumerate(mats):
            if a.is_identity(identity_tol) or (
                _short_relation([a], groups.relation_length, identity_tol) is not None
            ):
                ruled_out.add(frozenset([i]))
        for i, j in itertools.combinations(range(len(mats)), 2):
            if frozenset([i]) in ruled_out or frozenset([j]) in ruled_out:
                continue
            if jorgensen_filter(mats[i], mats[j], tol=self.config.tol).violated:
                ruled_out.add(frozenset([i, j]))
                continue
            relation = _short_relation([mats[i], mats[j]], groups.relation_length, identity_tol)
            if relation is not None:
                logger.debug(f"Elements {i} and {j} satisfy the relation {relation}")
                ruled_out.add(frozenset([i, j]))
        return ruled_out

    def iof_matrix(self, mats: Sequence[MoebiusNumeric]) -> IofReport:
        """
        Bounds on iof of a finite set of Moebius maps.

        lower is the largest subset with a Schottky certificate (after at most
        one seeded random conjugation). A subset is excluded from the upper
        bound when it contains an element near +-I, a short relation, a pair
        failing the Jorgensen bound, or when the displacement-sum test is
        obstructed at one of the sampled basepoints.

        Raises:
            SizeLimitError: More than max_subset_size matrices
        """
        mats = list(mats)
        self._check_size(len(mats))
        n = len(mats)
        tol = self.config.tol
        ruled_out = self._ruled_out_singles_and_pairs(mats)

        rng = np.random.default_rng(self.config.seed)
        basepoints = [UHPoint.j()] + sample_basepoints(
            rng, self.config.groups.obstruction_samples, self.config.hyperbolic.spread
        )
        table = [[displacement(a, p) for p in basepoints] for a in mats]

        def excluded(subset: tuple[int, ...]) -> bool:
            members = frozenset(subset)
            if any(bad <= members for bad in ruled_out):
                return True
            if len(subset) < 2:
                return False
            return any(
                displacement_margin([table[i][p] for i in subset]) < -tol
                for p in range(len(basepoints))
            )

        checked = 0
        upper = 0
        for size in range(n, 0, -1):
            for subset in itertools.combinations(range(n), size):
                checked += 1
                if not excluded(subset):
                    upper = size
                    break
            if upper:
                break

        witness: list[int] = []
        for size in range(upper, 0, -1):
            for subset in itertools.combinations(range(n), size):
                if excluded(subset):
                    continue
                checked += 1
                if self._certified([mats[i] for i in subset]):
                    witness = list(subset)
                    break
            if witness:
                break

        return IofReport(
            generating_set=[a.to_dict() for a in mats],
            lower=len(witness),
            upper=upper,
            witness=witness,
            method="certificate-based",
            ambient_rank=None,
            subsets_checked=checked,
            assumptions=[
                "lower: the witness has pairwise disjoint isometric disks, so it is independent",
                "upper: elements within the identity tolerance of +-I and short relations are "
                "excluded unconditionally",
                "upper: Jorgensen and displacement-sum exclusions assume the group is discrete",
            ],
        )

    def _certified(self, mats: Sequence[MoebiusNumeric]) -> bool:
        try:
            return self.freeness.certify_schottky_with_retry(mats).certified
        except DegenerateError:
            return False

    def miof_upper_bound(self, rank: int, depth: int) -> MiofBound:
        """
        min iof over generating sets of F_rank at most depth Nielsen moves
        from the standard basis.

        Raises:
            SizeLimitError: depth above max_nielsen_depth, or too many sets
        """
        groups = self.config.groups
        if rank < 1:
            raise ValueError(f"Rank must be positive, got {rank}")
        if depth < 0:
            raise ValueError(f"Depth must be non-negative, got {depth}")
        if depth > groups.max_nielsen_depth:
            raise SizeLimitError(
                f"Nielsen depth {depth} exceeds the configured limit {groups.max_nielsen_depth}"
            )
        moves = rank + 4 * rank * (rank - 1)
        estimate = sum(moves**d for d in range(depth + 1))
        if estimate > groups.max_generating_sets:
            raise SizeLimitError(
                f"Up to {estimate} generating sets at depth {depth} for rank {rank}; "
                f"limit is {groups.max_generating_sets}"
            )

        start = tuple(FreeWord.basis(rank))
        seen = {start}
        frontier = [start]
        best = self.iof_free(start, rank)
        best_set = start
        for _ in range(depth):
            next_frontier = []
            for basis in frontier:
                for neighbour in _nielsen_neighbours(basis):
                    if neighbour in seen:
                        continue
                    seen.add(neighbour)
                    next_frontier.append(neighbour)
                    report = self.iof_free(neighbour, rank)
                    if report.lower < best.lower:
                        best, best_set = report, neighbour
            frontier = next_frontier

        bound = MiofBound(
            rank=rank,
            depth=depth,
            upper=best.lower,
            lower=miof_lower_bound(GroupDescriptor.free(rank)),
            generating_sets_checked=len(seen),
            witness=[w.render() for w in best_set],
        )
        if bound.lower > bound.upper:
            logger.error(f"miof bounds cross for F_{rank}: {bound.to_dict()}")
        return bound

    def theorem_b_check(
        self,
        group: GroupDescriptor,
        evidence: IofReport,
        certificate: SchottkyCertificate | None = None,
    ) -> TheoremBReport:
        """
        Compare chibar(G) with the iof evidence of a generating set D of G.

        Since miof(G) <= iof(D), the evidence supports chibar(G) < iof(D) only;
        the report states the inequality that was verified. chibar(G) >= the
        upper bound, or def(G) above it, is a counterexample.

        Raises:
            MismatchError: The evidence provably does not generate G
        """
        self._check_evidence(group, evidence, certificate)
        c = chibar(group)
        d = deficiency(group)
        notes = [
            "miof(G) <= iof(D) for every generating set D, so iof(D) bounds miof(G) from above only",
            "miof(G) and def(G) are never asserted equal",
        ]

        if c >= evidence.upper:
            verdict = "counterexample"
            verified = f"chibar(G) = {c} >= {evidence.upper} >= iof(D) >= miof(G)"
        elif d > evidence.upper:
            verdict = "counterexample"
            verified = f"def(G) = {d} > {evidence.upper} >= iof(D) >= miof(G)"
        elif c < evidence.lower:
            verdict = "consistent"
            verified = f"chibar(G) = {c} < {evidence.lower} <= iof(D)"
        else:
            verdict = "inconclusive"
            verified = f"{evidence.lower} <= iof(D) <= {evidence.upper} with chibar(G) = {c}"

        report = TheoremBReport(
            group=group,
            chibar=c,
            deficiency=d,
            evidence=evidence,
            verdict=verdict,
            verified=verified,
            notes=notes,
        )
        if verdict == "counterexample":
            logger.error(f"Counterexample configuration for {group.render()}: {verified}")
        else:
            logger.info(f"{group.render()}: {verdict} ({verified})")
        return report

    def _check_evidence(
        self,
        group: GroupDescriptor,
        evidence: IofReport,
        certificate: SchottkyCertificate | None,
    ) -> None:
        free_rank = group.free_rank()
        if evidence.method == "exact-folding":
            if free_rank is None:
                raise MismatchError(
                    f"Words in a free group generate a free group, not {group.render()}"
                )
            words = [FreeWord.parse(w) for w in evidence.generating_set]
            generated = subgroup_rank(words, evidence.ambient_rank)
            if generated != free_rank:
                raise MismatchError(
                    f"The words generate a free group of rank {generated}, "
                    f"not {group.render()}"
                )
            return

        if certificate is None or not certificate.certified:
            return
        if certificate.rank != len(evidence.generating_set):
            return
        if free_rank != certificate.rank:
            raise MismatchError(
                f"The generating set is a Schottky basis of a free group of rank "
                f"{certificate.rank}, not {group.render()}"
            )

    def iof_quotient_check(
        self, words: Sequence[FreeWord], killed: Sequence[int], rank: int | None = None
    ) -> QuotientReport:
        """
        iof(eta(D)) <= iof(D) for eta: F_n -> F_n killing the given generators.
        """
        words = list(words)
        n = ambient_rank(words) if rank is None else rank
        images = [w.kill(killed) for w in words]
        before = self.iof_free(words, n)
        after = self.iof_free(images, n)
        report = QuotientReport(
            words=[w.render() for w in words],
            killed=sorted(set(killed)),
            images=[w.render() for w in images],
            iof_before=before.lower,
            iof_after=after.lower,
        )
        if not report.holds:
            logger.error(f"Quotient monotonicity fails: {report.to_dict()}")
        return report

    def verify_iof(self, report: IofReport) -> list[str]:
        """
        Re-check the witness of an iof report without any subset search.

        Returns a list of problems, empty if the report holds.
        """
        problems = []
        if report.method == "exact-folding":
            words = [FreeWord.parse(w) for w in report.generating_set]
            witness = [words[i] for i in report.witness]
            if witness and not are_independent(witness, report.ambient_rank):
                problems.append("witness words are not independent")
        else:
            mats = [MoebiusNumeric.from_dict(m) for m in report.generating_set]
            witness = [mats[i] for i in report.witness]
            if witness and not self._certified(witness):
                problems.append("witness subset is not Schottky-certified")
        return problems

    def verify_miof(self, bound: MiofBound) -> list[str]:
        """
        Re-check a miof bound from its witness alone.

        The witness must generate F_rank with exact iof equal to the recorded
        upper bound; lower and the verdict are recomputed.

        Returns a list of problems, empty if the bound holds.
        """
        if bound.rank < 1:
            return [f"rank must be positive, got {bound.rank}"]
        problems = []
        witness = [FreeWord.parse(w) for w in bound.witness]
        graph = fold(witness, bound.rank)
        if graph.rank != bound.rank or not all(graph.contains(g) for g in FreeWord.basis(bound.rank)):
            problems.append(f"witness does not generate F_{bound.rank}")
        upper = self.iof_free(witness, bound.rank).lower
        if upper != bound.upper:
            problems.append(f"iof of the witness is {upper}, report says {bound.upper}")
        lower = miof_lower_bound(GroupDescriptor.free(bound.rank))
        if lower != bound.lower:
            problems.append(f"lower bound is {lower}, report says {bound.lower}")
        expected = "consistent" if lower <= upper else "counterexample"
        if expected != bound.verdict:
            problems.append(f"verdict is {expected}, report says {bound.verdict}")
        return problems


__all__ = [
    "GroupCalcService",
    "chibar",
    "deficiency",
    "miof_lower_bound",
]
