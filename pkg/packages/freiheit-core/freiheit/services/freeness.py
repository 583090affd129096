"""
Freeness Service for freiheit.

Classical Schottky certification: when the 2k isometric disks of k Moebius
maps are pairwise disjoint, ping-pong shows the maps freely generate a free
discrete group. The Jorgensen quantity gives a necessary condition for
discreteness of a non-elementary two-generator group.
"""

import cmath
import itertools
import logging
import math
from collections.abc import Sequence

import numpy as np

from freiheit.config import FreiheitConfig, get_config
from freiheit.errors import DegenerateError
from freiheit.models.freeness import IsometricDisk, JorgensenResult, SchottkyCertificate
from freiheit.models.hyperbolic import MoebiusNumeric

logger = logging.getLogger(__name__)


def isometric_disk(
    a: MoebiusNumeric, owner: int = 0, sign: int = 1, tol: float = 1e-12
) -> IsometricDisk:
    """
    Disk bounded by |cz + d| = 1: center -d/c, radius 1/|c|.

    Raises:
        DegenerateError: |c| <= tol, so there is no isometric circle
    """
    if abs(a.c) <= tol:
        raise DegenerateError(
            f"Generator {owner} has |c| = {abs(a.c):.3g}; conjugate it before certification"
        )
    return IsometricDisk(center=-a.d / a.c, radius=1.0 / abs(a.c), owner=owner, sign=sign)


def disk_pairs(mats: Sequence[MoebiusNumeric], tol: float = 1e-12) -> list[IsometricDisk]:
    """Disk of each generator followed by the disk of its inverse."""
    disks = []
    for i, a in enumerate(mats):
        disks.append(isometric_disk(a, owner=i, sign=1, tol=tol))
        disks.append(isometric_disk(a.inverse(), owner=i, sign=-1, tol=tol))
    return disks


def closest_pair(disks: Sequence[IsometricDisk]) -> tuple[float, tuple[str, str] | None]:
    """Smallest pairwise gap and the labels of the pair attaining it."""
    best, pair = math.inf, None
    for d1, d2 in itertools.combinations(disks, 2):
        gap = d1.gap(d2)
        if gap < best:
            best, pair = gap, (d1.label, d2.label)
    return best, pair


def _attains_gap(
    disks: Sequence[IsometricDisk], pair: tuple[str, str] | None, gap: float, tol: float
) -> bool:
    by_label = {d.label: d for d in disks}
    if pair is None or any(label not in by_label for label in pair):
        return False
    return math.isclose(by_label[pair[0]].gap(by_label[pair[1]]), gap, rel_tol=tol, abs_tol=tol)


def jorgensen_filter(a: MoebiusNumeric, b: MoebiusNumeric, tol: float = 1e-9) -> JorgensenResult:
    """
    |tr^2 A - 4| + |tr(A B A^-1 B^-1) - 2|.

    A value below 1 - tol means <A, B> is not both discrete and non-elementary.
    """
    commutator = a @ b @ a.inverse() @ b.inverse()
    value = abs(a.trace() ** 2 - 4) + abs(commutator.trace() - 2)
    return JorgensenResult(value=float(value), tol=tol)


def random_conjugator(rng: np.random.Generator) -> MoebiusNumeric:
    """A random SL2(C) matrix with Gaussian entries."""
    while True:
        entries = rng.normal(size=4) + 1j * rng.normal(size=4)
        if abs(entries[0] * entries[3] - entries[1] * entries[2]) > 1e-3:
            return MoebiusNumeric.normalized(*entries)


def _rotation(theta: float) -> MoebiusNumeric:
    """z -> e^{i theta} z."""
    u = cmath.exp(0.5j * theta)
    return MoebiusNumeric(u, 0, 0, 1 / u)


def _hyperbolic_pair(p: float, r: float) -> MoebiusNumeric:
    """(1/r) [[p, p^2 - r^2], [1, p]]: isometric disks of radius r at -p and p."""
    return MoebiusNumeric.normalized(p / r, (p * p - r * r) / r, 1 / r, p / r)


def schottky_example(
    rank: int, p: float = 3.0, ratio: float = 0.8, offset: float = 0.0
) -> list[MoebiusNumeric]:
    """
    Loxodromic generators whose 2*rank isometric disks sit evenly on |z| = p.

    Generator j is the pair with disks at -p and p rotated by offset + pi j / rank.
    The disk radius is ratio * p * sin(pi / (2 rank)), so ratio < 1 keeps the
    disks disjoint.
    """
    if rank < 1:
        raise ValueError(f"Schottky rank must be positive, got {rank}")
    if not 0 < ratio < 1:
        raise ValueError(f"Radius ratio must lie in (0, 1), got {ratio}")
    r = ratio * p * math.sin(math.pi / (2 * rank))
    base = _hyperbolic_pair(p, r)
    return [
        base.conjugate_by(_rotation(offset + math.pi * j / rank)) for j in range(rank)
    ]


def random_schottky(rng: np.random.Generator, rank: int = 2) -> list[MoebiusNumeric]:
    """
    A seeded random Schottky set.

    Draws a catalogue configuration with random size, spacing and rotation,
    then moves it by a random affine map z -> lam z + w, which carries
    isometric disks to isometric disks.
    """
    p = rng.uniform(1.5, 5.0)
    ratio = rng.uniform(0.3, 0.9)
    offset = rng.uniform(0, 2 * math.pi)
    mats = schottky_example(rank, p=p, ratio=ratio, offset=offset)

    lam = rng.uniform(0.5, 2.0) * cmath.exp(1j * rng.uniform(0, 2 * math.pi))
    w = complex(rng.normal(), rng.normal())
    s = cmath.sqrt(lam)
    affine = MoebiusNumeric(s, w / s, 0, 1 / s)
    return [a.conjugate_by(affine) for a in mats]


class FreenessService:
    """
    Service for Schottky certification.
    """

    def __init__(self, config: FreiheitConfig | None = None):
        """
        Initialize freeness service.

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

    def certify_schottky(
        self, mats: Sequence[MoebiusNumeric], margin: float | None = None
    ) -> SchottkyCertificate:
        """
        Check that the 2k isometric disks are pairwise disjoint with gap >= margin.

        Raises:
            DegenerateError: Some generator has |c| <= tol
        """
        if not mats:
            raise ValueError("certify_schottky needs at least one matrix")
        margin = self.config.tolerances.schottky_margin if margin is None else margin
        disks = disk_pairs(mats, tol=self.config.tolerances.degenerate)
        min_gap, pair = closest_pair(disks)
        certified = min_gap >= margin
        certificate = SchottkyCertificate(
            generators=list(mats),
            disks=disks,
            margin=margin,
            min_gap=min_gap,
            verdict="certified" if certified else "failed",
            failed_pair=None if certified else pair,
        )
        logger.debug(f"Schottky check on {len(mats)} generators: min gap {min_gap:.6g}")
        return certificate

    def certify_schottky_with_retry(
        self,
        mats: Sequence[MoebiusNumeric],
        margin: float | None = None,
        seed: int | None = None,
    ) -> SchottkyCertificate:
        """
        certify_schottky, retried once after a seeded random conjugation.

        The retry runs when a generator is degenerate or the disks overlap.
        Conjugation preserves freeness and discreteness, so a certificate for
        the conjugated set certifies the original generators; the conjugator
        and seed are recorded.
        """
        margin = self.config.tolerances.schottky_margin if margin is None else margin
        seed = self.config.seed if seed is None else seed
        first_problem = None
        try:
            certificate = self.certify_schottky(mats, margin)
            if certificate.certified:
                return certificate
            first_problem = f"disks {certificate.failed_pair} overlap"
        except DegenerateError as e:
            first_problem = str(e)

        conjugator = random_conjugator(np.random.default_rng(seed))
        logger.warning(f"Retrying Schottky check after random conjugation (seed {seed}): {first_problem}")
        conjugated = [a.conjugate_by(conjugator) for a in mats]
        try:
            retried = self.certify_schottky(conjugated, margin)
        except DegenerateError as e:
            return SchottkyCertificate(
                generators=list(mats),
                disks=[],
                margin=margin,
                min_gap=-math.inf,
                conjugator=conjugator,
                seed=seed,
                notes=[first_problem, str(e)],
            )
        retried.generators = list(mats)
        retried.conjugator = conjugator
        retried.seed = seed
        retried.notes = [f"first attempt: {first_problem}"]
        return retried

    def jorgensen_filter(self, a: MoebiusNumeric, b: MoebiusNumeric) -> JorgensenResult:
        return jorgensen_filter(a, b, tol=self.config.tol)

    def verify_schottky(self, certificate: SchottkyCertificate) -> list[str]:
        """
        Rebuild the disks from the recorded generators and conjugator.

        Returns a list of problems, empty if the certificate holds.
        """
        problems = []
        if certificate.margin < 0:
            problems.append(f"margin {certificate.margin} is negative")
        mats = certificate.generators
        if certificate.conjugator is not None:
            mats = [a.conjugate_by(certificate.conjugator) for a in mats]
        try:
            disks = disk_pairs(mats, tol=self.config.tolerances.degenerate)
        except DegenerateError as e:
            if certificate.certified:
                problems.append(str(e))
            elif certificate.min_gap != -math.inf:
                problems.append(f"minimal gap is -inf, certificate says {certificate.min_gap}")
            return problems

        tol = max(self.config.tol, 1e-9)
        if len(disks) != len(certificate.disks):
            problems.append(f"certificate lists {len(certificate.disks)} disks, expected {len(disks)}")
        else:
            for mine, theirs in zip(disks, certificate.disks):
                if abs(mine.center - theirs.center) > tol * max(1.0, abs(mine.center)) or abs(
                    mine.radius - theirs.radius
                ) > tol * max(1.0, mine.radius):
                    problems.append(f"disk {theirs.label} does not match its generator")
        min_gap, _ = closest_pair(disks)
        if not math.isclose(min_gap, certificate.min_gap, rel_tol=tol, abs_tol=tol):
            problems.append(f"minimal gap is {min_gap:.6g}, certificate says {certificate.min_gap}")
        certified = min_gap >= certificate.margin
        if not certified and not _attains_gap(disks, certificate.failed_pair, min_gap, tol):
            problems.append(f"disks {certificate.failed_pair} are not a closest pair")
        if certified != certificate.certified:
            problems.append(f"minimal gap {min_gap:.6g} against margin {certificate.margin} contradicts the verdict")
        return problems


__all__ = [
    "FreenessService",
    "isometric_disk",
    "disk_pairs",
    "closest_pair",
    "jorgensen_filter",
    "random_conjugator",
    "schottky_example",
    "random_schottky",
]
