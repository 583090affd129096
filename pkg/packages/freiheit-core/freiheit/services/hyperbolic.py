"""
Hyperbolic Service for freiheit.

Upper half-space H^3, the Poincare extension of the Moebius action, and the
displacement-sum test: if A_1, ..., A_k freely generate a free Kleinian group
then sum 1/(1 + e^d_i) <= 1/2 at every point, d_i the displacement of A_i.
"""

import logging
import math
import multiprocessing
from collections.abc import Sequence

import numpy as np
from scipy.optimize import minimize
from scipy.special import expit

from freiheit.config import FreiheitConfig, get_config
from freiheit.errors import SizeLimitError
from freiheit.models.hyperbolic import (
    BasepointSearch,
    MoebiusNumeric,
    ObstructionReport,
    ShortLoopBound,
    UHPoint,
)

logger = logging.getLogger(__name__)

# log t is clipped to this range during the basepoint search
LOG_HEIGHT_LIMIT = 50.0

# short_loop_bound refuses longer displacements; k would pass 10^303
MAX_LOOP_DISPLACEMENT = 700.0


def act(a: MoebiusNumeric, p: UHPoint) -> UHPoint:
    """Image of p under the isometric extension of z -> (az + b)/(cz + d)."""
    w = a.c * p.z + a.d
    t2 = p.t * p.t
    denom = abs(w) ** 2 + abs(a.c) ** 2 * t2
    z = ((a.a * p.z + a.b) * w.conjugate() + a.a * a.c.conjugate() * t2) / denom
    return UHPoint(z, p.t / denom)


def dist(p: UHPoint, q: UHPoint) -> float:
    """
    Hyperbolic distance, cosh d = 1 + (|z1 - z2|^2 + (t1 - t2)^2) / (2 t1 t2).

    Evaluated as 2 asinh(sqrt(...) / (2 sqrt(t1 t2))) to keep precision for
    nearby points.
    """
    chord = math.sqrt(abs(p.z - q.z) ** 2 + (p.t - q.t) ** 2)
    return 2.0 * math.asinh(chord / (2.0 * math.sqrt(p.t * q.t)))


def displacement(a: MoebiusNumeric, p: UHPoint) -> float:
    return dist(p, act(a, p))


def frobenius_cosh(a: MoebiusNumeric) -> float:
    """cosh of the displacement at j = (0, 1): (|a|^2 + |b|^2 + |c|^2 + |d|^2) / 2."""
    return a.frobenius_sq() / 2.0


def length_threshold(k: int) -> float:
    """log(2k - 1), the displacement below which k generators cannot all be free."""
    if k < 2:
        raise ValueError(f"The threshold is defined for k >= 2, got {k}")
    return math.log(2 * k - 1)


def displacement_margin(displacements: Sequence[float]) -> float:
    """1/2 - sum 1/(1 + e^d_i)."""
    d = np.asarray(displacements, dtype=float)
    return float(0.5 - expit(-d).sum())


def obstruction_from_displacements(
    displacements: Sequence[float], basepoint: UHPoint, tol: float = 1e-9
) -> ObstructionReport:
    if len(displacements) < 2:
        raise ValueError(f"The displacement test needs k >= 2 elements, got {len(displacements)}")
    return ObstructionReport(
        displacements=[float(d) for d in displacements],
        basepoint=basepoint,
        margin=displacement_margin(displacements),
        tol=tol,
    )


def sample_basepoints(rng: np.random.Generator, count: int, spread: float = 1.0) -> list[UHPoint]:
    """Random points with Gaussian z and log-normal t."""
    x = rng.normal(scale=spread, size=(count, 3))
    return [UHPoint.from_coordinates(row) for row in x]


def _short_loop_rank(d: float) -> int:
    """Smallest k >= 2 with d < log(2k - 1), by doubling then bisection on k."""

    def below(k: int) -> bool:
        return d < math.log(2 * k - 1)

    hi = 2
    while not below(hi):
        hi *= 2
    if hi == 2:
        return hi
    lo = hi // 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if below(mid):
            hi = mid
        else:
            lo = mid
    return hi


def _margin_at(mats: Sequence[MoebiusNumeric], x: np.ndarray) -> float:
    x = np.array(x, dtype=float)
    x[2] = np.clip(x[2], -LOG_HEIGHT_LIMIT, LOG_HEIGHT_LIMIT)
    p = UHPoint.from_coordinates(x)
    return displacement_margin([displacement(a, p) for a in mats])


def _run_restart(args) -> tuple[np.ndarray, float, bool]:
    mats, start, max_iter = args
    result = minimize(
        lambda x: _margin_at(mats, x),
        x0=start,
        method="Nelder-Mead",
        options={"maxiter": max_iter, "xatol": 1e-10, "fatol": 1e-12},
    )
    x = np.array(result.x, dtype=float)
    x[2] = np.clip(x[2], -LOG_HEIGHT_LIMIT, LOG_HEIGHT_LIMIT)
    return x, float(result.fun), bool(result.success)


class HyperbolicService:
    """
    Service for the displacement-sum obstruction and the basepoint search.
    """

    def __init__(self, config: FreiheitConfig | None = None):
        """
        Initialize hyperbolic service.

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

    def log2km1_test(
        self, mats: Sequence[MoebiusNumeric], basepoint: UHPoint | None = None
    ) -> ObstructionReport:
        """
        Displacement-sum test at one basepoint.

        obstructed means the k elements do not simultaneously generate a
        discrete group and freely generate a free group of rank k.
        consistent carries no conclusion.
        """
        basepoint = basepoint or UHPoint.j()
        report = obstruction_from_displacements(
            [displacement(a, basepoint) for a in mats], basepoint, tol=self.config.tol
        )
        logger.debug(f"Displacement test at {basepoint}: margin {report.margin}")
        return report

    def short_loop_bound(
        self, mats: Sequence[MoebiusNumeric], basepoint: UHPoint | None = None
    ) -> ShortLoopBound:
        """
        Smallest k >= 2 with every displacement below log(2k - 1).

        For a torsion-free Kleinian group generated by the matrices this gives
        chibar <= k - 2 and miof <= k - 1.

        Raises:
            SizeLimitError: A displacement above MAX_LOOP_DISPLACEMENT
        """
        if not mats:
            raise ValueError("short_loop_bound needs at least one matrix")
        basepoint = basepoint or UHPoint.j()
        displacements = [displacement(a, basepoint) for a in mats]
        longest = max(displacements)

        if not math.isfinite(longest) or longest > MAX_LOOP_DISPLACEMENT:
            raise SizeLimitError(
                f"Displacement {longest:.6g} is above {MAX_LOOP_DISPLACEMENT}; "
                f"no short-loop bound is computed"
            )
        k = _short_loop_rank(longest)
        return ShortLoopBound(
            displacements=displacements,
            basepoint=basepoint,
            k=k,
            threshold=length_threshold(k),
            chibar_bound=k - 2,
            miof_bound=k - 1,
        )

    def minimize_basepoint(
        self,
        mats: Sequence[MoebiusNumeric],
        init: UHPoint | None = None,
        restarts: int | None = None,
        seed: int | None = None,
    ) -> BasepointSearch:
        """
        Minimize the margin over basepoints with restarted Nelder-Mead.

        The search runs in (Re z, Im z, log t). The first run starts at init,
        the others at seeded Gaussian perturbations of it. The returned margin
        is never above the margin at init.
        """
        if len(mats) < 2:
            raise ValueError(f"The displacement test needs k >= 2 elements, got {len(mats)}")
        hyp = self.config.hyperbolic
        init = init or UHPoint.j()
        restarts = hyp.restarts if restarts is None else restarts
        seed = self.config.seed if seed is None else seed
        if restarts < 1:
            raise ValueError(f"At least one restart is needed, got {restarts}")

        rng = np.random.default_rng(seed)
        x0 = init.coordinates()
        starts = [x0] + [x0 + rng.normal(scale=hyp.spread, size=3) for _ in range(restarts - 1)]
        jobs = [(list(mats), start, hyp.max_iter) for start in starts]

        if self.config.run.workers > 1:
            with multiprocessing.Pool(self.config.run.workers) as pool:
                results = pool.map(_run_restart, jobs)
        else:
            results = [_run_restart(job) for job in jobs]

        initial = self.log2km1_test(mats, init)
        best_report = initial
        converged = results[0][2]
        for x, fun, success in results:
            candidate = self.log2km1_test(mats, UHPoint.from_coordinates(x))
            if candidate.margin < best_report.margin:
                best_report = candidate
                converged = success

        if not converged:
            logger.warning("Basepoint search did not converge at the best point found")
        logger.info(
            f"Basepoint search: margin {initial.margin:.6g} -> {best_report.margin:.6g} "
            f"({best_report.verdict})"
        )
        return BasepointSearch(
            initial=initial,
            best=best_report,
            restarts=restarts,
            converged=converged,
            seed=seed,
        )

    def verify_obstruction(
        self, report: ObstructionReport, mats: Sequence[MoebiusNumeric]
    ) -> list[str]:
        """
        Re-check a report at its recorded basepoint without any search.

        Returns a list of problems, empty if the report holds.
        """
        problems = []
        if len(mats) != report.k:
            return [f"report has {report.k} displacements for {len(mats)} matrices"]
        if report.tol < 0:
            problems.append(f"tolerance {report.tol} is negative")
        recomputed = obstruction_from_displacements(
            [displacement(a, report.basepoint) for a in mats], report.basepoint, tol=report.tol
        )
        tol = max(self.config.tol, 1e-9)
        for i, (d_old, d_new) in enumerate(zip(report.displacements, recomputed.displacements)):
            if abs(d_old - d_new) > tol * max(1.0, abs(d_new)):
                problems.append(f"displacement {i} is {d_new}, report says {d_old}")
        if abs(report.margin - recomputed.margin) > tol:
            problems.append(f"margin is {recomputed.margin}, report says {report.margin}")
        if recomputed.verdict != report.verdict:
            problems.append(f"verdict is {recomputed.verdict}, report says {report.verdict}")
        return problems


__all__ = [
    "HyperbolicService",
    "act",
    "dist",
    "displacement",
    "frobenius_cosh",
    "length_threshold",
    "displacement_margin",
    "obstruction_from_displacements",
    "sample_basepoints",
]
