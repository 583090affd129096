"""
Tests for the upper half-space geometry and the displacement-sum obstruction.
"""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st


def _random_matrix(rng):
    """A normalized matrix with moderate entries."""
    from freiheit.models.hyperbolic import MoebiusNumeric

    while True:
        entries = rng.normal(size=4) + 1j * rng.normal(size=4)
        if abs(entries[0] * entries[3] - entries[1] * entries[2]) > 0.25:
            return MoebiusNumeric.normalized(*entries)


def _loxodromic(length, rotation=0.0):
    """diag(e^(l/2), e^(-l/2)) rotated to move j by exactly l."""
    from freiheit.models.hyperbolic import MoebiusNumeric

    u = np.exp(0.5 * length)
    a = MoebiusNumeric(u, 0, 0, 1 / u)
    if rotation:
        c, s = math.cos(rotation / 2), math.sin(rotation / 2)
        a = a.conjugate_by(MoebiusNumeric(c, -s, s, c))
    return a


class TestUHPoint:
    """Tests for UHPoint."""

    def test_height_must_be_positive(self):
        """t <= 0 is rejected."""
        from freiheit.models.hyperbolic import UHPoint

        with pytest.raises(ValueError):
            UHPoint(0j, 0.0)
        with pytest.raises(ValueError):
            UHPoint(0j, -1.0)

    def test_to_dict_from_dict(self):
        """Test serialization round trip."""
        from freiheit.models.hyperbolic import UHPoint

        p = UHPoint(1.5 - 2j, 0.25)

        assert UHPoint.from_dict(p.to_dict()) == p
        assert p.to_dict() == {"z": [1.5, -2.0], "t": 0.25}

    def test_coordinates(self):
        """(Re z, Im z, log t) round trip."""
        from freiheit.models.hyperbolic import UHPoint

        p = UHPoint(0.5 + 1j, 4.0)
        q = UHPoint.from_coordinates(p.coordinates())

        assert list(p.coordinates()) == pytest.approx([0.5, 1.0, math.log(4.0)])
        assert abs(q.z - p.z) < 1e-12
        assert q.t == pytest.approx(4.0)


class TestMoebiusNumeric:
    """Tests for MoebiusNumeric."""

    def test_normalized(self):
        """Scaling gives determinant one."""
        from freiheit.models.hyperbolic import MoebiusNumeric

        a = MoebiusNumeric.normalized(2, 0, 0, 8)

        assert abs(a.det() - 1) < 1e-12
        assert abs(a.a - 0.5) < 1e-12

    def test_rejects_unnormalized(self):
        """Direct construction requires det = 1."""
        from freiheit.models.hyperbolic import MoebiusNumeric

        with pytest.raises(ValueError):
            MoebiusNumeric(2, 0, 0, 2)

    def test_singular(self):
        """Singular matrices cannot be normalized."""
        from freiheit.models.hyperbolic import MoebiusNumeric

        with pytest.raises(ValueError):
            MoebiusNumeric.normalized(1, 2, 2, 4)

    def test_identity_up_to_sign(self):
        """-I is the identity of PSL2(C)."""
        from freiheit.models.hyperbolic import MoebiusNumeric

        assert MoebiusNumeric(-1, 0, 0, -1).is_identity()
        assert not MoebiusNumeric(1, 1e-3, 0, 1).is_identity(1e-6)

    def test_from_exact(self):
        """Numeric image of an exact matrix."""
        from freiheit.algebra import Mat2
        from freiheit.models.hyperbolic import MoebiusNumeric

        a = MoebiusNumeric.from_exact(Mat2.of([[2, 0], [0, "1/2"]]))

        assert abs(a.a - 2) < 1e-12
        assert abs(a.d - 0.5) < 1e-12

    def test_to_dict_from_dict(self):
        """JSON form is [[[re, im], ...]]."""
        from freiheit.models.hyperbolic import MoebiusNumeric

        a = MoebiusNumeric.normalized(1 + 1j, 2, 0.5j, 3)
        restored = MoebiusNumeric.from_dict(a.to_dict())

        assert max(abs(x - y) for x, y in zip(
            (a.a, a.b, a.c, a.d), (restored.a, restored.b, restored.c, restored.d)
        )) < 1e-12

    def test_from_dict_accepts_strings_and_numbers(self):
        """Entries may be numbers, [re, im] pairs or strings."""
        from freiheit.models.hyperbolic import MoebiusNumeric

        a = MoebiusNumeric.from_dict([[1, "1+1i"], [[0, 0], 1]])

        assert a.b == 1 + 1j


class TestGeometry:
    """Tests for act, dist and displacement."""

    def test_act_on_j(self):
        """The diagonal loxodromic moves j straight up."""
        from freiheit.models.hyperbolic import UHPoint
        from freiheit.services.hyperbolic import act

        p = act(_loxodromic(2.0), UHPoint.j())

        assert abs(p.z) < 1e-12
        assert p.t == pytest.approx(math.e ** 2)

    def test_dist_vertical(self):
        """Distance along a vertical geodesic is |log(t1/t2)|."""
        from freiheit.models.hyperbolic import UHPoint
        from freiheit.services.hyperbolic import dist

        assert dist(UHPoint(0j, 1.0), UHPoint(0j, 5.0)) == pytest.approx(math.log(5))
        assert dist(UHPoint.j(), UHPoint.j()) == 0.0

    @given(st.floats(min_value=0.01, max_value=10), st.floats(min_value=0, max_value=6.28))
    def test_loxodromic_displacement(self, length, rotation):
        """A conjugate of diag(e^(l/2), e^(-l/2)) by a rotation about j moves j by l."""
        from freiheit.models.hyperbolic import UHPoint
        from freiheit.services.hyperbolic import displacement

        d = displacement(_loxodromic(length, rotation), UHPoint.j())

        assert d == pytest.approx(length, rel=1e-9, abs=1e-9)

    @pytest.mark.slow
    def test_frobenius_cross_check(self):
        """cosh(displacement at j) = |A|_F^2 / 2 for 10000 random matrices."""
        from freiheit.models.hyperbolic import UHPoint
        from freiheit.services.hyperbolic import displacement, frobenius_cosh

        rng = np.random.default_rng(1)
        worst = 0.0
        for _ in range(10000):
            a = _random_matrix(rng)
            expected = frobenius_cosh(a)
            error = abs(math.cosh(displacement(a, UHPoint.j())) - expected) / max(1.0, expected)
            worst = max(worst, error)

        assert worst <= 1e-9

    @pytest.mark.slow
    def test_action_is_an_isometry(self):
        """dist(Ap, Aq) = dist(p, q) for random A, p, q."""
        from freiheit.services.hyperbolic import act, dist, sample_basepoints

        rng = np.random.default_rng(2)
        worst = 0.0
        for _ in range(10000):
            a = _random_matrix(rng)
            p, q = sample_basepoints(rng, 2)
            d = dist(p, q)
            worst = max(worst, abs(dist(act(a, p), act(a, q)) - d) / max(1.0, d))

        assert worst <= 1e-9

    @given(
        st.integers(min_value=0, max_value=2**32 - 1),
        st.floats(min_value=-2, max_value=2),
        st.floats(min_value=-2, max_value=2),
        st.floats(min_value=0.25, max_value=4),
    )
    def test_displacement_is_conjugation_invariant(self, seed, x, y, t):
        """displacement(A, P) = displacement(B A B^-1, B P)."""
        from freiheit.models.hyperbolic import UHPoint
        from freiheit.services.hyperbolic import act, displacement

        rng = np.random.default_rng(seed)
        a, b = _random_matrix(rng), _random_matrix(rng)
        p = UHPoint(complex(x, y), t)

        expected = displacement(a, p)

        assert displacement(a.conjugate_by(b), act(b, p)) == pytest.approx(
            expected, rel=1e-7, abs=1e-7
        )

    def test_length_threshold(self):
        """log(2k - 1) for k >= 2."""
        from freiheit.services.hyperbolic import length_threshold

        assert length_threshold(2) == pytest.approx(math.log(3))
        assert length_threshold(3) == pytest.approx(math.log(5))
        with pytest.raises(ValueError):
            length_threshold(1)


class TestObstruction:
    """Tests for log2km1_test and the basepoint search."""

    def test_margin_at_threshold(self):
        """k displacements equal to log(2k - 1) give margin 0."""
        from freiheit.services.hyperbolic import displacement_margin

        for k in (2, 3, 5):
            assert displacement_margin([math.log(2 * k - 1)] * k) == pytest.approx(0, abs=1e-12)

    def test_needs_two_elements(self, config):
        """A single element is rejected."""
        from freiheit.services.hyperbolic import HyperbolicService

        with pytest.raises(ValueError):
            HyperbolicService(config).log2km1_test([_loxodromic(1.0)])

    def test_short_loxodromics_are_obstructed(self, config):
        """Two displacements below log 3 at j give margin < 0."""
        from freiheit.services.hyperbolic import HyperbolicService

        report = HyperbolicService(config).log2km1_test([_loxodromic(0.5), _loxodromic(0.8, 1.0)])

        assert report.obstructed
        assert report.margin < 0
        assert report.to_dict()["meaning"].startswith("the elements do not simultaneously")

    def test_long_loxodromics_are_consistent(self, config):
        """Large displacements carry no conclusion."""
        from freiheit.services.hyperbolic import HyperbolicService

        report = HyperbolicService(config).log2km1_test([_loxodromic(4.0), _loxodromic(5.0, 1.0)])

        assert report.verdict == "consistent"
        assert report.margin > 0

    @pytest.mark.slow
    def test_schottky_groups_never_obstructed(self, config):
        """100 seeded Schottky rank-2 groups, 1000 basepoints each: margin >= -1e-9."""
        from freiheit.services.freeness import FreenessService, random_schottky
        from freiheit.services.hyperbolic import HyperbolicService, sample_basepoints

        rng = np.random.default_rng(5)
        hyperbolic = HyperbolicService(config)
        freeness = FreenessService(config)
        violations = []
        for _ in range(100):
            mats = random_schottky(rng, 2)
            assert freeness.certify_schottky(mats).certified
            for p in sample_basepoints(rng, 1000, spread=2.0):
                report = hyperbolic.log2km1_test(mats, p)
                if report.margin < -1e-9:
                    violations.append(report.to_dict())

        assert violations == []

    def test_minimize_never_worse_than_start(self, config):
        """The search returns a margin at most the initial margin."""
        from freiheit.services.catalog import get_example
        from freiheit.services.hyperbolic import HyperbolicService

        mats = get_example("schottky-2").matrices
        search = HyperbolicService(config).minimize_basepoint(mats, restarts=4, seed=3)

        assert search.best.margin <= search.initial.margin
        assert search.best.margin >= -1e-9
        assert search.seed == 3

    def test_minimize_is_deterministic(self, config):
        """Same seed, same best basepoint."""
        from freiheit.services.hyperbolic import HyperbolicService

        mats = [_loxodromic(1.2), _loxodromic(1.5, 2.0)]
        service = HyperbolicService(config)

        first = service.minimize_basepoint(mats, restarts=3, seed=9).to_dict()
        second = service.minimize_basepoint(mats, restarts=3, seed=9).to_dict()

        assert first == second

    def test_verify_obstruction(self, config):
        """A report re-verifies at its basepoint; a flipped verdict does not."""
        from freiheit.models.hyperbolic import ObstructionReport
        from freiheit.services.hyperbolic import HyperbolicService

        mats = [_loxodromic(0.5), _loxodromic(0.8, 1.0)]
        service = HyperbolicService(config)
        data = service.log2km1_test(mats).to_dict()

        assert service.verify_obstruction(ObstructionReport.from_dict(data), mats) == []

        data["margin"] = 0.1
        data["displacements"] = [3.0, 3.0]
        assert service.verify_obstruction(ObstructionReport.from_dict(data), mats) != []

    def test_recorded_verdict_survives_loading(self):
        """from_dict keeps the verdict it was given instead of re-deriving it."""
        from freiheit.models.hyperbolic import ObstructionReport, UHPoint

        data = {
            "displacements": [0.5, 0.8],
            "basepoint": UHPoint.j().to_dict(),
            "margin": -0.1875,
            "verdict": "consistent",
        }
        report = ObstructionReport.from_dict(data)

        assert report.verdict == "consistent"
        assert report.expected_verdict() == "obstructed"

    def test_unknown_verdict_rejected(self):
        """Verdicts outside the vocabulary fail validation."""
        from freiheit.models.hyperbolic import ObstructionReport, UHPoint

        with pytest.raises(ValueError, match="Invalid verdict 'maybe'"):
            ObstructionReport([0.5, 0.8], UHPoint.j(), -0.1875, verdict="maybe")

    def test_forged_verdict_detected(self, config):
        """An obstructed report relabelled consistent fails verification."""
        from freiheit.models.hyperbolic import ObstructionReport
        from freiheit.services.hyperbolic import HyperbolicService

        mats = [_loxodromic(0.5), _loxodromic(0.8, 1.0)]
        service = HyperbolicService(config)
        data = service.log2km1_test(mats).to_dict()
        assert data["verdict"] == "obstructed"
        data["verdict"] = "consistent"

        problems = service.verify_obstruction(ObstructionReport.from_dict(data), mats)

        assert problems == ["verdict is obstructed, report says consistent"]

    def test_forged_margin_detected(self, config):
        """A margin that does not match the displacements fails verification."""
        from freiheit.models.hyperbolic import ObstructionReport
        from freiheit.services.hyperbolic import HyperbolicService

        mats = [_loxodromic(0.5), _loxodromic(0.8, 1.0)]
        service = HyperbolicService(config)
        data = service.log2km1_test(mats).to_dict()
        data["margin"] -= 0.04

        problems = service.verify_obstruction(ObstructionReport.from_dict(data), mats)

        assert len(problems) == 1
        assert problems[0].startswith("margin is ")

    def test_negative_tolerance_detected(self, config):
        """A negative tolerance would let any margin count as obstructed."""
        from freiheit.models.hyperbolic import ObstructionReport
        from freiheit.services.hyperbolic import HyperbolicService

        mats = [_loxodromic(3.0), _loxodromic(3.0, 1.0)]
        service = HyperbolicService(config)
        data = service.log2km1_test(mats).to_dict()
        data["tol"] = -1.0
        data["verdict"] = "obstructed"

        problems = service.verify_obstruction(ObstructionReport.from_dict(data), mats)

        assert "tolerance -1.0 is negative" in problems


class TestShortLoopBound:
    """Tests for short_loop_bound."""

    def test_below_log_three(self, config):
        """All displacements below log 3: k = 2, chibar <= 0, miof <= 1."""
        from freiheit.services.hyperbolic import HyperbolicService

        bound = HyperbolicService(config).short_loop_bound([_loxodromic(0.5), _loxodromic(1.0, 1.0)])

        assert bound.k == 2
        assert bound.chibar_bound == 0
        assert bound.miof_bound == 1

    def test_between_log_three_and_log_five(self, config):
        """max displacement 1.5: k = 3, chibar <= 1."""
        from freiheit.services.hyperbolic import HyperbolicService

        bound = HyperbolicService(config).short_loop_bound([_loxodromic(1.5)])

        assert bound.k == 3
        assert bound.threshold == pytest.approx(math.log(5))
        assert bound.chibar_bound == 1

    def test_smallest_k(self, config):
        """k is minimal: the longest displacement is at least log(2(k-1) - 1)."""
        from freiheit.services.hyperbolic import HyperbolicService, length_threshold

        for length in (0.3, 1.0, 2.0, 3.3, 6.0):
            bound = HyperbolicService(config).short_loop_bound([_loxodromic(length)])
            assert bound.max_displacement < length_threshold(bound.k)
            if bound.k > 2:
                assert bound.max_displacement >= length_threshold(bound.k - 1)

    def test_empty(self, config):
        """At least one matrix is needed."""
        from freiheit.services.hyperbolic import HyperbolicService

        with pytest.raises(ValueError):
            HyperbolicService(config).short_loop_bound([])

    def test_long_displacement(self, config):
        """Displacement 40 gives k near e^40 / 2, still minimal."""
        from freiheit.services.hyperbolic import HyperbolicService, length_threshold

        bound = HyperbolicService(config).short_loop_bound([_loxodromic(40.0)])

        assert bound.k > 10**17
        assert bound.max_displacement < length_threshold(bound.k)
        assert bound.max_displacement >= length_threshold(bound.k - 1)

    def test_displacement_cap(self, config, monkeypatch):
        """Displacements above the cap raise instead of searching for k."""
        from freiheit.errors import SizeLimitError
        from freiheit.services import hyperbolic
        from freiheit.services.hyperbolic import HyperbolicService

        monkeypatch.setattr(hyperbolic, "MAX_LOOP_DISPLACEMENT", 1.0)

        with pytest.raises(SizeLimitError):
            HyperbolicService(config).short_loop_bound([_loxodromic(1.5)])
