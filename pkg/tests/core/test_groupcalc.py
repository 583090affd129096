"""
Tests for iof, miof bounds, chibar and the inequality checks.
"""

import random

import numpy as np
import pytest

from freiheit.models.groups import GroupDescriptor
from freiheit.models.words import FreeWord


def _words(*texts):
    return [FreeWord.parse(t) for t in texts]


class TestGroupDescriptor:
    """Tests for GroupDescriptor."""

    def test_invalid_kind(self):
        """Unknown kinds are rejected."""
        with pytest.raises(ValueError) as exc:
            GroupDescriptor("solvable")
        assert "Must be one of" in str(exc.value)

    def test_invalid_rank_and_genus(self):
        """Free groups need rank >= 1, surfaces genus >= 1."""
        with pytest.raises(ValueError):
            GroupDescriptor.free(0)
        with pytest.raises(ValueError):
            GroupDescriptor.surface(0)
        with pytest.raises(ValueError):
            GroupDescriptor.free_product()

    def test_render(self):
        """Short names."""
        assert GroupDescriptor.trivial().render() == "1"
        assert GroupDescriptor.cyclic().render() == "Z"
        assert GroupDescriptor.free(3).render() == "F3"
        assert GroupDescriptor.surface(2).render() == "S2"
        product = GroupDescriptor.free_product(GroupDescriptor.cyclic(), GroupDescriptor.surface(1))
        assert product.render() == "Z * S1"

    def test_free_rank(self):
        """Free products of free groups are free; surfaces are not."""
        product = GroupDescriptor.free_product(GroupDescriptor.free(2), GroupDescriptor.cyclic())

        assert product.free_rank() == 3
        assert GroupDescriptor.trivial().free_rank() == 0
        assert GroupDescriptor.surface(2).free_rank() is None
        assert not GroupDescriptor.free_product(product, GroupDescriptor.surface(1)).is_free

    def test_to_dict_from_dict(self):
        """Test serialization round trip, nested factors included."""
        group = GroupDescriptor.free_product(
            GroupDescriptor.free(2), GroupDescriptor.free_product(GroupDescriptor.surface(3))
        )

        assert GroupDescriptor.from_dict(group.to_dict()) == group
        assert GroupDescriptor.free(2).to_dict() == {"kind": "free", "rank": 2}


class TestChibar:
    """Tests for chibar, deficiency and miof_lower_bound."""

    @pytest.mark.parametrize(
        "group,expected",
        [
            (GroupDescriptor.trivial(), -1),
            (GroupDescriptor.cyclic(), 0),
            (GroupDescriptor.free(3), 2),
            (GroupDescriptor.surface(2), 2),
            (GroupDescriptor.free_product(GroupDescriptor.cyclic(), GroupDescriptor.cyclic()), 1),
            (GroupDescriptor.free_product(GroupDescriptor.free(2), GroupDescriptor.surface(2)), 4),
        ],
    )
    def test_chibar(self, group, expected):
        """Minus the Euler characteristic."""
        from freiheit.services.groupcalc import chibar

        assert chibar(group) == expected

    def test_free_product_of_free_groups(self):
        """chibar(F_m * F_n) = chibar(F_(m+n))."""
        from freiheit.services.groupcalc import chibar

        for m in range(1, 4):
            for n in range(1, 4):
                product = GroupDescriptor.free_product(GroupDescriptor.free(m), GroupDescriptor.free(n))
                assert chibar(product) == chibar(GroupDescriptor.free(m + n))

    def test_deficiency(self):
        """def = chibar + 1."""
        from freiheit.services.groupcalc import deficiency

        assert deficiency(GroupDescriptor.trivial()) == 0
        assert deficiency(GroupDescriptor.free(4)) == 4
        assert deficiency(GroupDescriptor.surface(2)) == 3

    def test_miof_lower_bound(self):
        """0 for the trivial group, max(def, 1) otherwise."""
        from freiheit.services.groupcalc import miof_lower_bound

        assert miof_lower_bound(GroupDescriptor.trivial()) == 0
        assert miof_lower_bound(GroupDescriptor.cyclic()) == 1
        assert miof_lower_bound(GroupDescriptor.free(3)) == 3
        assert miof_lower_bound(GroupDescriptor.surface(2)) == 3


class TestIofFree:
    """Tests for GroupCalcService.iof_free."""

    @pytest.mark.parametrize(
        "texts,expected",
        [
            (("a", "b"), 2),
            (("a", "b", "ab"), 2),
            (("a", "b", "c", "ab", "bcA", "1"), 3),
            (("a", "aa"), 1),
            (("1",), 0),
            (("aa", "bb", "ab", "aB"), 3),
        ],
    )
    def test_exact_values(self, config, texts, expected):
        """iof of small generating sets."""
        from freiheit.services.groupcalc import GroupCalcService

        report = GroupCalcService(config).iof_free(_words(*texts))

        assert report.exact
        assert report.value == expected
        assert len(report.witness) == expected

    def test_witness_is_first_in_order(self, config):
        """Largest subsets first, lexicographic within a size."""
        from freiheit.services.groupcalc import GroupCalcService

        report = GroupCalcService(config).iof_free(_words("a", "b", "ab"))

        assert report.witness == [0, 1]

    def test_subsets_never_exceed(self, config):
        """iof of a subset is at most iof of the whole set."""
        from freiheit.services.groupcalc import GroupCalcService

        service = GroupCalcService(config)
        rng = random.Random(5)
        for _ in range(100):
            words = [
                FreeWord(tuple((rng.randrange(2), rng.choice((1, -1))) for _ in range(rng.randint(0, 4))))
                for _ in range(rng.randint(1, 5))
            ]
            subset = [w for w in words if rng.random() < 0.5]
            whole = service.iof_free(words, 2).value
            assert service.iof_free(subset, 2).value <= whole

    def test_size_limit(self, config):
        """More words than max_subset_size."""
        from freiheit.errors import SizeLimitError
        from freiheit.services.groupcalc import GroupCalcService

        with pytest.raises(SizeLimitError):
            GroupCalcService(config).iof_free(_words(*(["a"] * 13)))

    def test_verify_iof(self, config):
        """A serialized report re-verifies; a forged witness does not."""
        from freiheit.models.groups import IofReport
        from freiheit.services.groupcalc import GroupCalcService

        service = GroupCalcService(config)
        report = service.iof_free(_words("a", "b", "ab"))
        assert service.verify_iof(IofReport.from_dict(report.to_dict())) == []

        forged = IofReport(
            generating_set=["a", "a a"], lower=2, upper=2, witness=[0, 1], ambient_rank=1
        )
        assert service.verify_iof(forged) == ["witness words are not independent"]

    def test_report_validation(self):
        """lower <= upper and the witness size matches lower."""
        from freiheit.models.groups import IofReport

        with pytest.raises(ValueError):
            IofReport(generating_set=[], lower=2, upper=1, witness=[0, 1])
        with pytest.raises(ValueError):
            IofReport(generating_set=[], lower=1, upper=1, witness=[])
        with pytest.raises(ValueError):
            IofReport(generating_set=[], lower=0, upper=0, witness=[], method="guess")


class TestIofMatrix:
    """Tests for GroupCalcService.iof_matrix."""

    def test_schottky_generators(self, config):
        """A Schottky basis of rank 2 has iof 2."""
        from freiheit.services.freeness import schottky_example
        from freiheit.services.groupcalc import GroupCalcService

        report = GroupCalcService(config).iof_matrix(schottky_example(2))

        assert report.lower == 2
        assert report.upper == 2
        assert report.method == "certificate-based"
        assert report.assumptions

    def test_element_and_inverse(self, config):
        """{A, A^-1}: the pair satisfies a relation, upper bound 1."""
        from freiheit.services.freeness import schottky_example
        from freiheit.services.groupcalc import GroupCalcService

        a = schottky_example(1)[0]
        report = GroupCalcService(config).iof_matrix([a, a.inverse()])

        assert report.upper == 1
        assert report.lower == 1

    def test_element_and_square(self, config):
        """{A, A^2} satisfies a a B = 1."""
        from freiheit.services.freeness import schottky_example
        from freiheit.services.groupcalc import GroupCalcService

        a = schottky_example(1)[0]
        report = GroupCalcService(config).iof_matrix([a, a @ a])

        assert report.upper == 1

    def test_identity_is_excluded(self, config):
        """The identity is never part of an independent set."""
        from freiheit.models.hyperbolic import MoebiusNumeric
        from freiheit.services.freeness import schottky_example
        from freiheit.services.groupcalc import GroupCalcService

        report = GroupCalcService(config).iof_matrix(
            [MoebiusNumeric.identity()] + schottky_example(2)
        )

        assert report.upper == 2
        assert report.lower == 2
        assert 0 not in report.witness

    def test_short_loxodromics_are_excluded(self, config):
        """Two short loxodromics with different axes cannot be independent."""
        from freiheit.models.hyperbolic import MoebiusNumeric
        from freiheit.services.groupcalc import GroupCalcService

        u = np.exp(0.25)
        a = MoebiusNumeric(u, 0, 0, 1 / u)
        b = a.conjugate_by(MoebiusNumeric(np.cos(0.5), -np.sin(0.5), np.sin(0.5), np.cos(0.5)))
        report = GroupCalcService(config).iof_matrix([a, b])

        assert report.upper == 1
        assert report.lower == 1

    def test_empty_set(self, config):
        """No matrices, iof 0."""
        from freiheit.services.groupcalc import GroupCalcService

        report = GroupCalcService(config).iof_matrix([])

        assert report.value == 0

    def test_size_limit(self, config):
        """More matrices than max_subset_size."""
        from freiheit.errors import SizeLimitError
        from freiheit.services.freeness import schottky_example
        from freiheit.services.groupcalc import GroupCalcService

        config.groups.max_subset_size = 3

        with pytest.raises(SizeLimitError):
            GroupCalcService(config).iof_matrix(schottky_example(4))

    def test_verify_certificate_based(self, config):
        """The witness subset is re-certified from the report."""
        from freiheit.models.groups import IofReport
        from freiheit.services.freeness import schottky_example
        from freiheit.services.groupcalc import GroupCalcService

        service = GroupCalcService(config)
        report = service.iof_matrix(schottky_example(2))

        assert service.verify_iof(IofReport.from_dict(report.to_dict())) == []


class TestMiofUpperBound:
    """Tests for GroupCalcService.miof_upper_bound."""

    def test_depth_zero(self, config):
        """Only the standard basis."""
        from freiheit.services.groupcalc import GroupCalcService

        bound = GroupCalcService(config).miof_upper_bound(3, 0)

        assert bound.upper == 3
        assert bound.generating_sets_checked == 1
        assert bound.witness == ["a", "b", "c"]

    def test_depth_one_rank_two(self, config):
        """Ten distinct neighbours, all bases of F_2."""
        from freiheit.services.groupcalc import GroupCalcService

        bound = GroupCalcService(config).miof_upper_bound(2, 1)

        assert bound.generating_sets_checked == 11
        assert bound.upper == 2
        assert bound.lower == 2
        assert bound.to_dict()["verdict"] == "consistent"

    @pytest.mark.parametrize("rank,depth", [(1, 4), (2, 3)])
    def test_never_drops_below_rank(self, config, rank, depth):
        """Bases stay bases under Nielsen moves, so the bound stays at k."""
        from freiheit.services.groupcalc import GroupCalcService

        bound = GroupCalcService(config).miof_upper_bound(rank, depth)

        assert bound.upper == rank
        assert bound.lower == rank

    def test_depth_limit(self, config):
        """Depth above max_nielsen_depth."""
        from freiheit.errors import SizeLimitError
        from freiheit.services.groupcalc import GroupCalcService

        with pytest.raises(SizeLimitError):
            GroupCalcService(config).miof_upper_bound(2, 5)

    def test_generating_set_limit(self, config):
        """Rank 3 at depth 4 would visit more than 200000 sets."""
        from freiheit.errors import SizeLimitError
        from freiheit.services.groupcalc import GroupCalcService

        with pytest.raises(SizeLimitError):
            GroupCalcService(config).miof_upper_bound(3, 4)

    def test_invalid_arguments(self, config):
        """Rank must be positive, depth non-negative."""
        from freiheit.services.groupcalc import GroupCalcService

        service = GroupCalcService(config)
        with pytest.raises(ValueError):
            service.miof_upper_bound(0, 1)
        with pytest.raises(ValueError):
            service.miof_upper_bound(2, -1)

    def test_verify_round_trip(self, config):
        """A serialized bound re-verifies from its witness."""
        from freiheit.models.groups import MiofBound
        from freiheit.services.groupcalc import GroupCalcService

        service = GroupCalcService(config)
        bound = service.miof_upper_bound(2, 2)

        assert service.verify_miof(MiofBound.from_dict(bound.to_dict())) == []

    @pytest.mark.parametrize(
        "field,value,problem",
        [
            ("lower", 1, "lower bound is 2, report says 1"),
            ("upper", 1, "iof of the witness is 2, report says 1"),
            ("verdict", "counterexample", "verdict is consistent, report says counterexample"),
        ],
    )
    def test_forged_field(self, config, field, value, problem):
        """Each recorded number and the verdict are recomputed."""
        from freiheit.models.groups import MiofBound
        from freiheit.services.groupcalc import GroupCalcService

        service = GroupCalcService(config)
        data = service.miof_upper_bound(2, 1).to_dict()
        data[field] = value

        assert service.verify_miof(MiofBound.from_dict(data)) == [problem]

    def test_forged_witness(self, config):
        """A witness that does not generate F_k is rejected."""
        from freiheit.models.groups import MiofBound
        from freiheit.services.groupcalc import GroupCalcService

        service = GroupCalcService(config)
        data = service.miof_upper_bound(2, 1).to_dict()
        data["witness"] = ["a", "bb"]

        assert "witness does not generate F_2" in service.verify_miof(MiofBound.from_dict(data))


class TestTheoremB:
    """Tests for GroupCalcService.theorem_b_check."""

    def test_free_group_with_words(self, config):
        """F_3 from a redundant generating set: chibar 2 < iof 3."""
        from freiheit.services.groupcalc import GroupCalcService

        service = GroupCalcService(config)
        evidence = service.iof_free(_words("a", "b", "c", "ab", "bcA", "1"), 3)
        report = service.theorem_b_check(GroupDescriptor.free(3), evidence)

        assert report.verdict == "consistent"
        assert report.chibar == 2
        assert report.deficiency == 3
        assert "chibar(G) = 2 < 3" in report.verified
        assert any("never asserted equal" in n for n in report.notes)

    def test_words_generating_another_group(self, config):
        """Words generating F_2 are no evidence for F_3."""
        from freiheit.errors import MismatchError
        from freiheit.services.groupcalc import GroupCalcService

        service = GroupCalcService(config)
        evidence = service.iof_free(_words("a", "b"), 3)

        with pytest.raises(MismatchError):
            service.theorem_b_check(GroupDescriptor.free(3), evidence)

    def test_surface_group_from_words(self, config):
        """Words in a free group never generate a surface group."""
        from freiheit.errors import MismatchError
        from freiheit.services.groupcalc import GroupCalcService

        service = GroupCalcService(config)
        evidence = service.iof_free(_words("a", "b"), 2)

        with pytest.raises(MismatchError):
            service.theorem_b_check(GroupDescriptor.surface(2), evidence)

    def test_counterexample_verdict(self, config):
        """chibar at or above the upper bound is reported, not raised."""
        from freiheit.models.groups import IofReport
        from freiheit.services.groupcalc import GroupCalcService

        evidence = IofReport(
            generating_set=[], lower=0, upper=1, witness=[], method="certificate-based"
        )
        report = GroupCalcService(config).theorem_b_check(GroupDescriptor.free(3), evidence)

        assert report.verdict == "counterexample"
        assert not report.consistent

    def test_inconclusive_verdict(self, config):
        """Bounds that straddle chibar decide nothing."""
        from freiheit.models.groups import IofReport
        from freiheit.services.groupcalc import GroupCalcService

        evidence = IofReport(
            generating_set=[], lower=0, upper=2, witness=[], method="certificate-based"
        )
        report = GroupCalcService(config).theorem_b_check(GroupDescriptor.cyclic(), evidence)

        assert report.verdict == "inconclusive"

    def test_schottky_certificate_of_wrong_rank(self, config):
        """A certified rank-2 Schottky basis is not a generating set of F_3."""
        from freiheit.errors import MismatchError
        from freiheit.services.freeness import schottky_example
        from freiheit.services.groupcalc import GroupCalcService

        service = GroupCalcService(config)
        mats = schottky_example(2)
        evidence = service.iof_matrix(mats)
        certificate = service.freeness.certify_schottky_with_retry(mats)

        with pytest.raises(MismatchError):
            service.theorem_b_check(GroupDescriptor.free(3), evidence, certificate)

    @pytest.mark.slow
    def test_shipped_examples_are_consistent(self, config):
        """Every shipped example: chibar < iof lower bound and chibar + 1 = deficiency."""
        from freiheit.services.catalog import shipped_examples
        from freiheit.services.groupcalc import GroupCalcService, chibar, deficiency

        service = GroupCalcService(config)
        violations = []
        checked = 0
        for example in shipped_examples():
            evidence_sets = []
            if example.words:
                evidence_sets.append((service.iof_free(example.words), None))
            if example.matrices:
                certificate = service.freeness.certify_schottky_with_retry(example.matrices)
                evidence_sets.append((service.iof_matrix(example.matrices), certificate))
            for evidence, certificate in evidence_sets:
                checked += 1
                report = service.theorem_b_check(example.group, evidence, certificate)
                if report.verdict != "consistent" or not chibar(example.group) < evidence.lower:
                    violations.append((example.name, report.to_dict()))
                if chibar(example.group) + 1 != deficiency(example.group):
                    violations.append((example.name, "deficiency"))

        assert checked >= 12
        assert violations == []


class TestQuotientCheck:
    """Tests for GroupCalcService.iof_quotient_check."""

    def test_killing_a_generator(self, config):
        """Killing b in (a, b, ab) leaves (a, 1, a)."""
        from freiheit.services.groupcalc import GroupCalcService

        report = GroupCalcService(config).iof_quotient_check(_words("a", "b", "ab"), [1])

        assert report.images == ["a", "1", "a"]
        assert report.iof_before == 2
        assert report.iof_after == 1
        assert report.holds
        assert report.to_dict()["corollary"].startswith("miof(eta(G)) <= miof(G)")

    @pytest.mark.parametrize(
        "texts,killed,before,after",
        [
            (("a", "b"), [1], 2, 1),
            (("ab", "ba"), [1], 2, 1),
            (("a", "b"), [], 2, 2),
        ],
    )
    def test_small_cases(self, config, texts, killed, before, after):
        """Hand-checked quotients of F_2."""
        from freiheit.services.groupcalc import GroupCalcService

        report = GroupCalcService(config).iof_quotient_check(_words(*texts), killed, 2)

        assert (report.iof_before, report.iof_after) == (before, after)
        assert report.verdict == "consistent"

    @pytest.mark.slow
    def test_monotone_on_random_sets(self, config):
        """iof(eta(D)) <= iof(D) over 1000 random (D, eta)."""
        from freiheit.services.groupcalc import GroupCalcService

        service = GroupCalcService(config)
        rng = random.Random(77)
        violations = []
        for _ in range(1000):
            words = [
                FreeWord(tuple((rng.randrange(3), rng.choice((1, -1))) for _ in range(rng.randint(0, 5))))
                for _ in range(rng.randint(1, 5))
            ]
            killed = [g for g in range(3) if rng.random() < 0.4]
            report = service.iof_quotient_check(words, killed, 3)
            if not report.holds:
                violations.append(report.to_dict())

        assert violations == []
