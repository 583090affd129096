"""
Tests for free words and Stallings folding.
"""

import random

import pytest

from freiheit.models.words import FreeWord


def _is_nielsen_reduced(basis):
    """
    N1 and N2 over the words and their inverses.

    N1: |uv| >= |u|, |v| whenever uv != 1.
    N2: |uvw| > |u| - |v| + |w| whenever uv != 1 and vw != 1.
    A set of non-trivial words satisfying both is a free basis.
    """
    elements = basis + [w ** -1 for w in basis]
    for u in elements:
        for v in elements:
            uv = u * v
            if uv.is_identity():
                continue
            if len(uv) < max(len(u), len(v)):
                return False
            for w in elements:
                if (v * w).is_identity():
                    continue
                if len(uv * w) <= len(u) - len(v) + len(w):
                    return False
    return True


def _nielsen_rank(words):
    """
    Rank of <words> by length-reducing Nielsen moves, or None.

    This is a partial oracle: moves u_i -> u_i u_j^e or u_j^e u_i are applied
    while they shorten u_i, and the count of remaining words is returned only
    when the result is Nielsen reduced. Sets that need length-preserving
    moves (such as ab, ba, aB) give None.
    """
    basis = [w for w in words if not w.is_identity()]
    changed = True
    while changed:
        changed = False
        for i in range(len(basis)):
            for j in range(len(basis)):
                if i == j:
                    continue
                for e in (1, -1):
                    y = basis[j] ** e
                    for candidate in (basis[i] * y, y * basis[i]):
                        if len(candidate) < len(basis[i]):
                            basis[i] = candidate
                            changed = True
                            break
                    if changed:
                        break
                if changed:
                    break
            if changed:
                break
        basis = [w for w in basis if not w.is_identity()]
    return len(basis) if _is_nielsen_reduced(basis) else None


def _random_word(rng, rank, max_length):
    letters = []
    for _ in range(rng.randint(0, max_length)):
        letters.append((rng.randrange(rank), rng.choice((1, -1))))
    return FreeWord(tuple(letters))


class TestFreeWord:
    """Tests for FreeWord."""

    def test_parse_and_reduce(self):
        """Adjacent inverse letters cancel."""
        w = FreeWord.parse("a b B A c")

        assert w == FreeWord.parse("c")
        assert len(w) == 1
        assert FreeWord.parse("1").is_identity()
        assert FreeWord.parse("").is_identity()

    def test_render(self):
        """Lowercase generators, uppercase inverses."""
        assert FreeWord.parse("abA").render() == "a b A"
        assert FreeWord.identity().render() == "1"

    def test_invalid_letter(self):
        """Digits other than 1 are rejected."""
        from freiheit.errors import ParseError

        with pytest.raises(ParseError):
            FreeWord.parse("a2")

    def test_group_operations(self):
        """Products, inverses and powers."""
        a, b = FreeWord.basis(2)

        assert (a * b) * (a * b).inverse() == FreeWord.identity()
        assert (a * b) ** -1 == b.inverse() * a.inverse()
        assert len(a ** 5) == 5

    def test_kill(self):
        """Killing b sends a b A to the identity."""
        w = FreeWord.parse("abA")

        assert w.kill([1]).is_identity()
        assert w.kill([0]) == FreeWord.parse("b")

    def test_ambient_rank(self):
        """Smallest n containing the words."""
        from freiheit.models.words import ambient_rank

        assert ambient_rank([FreeWord.parse("a"), FreeWord.parse("C")]) == 3
        assert ambient_rank([FreeWord.identity()]) == 0


class TestFold:
    """Tests for fold and subgroup_rank."""

    def test_basis_gives_bouquet(self):
        """The standard basis folds to one vertex with n loops."""
        from freiheit.services.stallings import fold

        graph = fold(FreeWord.basis(3), 3)

        assert graph.vertex_count == 1
        assert graph.rank == 3
        assert graph.is_folded()
        assert graph.is_core()

    @pytest.mark.parametrize(
        "words,rank",
        [
            (["a", "a"], 1),
            (["aa", "aaa"], 1),
            (["ab", "ba"], 2),
            (["a", "b", "ab"], 2),
            (["abA"], 1),
            (["aa", "bb", "ab"], 3),
            (["1", "1"], 0),
            (["a", "bab", "BAB"], 2),
        ],
    )
    def test_known_ranks(self, words, rank):
        """Hand-checked subgroup ranks."""
        from freiheit.services.stallings import subgroup_rank

        assert subgroup_rank([FreeWord.parse(w) for w in words]) == rank

    def test_membership(self):
        """A folded graph decides membership."""
        from freiheit.services.stallings import fold

        graph = fold([FreeWord.parse("aa"), FreeWord.parse("bab")], 2)

        assert graph.contains(FreeWord.parse("aaaa"))
        assert graph.contains(FreeWord.parse("aabab"))
        assert not graph.contains(FreeWord.parse("a"))
        assert not graph.contains(FreeWord.parse("b"))

    def test_conjugate_keeps_basepoint_hair(self):
        """<a b A> has a hair at the basepoint and rank 1."""
        from freiheit.services.stallings import fold

        graph = fold([FreeWord.parse("abA")], 2)

        assert graph.rank == 1
        assert graph.degree(0) == 1
        assert graph.contains(FreeWord.parse("abbA"))

    def test_words_outside_ambient_group(self):
        """Words in c are not in F_2."""
        from freiheit.services.stallings import fold

        with pytest.raises(ValueError):
            fold([FreeWord.parse("c")], 2)

    def test_are_independent(self):
        """Independence means rank equals the number of words."""
        from freiheit.services.stallings import are_independent

        assert are_independent([FreeWord.parse("ab"), FreeWord.parse("aB")])
        assert not are_independent([FreeWord.parse("a"), FreeWord.parse("aa")])
        assert not are_independent([FreeWord.parse("a"), FreeWord.identity()])

    def test_deterministic(self):
        """Same words, same graph."""
        from freiheit.services.stallings import fold

        words = [FreeWord.parse(w) for w in ("abA", "bbaB", "aab")]

        assert fold(words).to_dict() == fold(words).to_dict()

    @pytest.mark.slow
    def test_agrees_with_nielsen_reduction(self):
        """1000 random subsets of at most 4 words of length <= 6 in F_2."""
        from freiheit.services.stallings import fold, subgroup_rank

        rng = random.Random(1000)
        mismatches = []
        checked = 0
        for _ in range(1000):
            words = [_random_word(rng, 2, 6) for _ in range(rng.randint(1, 4))]
            graph = fold(words, 2)
            assert graph.is_folded()
            expected = _nielsen_rank(words)
            if expected is None:
                continue
            checked += 1
            if subgroup_rank(words, 2) != expected:
                mismatches.append(([w.render() for w in words], expected))

        assert mismatches == []
        assert checked >= 150
