"""
Tests for Todd-Coxeter coset enumeration
"""

import pytest

from src.core.constructions import gn, higman, higman_to_gn
from src.core.coset_table import (
    CosetTable,
    EnumerationStatus,
    Strategy,
    enumerate_cosets,
    letter_column,
)
from src.core.presentation import Presentation, add_relators, check_hom_certificate, one_step_certificates
from src.core.word import Alphabet
from src.core.word_parser import parse_word


def make(gens, rels):
    alphabet = Alphabet.of(gens)
    return Presentation("P", alphabet, tuple(parse_word(r, alphabet) for r in rels))


STRATEGIES = [Strategy.HLT, Strategy.FELSCH]


class TestCosetTable:
    """Test table primitives"""

    def test_letter_columns(self):
        """Test generator/inverse column layout"""
        assert [letter_column(x) for x in (1, -1, 2, -2)] == [0, 1, 2, 3]

    def test_rejects_bad_limit(self):
        """Test max_cosets validation"""
        with pytest.raises(ValueError):
            CosetTable(make(("a",), ("a^2",)), max_cosets=0)

    def test_compaction_after_coincidences(self):
        """Test that the final table is renumbered to the live cosets"""
        result = enumerate_cosets(make(("a",), ("a^6", "a^4")))
        assert result.index == 2
        assert result.cosets_defined > 2
        assert len(result.table.table) == 2
        assert result.table.omega == [0, 1]


class TestEnumerate:
    """Test enumerate_cosets"""

    @pytest.mark.parametrize("strategy", STRATEGIES)
    def test_cyclic_group(self, strategy):
        """Test < a | a^5 > has index 5 over the trivial subgroup"""
        result = enumerate_cosets(make(("a",), ("a^5",)), [], 100, strategy)
        assert result.status == EnumerationStatus.INDEX
        assert result.index == 5
        assert result.strategy == strategy

    @pytest.mark.parametrize("strategy", STRATEGIES)
    def test_symmetric_group(self, strategy):
        """Test S_3 and its subgroup of order 2"""
        p = make(("a", "b"), ("a^2", "b^3", "(a b)^2"))
        assert enumerate_cosets(p, strategy=strategy).index == 6
        assert enumerate_cosets(p, [p.gen("a")], strategy=strategy).index == 3
        assert enumerate_cosets(p, [p.gen("b")], strategy=strategy).index == 2

    def test_trivial_by_relators(self):
        """Test a presentation of the trivial group"""
        p = make(("a", "b"), ("a b^-1", "a^2 b^-3"))
        assert enumerate_cosets(p).index == 1

    def test_limit_exceeded(self):
        """Test that an infinite group hits the coset limit"""
        result = enumerate_cosets(make(("a", "b"), ("[a, b]",)), max_cosets=50)
        assert result.status == EnumerationStatus.LIMIT_EXCEEDED
        assert result.index is None
        assert not result.is_index

    def test_string_strategy(self):
        """Test that strategies may be given by value"""
        assert enumerate_cosets(make(("a",), ("a^3",)), strategy="felsch").index == 3

    def test_representatives(self):
        """Test breadth-first representative words"""
        p = make(("a", "b"), ("a^2", "b^3", "(a b)^2"))
        result = enumerate_cosets(p)
        reps = result.table.representatives()
        assert len(reps) == 6
        assert reps[0].is_identity()
        assert len({w.letters for w in reps.values()}) == 6
        # each representative leads from coset 0 to its own coset
        for alpha, w in reps.items():
            f = 0
            for letter in w.letters:
                f = result.table.table[f][letter_column(letter)]
            assert f == alpha

    def test_dump(self):
        """Test the text dump of a complete table"""
        result = enumerate_cosets(make(("a",), ("a^3",)))
        lines = result.table.dump().splitlines()
        assert len(lines) == 3
        assert lines[0].startswith("0: ")
        assert "-" not in result.table.dump()

    def test_subgroup_alphabet_mismatch(self):
        """Test subgroup words over a foreign alphabet"""
        other = Alphabet.of(("z",))
        with pytest.raises(ValueError):
            enumerate_cosets(make(("a",), ("a^3",)), [other.gen("z")])

    @pytest.mark.parametrize("n", [1, 2])
    def test_small_higman_groups(self, n):
        """Test Hig_1 and Hig_2 are trivial"""
        assert enumerate_cosets(higman(n), [], 1000000).index == 1

    @pytest.mark.slow
    def test_higman_3_trivial(self):
        """Test Hig_3 is trivial"""
        assert enumerate_cosets(higman(3), [], 1000000).index == 1

    @pytest.mark.slow
    @pytest.mark.parametrize("k", range(2, 21))
    def test_finite_order_collapse(self, k):
        """Test that a_0 of finite order collapses Hig_4"""
        p = higman(4)
        result = enumerate_cosets(add_relators(p, [p.gen("a@0") ** k]), [], 10000000)
        assert result.index == 1

    @pytest.mark.slow
    @pytest.mark.parametrize("n", range(8, 13))
    def test_gn_self_destruct(self, n):
        """Test that killing y_0 kills G_n"""
        p = gn(n)
        result = enumerate_cosets(add_relators(p, [p.gen("y@0")]), [], 10000000)
        assert result.index == 1

    @pytest.mark.slow
    def test_higman_4_limit(self):
        """Test Hig_4 exceeds a 10^5 coset limit"""
        result = enumerate_cosets(higman(4), [], 100000)
        assert result.status == EnumerationStatus.LIMIT_EXCEEDED
        assert result.max_live <= 100000

    @pytest.mark.slow
    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_small_gn_trivial(self, m):
        """Test G_m is trivial under at least one strategy"""
        p = gn(m)
        assert any(enumerate_cosets(p, [], 10000000, s).index == 1 for s in STRATEGIES)

    @pytest.mark.slow
    @pytest.mark.parametrize("m", [4, 6])
    def test_gn_trivial_through_higman(self, m):
        """Test G_m dies with y_0 and Hig_(m/2) -> G_m is certified"""
        p = gn(m)
        assert enumerate_cosets(add_relators(p, [p.gen("y@0")]), [], 10000000).index == 1
        mapping = higman_to_gn(m // 2, m)
        assert check_hom_certificate(mapping, one_step_certificates(mapping))


FINITE_CASES = [
    # (generators, relators, subgroup generators, index)
    (("a",), ("a^5",), (), 5),
    (("a", "b"), ("a^2", "b^3", "(a b)^2"), ("a",), 3),
    (("a", "b"), ("a^2", "b^3", "(a b)^3"), (), 12),
    (("a", "b"), ("a^2", "b^3", "(a b)^3"), ("b",), 4),
    (("a", "b"), ("a^2", "b^3", "(a b)^5"), ("a",), 30),
    (("a", "b"), ("a^2", "b^3", "(a b)^5"), ("b",), 20),
    (("a", "b"), ("a^4", "a^2 b^-2", "b a b^-1 a"), (), 8),
    (("a", "b"), ("a^4", "a^2 b^-2", "b a b^-1 a"), ("a",), 2),
    (("a", "b"), ("a b^-1", "a^2 b^-3"), (), 1),
]


def finished_indices(p, max_cosets):
    """Indices from the strategies that closed their table"""
    results = [enumerate_cosets(p, [], max_cosets, s) for s in STRATEGIES]
    return {r.index for r in results if r.is_index}


class TestStrategiesAgree:
    """Test HLT and Felsch report the same index"""

    @pytest.mark.parametrize("gens,rels,subgroup,index", FINITE_CASES)
    def test_finite_groups(self, gens, rels, subgroup, index):
        """Test both strategies on finite groups and subgroups"""
        p = make(gens, rels)
        h = [parse_word(w, p.alphabet) for w in subgroup]
        assert [enumerate_cosets(p, h, 100000, s).index for s in STRATEGIES] == [index, index]

    @pytest.mark.parametrize("n", [1, 2])
    def test_small_higman(self, n):
        """Test both strategies collapse Hig_1 and Hig_2"""
        assert [enumerate_cosets(higman(n), [], 1000000, s).index for s in STRATEGIES] == [1, 1]

    @pytest.mark.slow
    @pytest.mark.parametrize("n", [1, 2])
    def test_small_gn(self, n):
        """Test both strategies agree on G_1 and G_2"""
        assert finished_indices(gn(n), 10000000) == {1}

    @pytest.mark.slow
    def test_higman_collapse(self):
        """Test both strategies agree on Hig_4 with a_0^3"""
        p = higman(4)
        q = add_relators(p, [p.gen("a@0") ** 3])
        assert finished_indices(q, 10000000) == {1}
