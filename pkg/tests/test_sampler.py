"""
Tests for seeded word sampling
"""

from src.core.sampler import WordSampler
from src.core.word import Alphabet


class TestWordSampler:
    """Test WordSampler"""

    def test_same_seed_same_stream(self):
        """Test reproducibility from the seed"""
        alphabet = Alphabet.of(("a", "b", "c"))
        s1, s2 = WordSampler(42), WordSampler(42)
        assert [s1.word(alphabet, 20) for _ in range(20)] == [s2.word(alphabet, 20) for _ in range(20)]

    def test_different_seeds_differ(self):
        """Test that another seed gives another stream"""
        alphabet = Alphabet.of(("a", "b"))
        s1, s2 = WordSampler(1), WordSampler(2)
        w1 = [s1.word(alphabet, 30) for _ in range(5)]
        w2 = [s2.word(alphabet, 30) for _ in range(5)]
        assert w1 != w2

    def test_ranges(self):
        """Test inclusive integer bounds, signs and word lengths"""
        sampler = WordSampler(3)
        alphabet = Alphabet.of(("a",))
        values = {sampler.integer(-2, 2) for _ in range(200)}
        assert values == {-2, -1, 0, 1, 2}
        assert {sampler.sign() for _ in range(50)} == {1, -1}
        assert all(len(sampler.word(alphabet, 6)) <= 6 for _ in range(100))
        assert all(abs(x) == 1 for x in sampler.letters(alphabet, 10))

    def test_choice(self):
        """Test choice picks from the sequence"""
        sampler = WordSampler(5)
        items = ["p", "q", "r"]
        assert {sampler.choice(items) for _ in range(60)} == set(items)
