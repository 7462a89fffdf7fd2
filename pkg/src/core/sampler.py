"""
Sampler - seeded random words from numpy's PCG64 bit generator
"""

from typing import List, Sequence

import numpy as np

from .word import Alphabet, Word


class WordSampler:
    """Reproducible random words; the same seed yields the same stream"""

    def __init__(self, seed: int):
        self.seed = seed
        self.rng = np.random.Generator(np.random.PCG64(seed))

    def integer(self, low: int, high: int) -> int:
        """Uniform integer in [low, high]"""
        return int(self.rng.integers(low, high, endpoint=True))

    def sign(self) -> int:
        return 1 if self.integer(0, 1) else -1

    def letters(self, alphabet: Alphabet, length: int) -> List[int]:
        n = len(alphabet)
        picks = self.rng.integers(0, 2 * n, size=length)
        return [int(k) // 2 + 1 if k % 2 == 0 else -(int(k) // 2 + 1) for k in picks]

    def word(self, alphabet: Alphabet, max_len: int) -> Word:
        """Free reduction of a uniformly random letter string of length 0..max_len"""
        return Word(alphabet, self.letters(alphabet, self.integer(0, max_len)))

    def choice(self, items: Sequence):
        return items[self.integer(0, len(items) - 1)]
