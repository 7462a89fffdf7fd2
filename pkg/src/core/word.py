"""
Words - freely reduced words over named generator alphabets
"""

from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple

# Characters reserved by the word grammar and the presentation file format
RESERVED_CHARS = frozenset("^()[],*;=#")


class AlphabetMismatchError(ValueError):
    """Raised when words over different alphabets are combined"""


class UnknownGeneratorError(ValueError):
    """Raised when a generator name is not part of an alphabet"""


@dataclass(frozen=True)
class Generator:
    """A named generator symbol"""
    name: str

    def __post_init__(self):
        if not self.name:
            raise ValueError("Generator name must be nonempty")
        if any(ch.isspace() for ch in self.name):
            raise ValueError(f"Generator name '{self.name}' contains whitespace")
        if self.name.isdigit():
            raise ValueError(f"Generator name '{self.name}' reads as an integer")
        bad = RESERVED_CHARS.intersection(self.name)
        if bad:
            raise ValueError(
                f"Generator name '{self.name}' contains reserved characters: {''.join(sorted(bad))}"
            )

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Alphabet:
    """Ordered set of generators; equality is by the name sequence"""
    names: Tuple[str, ...]
    _index: Dict[str, int] = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        index = {}
        for i, name in enumerate(names):
            Generator(name)
            if name in index:
                raise ValueError(f"Duplicate generator '{name}' in alphabet")
            index[name] = i
        object.__setattr__(self, "_index", index)

    @classmethod
    def of(cls, names: Iterable[str]) -> "Alphabet":
        return cls(tuple(names))

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __contains__(self, name: object) -> bool:
        return name in self._index

    @property
    def generators(self) -> List[Generator]:
        return [Generator(name) for name in self.names]

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownGeneratorError(f"Unknown generator '{name}'") from None

    def letter(self, name: str, sign: int = 1) -> int:
        """Encode a generator occurrence as a signed, 1-based letter"""
        if sign not in (1, -1):
            raise ValueError(f"Letter sign must be +1 or -1, got {sign}")
        return sign * (self.index(name) + 1)

    def name_of(self, letter: int) -> str:
        return self.names[abs(letter) - 1]

    def identity(self) -> "Word":
        return Word(self, ())

    def gen(self, name: str) -> "Word":
        return Word(self, (self.letter(name),))

    def word(self, pairs: Iterable[Tuple[str, int]]) -> "Word":
        """Build a word from (name, exponent) pairs; exponents are expanded"""
        letters: List[int] = []
        for name, exponent in pairs:
            letter = self.letter(name)
            step = letter if exponent > 0 else -letter
            letters.extend([step] * abs(exponent))
        return Word(self, letters)


def reduce_letters(raw: Iterable[int]) -> Tuple[int, ...]:
    """Free reduction of a signed letter sequence"""
    stack: List[int] = []
    for letter in raw:
        if stack and stack[-1] == -letter:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


@dataclass(frozen=True)
class Word:
    """Freely reduced word; letters are signed 1-based generator indices"""
    alphabet: Alphabet
    letters: Tuple[int, ...] = ()

    def __post_init__(self):
        n = len(self.alphabet)
        for letter in self.letters:
            if letter == 0 or abs(letter) > n:
                raise UnknownGeneratorError(f"Letter {letter} outside alphabet of size {n}")
        object.__setattr__(self, "letters", reduce_letters(self.letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Tuple[Generator, int]]:
        for letter in self.letters:
            yield Generator(self.alphabet.name_of(letter)), (1 if letter > 0 else -1)

    def __mul__(self, other: "Word") -> "Word":
        return concat(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def __pow__(self, n: int) -> "Word":
        return power(self, n)

    def __str__(self) -> str:
        from .word_parser import print_word
        return print_word(self)

    def is_identity(self) -> bool:
        return not self.letters

    def uses(self, name: str) -> bool:
        if name not in self.alphabet:
            return False
        i = self.alphabet.index(name) + 1
        return i in self.letters or -i in self.letters

    def cyclically_reduced(self) -> "Word":
        letters = list(self.letters)
        while len(letters) > 1 and letters[0] == -letters[-1]:
            letters = letters[1:-1]
        return Word(self.alphabet, letters)

    def substitute(self, images: Mapping[str, "Word"], target: Alphabet) -> "Word":
        """Apply the homomorphism generator -> images[generator] of free groups"""
        out: List[int] = []
        for letter in self.letters:
            name = self.alphabet.name_of(letter)
            try:
                image = images[name]
            except KeyError:
                raise UnknownGeneratorError(f"No image for generator '{name}'") from None
            if image.alphabet != target:
                raise AlphabetMismatchError(f"Image of '{name}' is not over the target alphabet")
            out.extend(image.letters if letter > 0 else invert(image).letters)
        return Word(target, out)

    def relabel(self, target: Alphabet, rename: Mapping[str, str] = None) -> "Word":
        """Rewrite the same letters over another alphabet, optionally renaming"""
        rename = rename or {}
        out = []
        for letter in self.letters:
            name = self.alphabet.name_of(letter)
            out.append(target.letter(rename.get(name, name), 1 if letter > 0 else -1))
        return Word(target, out)


def _check_same(w1: Word, w2: Word):
    if w1.alphabet != w2.alphabet:
        raise AlphabetMismatchError("Words are over different alphabets")


def reduce(alphabet: Alphabet, raw: Sequence[int]) -> Word:
    return Word(alphabet, tuple(raw))


def concat(w1: Word, w2: Word) -> Word:
    _check_same(w1, w2)
    return Word(w1.alphabet, w1.letters + w2.letters)


def invert(w: Word) -> Word:
    return Word(w.alphabet, tuple(-letter for letter in reversed(w.letters)))


def power(w: Word, n: int) -> Word:
    base = w if n >= 0 else invert(w)
    return Word(w.alphabet, base.letters * abs(n))


def commutator(w1: Word, w2: Word) -> Word:
    """[a, b] = a b a^-1 b^-1"""
    _check_same(w1, w2)
    return Word(w1.alphabet, w1.letters + w2.letters + invert(w1).letters + invert(w2).letters)


def exponent_sum(w: Word, g) -> int:
    name = g.name if isinstance(g, Generator) else g
    if name not in w.alphabet:
        return 0
    i = w.alphabet.index(name) + 1
    return sum(1 if letter == i else -1 for letter in w.letters if abs(letter) == i)
