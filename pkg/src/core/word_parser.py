"""
Word Parser - text grammar for words

    word := term+            (terms separated by whitespace or an optional '*')
    term := atom ('^' int)?
    atom := gen | '1' | '(' word ')' | '[' word ',' word ']'

Generator names are matched longest-first against the alphabet, so ``ab``
reads as ``a b`` unless ``ab`` is itself a generator. ``1`` is the identity.
Commutators follow [a, b] = a b a^-1 b^-1.
"""

from typing import List

from .word import Alphabet, Word, UnknownGeneratorError, commutator, power

# Largest exponent accepted after '^'
MAX_EXPONENT = 1_000_000


class WordSyntaxError(ValueError):
    """Syntax error in a word, with the 0-based offending position"""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.message = message
        self.position = position


class _WordParser:
    def __init__(self, text: str, alphabet: Alphabet):
        self.text = text
        self.pos = 0
        self.alphabet = alphabet
        self.names = sorted(alphabet.names, key=len, reverse=True)

    def parse(self) -> Word:
        word = self._word(stop=())
        self._skip()
        if self.pos != len(self.text):
            raise WordSyntaxError(f"Unexpected '{self.text[self.pos]}'", self.pos)
        return word

    def _skip(self):
        while self.pos < len(self.text) and (self.text[self.pos].isspace() or self.text[self.pos] == "*"):
            self.pos += 1

    def _peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _word(self, stop) -> Word:
        result = self.alphabet.identity()
        terms = 0
        while True:
            ch = self._peek()
            if ch == "" or ch in stop:
                break
            result = result * self._term()
            terms += 1
        if terms == 0:
            raise WordSyntaxError("Expected a word", self.pos)
        return result

    def _term(self) -> Word:
        atom = self._atom()
        if self.pos < len(self.text) and self.text[self.pos] == "^":
            self.pos += 1
            start = self.pos
            n = self._int()
            if abs(n) > MAX_EXPONENT:
                raise WordSyntaxError(f"Exponent {n} exceeds {MAX_EXPONENT}", start)
            return power(atom, n)
        return atom

    def _int(self) -> int:
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        digits_start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits_start:
            raise WordSyntaxError("Expected an integer exponent", start)
        return int(self.text[start:self.pos])

    def _expect(self, ch: str):
        if self._peek() != ch:
            raise WordSyntaxError(f"Expected '{ch}'", self.pos)
        self.pos += 1

    def _atom(self) -> Word:
        ch = self._peek()
        if ch == "(":
            self.pos += 1
            inner = self._word(stop=(")",))
            self._expect(")")
            return inner
        if ch == "[":
            self.pos += 1
            left = self._word(stop=(",",))
            self._expect(",")
            right = self._word(stop=("]",))
            self._expect("]")
            return commutator(left, right)
        for name in self.names:
            if self.text.startswith(name, self.pos):
                self.pos += len(name)
                return self.alphabet.gen(name)
        if ch == "1":
            self.pos += 1
            return self.alphabet.identity()
        if ch in ")],^":
            raise WordSyntaxError(f"Unexpected '{ch}'", self.pos)
        end = self.pos
        while end < len(self.text) and not self.text[end].isspace() and self.text[end] not in "^()[],*":
            end += 1
        raise UnknownGeneratorError(
            f"Unknown generator '{self.text[self.pos:end]}' at position {self.pos}"
        )


def parse_word(text: str, alphabet: Alphabet) -> Word:
    """Parse text into a freely reduced word over ``alphabet``"""
    return _WordParser(text, alphabet).parse()


def print_word(w: Word) -> str:
    """Render a word with runs of a letter collapsed into exponents"""
    if w.is_identity():
        return "1"
    parts: List[str] = []
    letters = w.letters
    i = 0
    while i < len(letters):
        j = i
        while j < len(letters) and letters[j] == letters[i]:
            j += 1
        name = w.alphabet.name_of(letters[i])
        exponent = (j - i) * (1 if letters[i] > 0 else -1)
        parts.append(name if exponent == 1 else f"{name}^{exponent}")
        i = j
    return " ".join(parts)
