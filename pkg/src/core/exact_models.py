"""
Exact Models - concrete groups that decide their own word problem

Each model names its generators and evaluates words exactly: dyadic affine
maps for BS(1,2), integer triples for Heisenberg groups, and translation /
scaling / free-word triples for L = Z[1/2]^2 semidirect (Z x F_2).
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Dict, Mapping, Optional, Sequence, Tuple

from sympy import Matrix, eye

from .presentation import Presentation
from .word import Alphabet, UnknownGeneratorError, Word, invert


class ModelError(ValueError):
    """Raised for assignments that do not fit a model"""


@dataclass(frozen=True, order=False)
class Dyadic:
    """numerator / 2^exponent, kept canonical: odd numerator, or 0 with exponent 0"""
    numerator: int = 0
    exponent: int = 0

    def __post_init__(self):
        num, exp = int(self.numerator), int(self.exponent)
        if num == 0:
            exp = 0
        else:
            twos = (num & -num).bit_length() - 1
            num >>= twos
            exp -= twos
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "exponent", exp)

    @classmethod
    def of(cls, value) -> "Dyadic":
        return value if isinstance(value, Dyadic) else cls(int(value), 0)

    def _aligned(self, other: "Dyadic") -> Tuple[int, int, int]:
        e = max(self.exponent, other.exponent)
        return self.numerator << (e - self.exponent), other.numerator << (e - other.exponent), e

    def __add__(self, other) -> "Dyadic":
        a, b, e = self._aligned(Dyadic.of(other))
        return Dyadic(a + b, e)

    __radd__ = __add__

    def __neg__(self) -> "Dyadic":
        return Dyadic(-self.numerator, self.exponent)

    def __sub__(self, other) -> "Dyadic":
        return self + (-Dyadic.of(other))

    def __rsub__(self, other) -> "Dyadic":
        return Dyadic.of(other) - self

    def __mul__(self, other) -> "Dyadic":
        other = Dyadic.of(other)
        return Dyadic(self.numerator * other.numerator, self.exponent + other.exponent)

    __rmul__ = __mul__

    def scale2(self, k: int) -> "Dyadic":
        """Multiply by 2^k"""
        return Dyadic(self.numerator, self.exponent - k)

    def floor(self) -> int:
        if self.exponent >= 0:
            return self.numerator >> self.exponent
        return self.numerator << -self.exponent

    def __lt__(self, other) -> bool:
        a, b, _ = self._aligned(Dyadic.of(other))
        return a < b

    def __le__(self, other) -> bool:
        a, b, _ = self._aligned(Dyadic.of(other))
        return a <= b

    def __bool__(self) -> bool:
        return self.numerator != 0

    def __str__(self) -> str:
        if self.exponent <= 0:
            return str(self.numerator << -self.exponent)
        return f"{self.numerator}/{1 << self.exponent}"


ZERO = Dyadic(0)
ONE = Dyadic(1)

Vec2 = Tuple[Dyadic, Dyadic]
Mat2 = Tuple[Tuple[int, int], Tuple[int, int]]

F2 = Alphabet.of(("u", "v"))

_LETTER_MATRICES: Dict[int, Mat2] = {
    1: ((1, 1), (0, 1)),     # u
    -1: ((1, -1), (0, 1)),
    2: ((1, 0), (1, 1)),     # v
    -2: ((1, 0), (-1, 1)),
}


def mat_mul(m1: Mat2, m2: Mat2) -> Mat2:
    (a, b), (c, d) = m1
    (e, f), (g, h) = m2
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


def mat_apply(m: Mat2, t: Vec2) -> Vec2:
    (a, b), (c, d) = m
    return (t[0] * a + t[1] * b, t[0] * c + t[1] * d)


def f2_matrix(w: Word) -> Mat2:
    """M(w) for w over {u, v}: M(u) = [[1,1],[0,1]], M(v) = [[1,0],[1,1]]"""
    result: Mat2 = ((1, 0), (0, 1))
    for letter in w.letters:
        result = mat_mul(result, _LETTER_MATRICES[letter])
    return result


def vec_add(s: Vec2, t: Vec2) -> Vec2:
    return (s[0] + t[0], s[1] + t[1])


def vec_scale2(t: Vec2, k: int) -> Vec2:
    return (t[0].scale2(k), t[1].scale2(k))


@dataclass(frozen=True)
class HeisElement:
    """alpha^p beta^q zeta^r"""
    p: int = 0
    q: int = 0
    r: int = 0


@dataclass(frozen=True)
class BSElement:
    """The affine map t -> 2^a t + b"""
    a: int = 0
    b: Dyadic = ZERO


@dataclass(frozen=True)
class LElement:
    """(t, a, w): translation t, power a of h, free word w over {u, v}"""
    t: Vec2 = (ZERO, ZERO)
    a: int = 0
    w: Word = Word(F2, ())


@dataclass(frozen=True)
class Z2Element:
    i: int = 0
    j: int = 0


@dataclass(frozen=True)
class ZxF2Element:
    """h^k times a free word over {u, v}"""
    k: int = 0
    w: Word = Word(F2, ())


class GroupModel(ABC):
    """A group with named generators and exact multiplication"""

    name = "model"

    def __init__(self, generators: Sequence[str]):
        self.alphabet = Alphabet.of(generators)

    @abstractmethod
    def identity(self) -> Any:
        ...

    @abstractmethod
    def multiply(self, g: Any, h: Any) -> Any:
        ...

    @abstractmethod
    def inverse(self, g: Any) -> Any:
        ...

    @abstractmethod
    def _generator(self, index: int) -> Any:
        """Element for the generator at position index of the alphabet"""

    def generator(self, name: str) -> Any:
        if name not in self.alphabet:
            raise UnknownGeneratorError(f"Generator '{name}' is not part of the {self.name} model")
        return self._generator(self.alphabet.index(name))

    def equal(self, g: Any, h: Any) -> bool:
        return g == h

    def is_identity(self, g: Any) -> bool:
        return self.equal(g, self.identity())

    def power(self, g: Any, n: int) -> Any:
        base = g if n >= 0 else self.inverse(g)
        result = self.identity()
        for _ in range(abs(n)):
            result = self.multiply(result, base)
        return result

    def eval(self, w: Word) -> Any:
        """Evaluate a word by generator name; the word's alphabet may be any superset"""
        result = self.identity()
        cache: Dict[int, Any] = {}
        for letter in w.letters:
            if letter not in cache:
                g = self.generator(w.alphabet.name_of(letter))
                cache[letter] = g if letter > 0 else self.inverse(g)
            result = self.multiply(result, cache[letter])
        return result


class HeisModel(GroupModel):
    """Heis(alpha, beta, zeta) with [alpha, beta] = zeta central"""

    name = "Heis"

    def __init__(self, alpha: str = "a", beta: str = "b", zeta: str = "c"):
        super().__init__((alpha, beta, zeta))
        self.name = f"Heis({alpha},{beta},{zeta})"

    def identity(self) -> HeisElement:
        return HeisElement()

    def multiply(self, g: HeisElement, h: HeisElement) -> HeisElement:
        return HeisElement(g.p + h.p, g.q + h.q, g.r + h.r - h.p * g.q)

    def inverse(self, g: HeisElement) -> HeisElement:
        return HeisElement(-g.p, -g.q, -g.r - g.p * g.q)

    def _generator(self, index: int) -> HeisElement:
        return (HeisElement(1, 0, 0), HeisElement(0, 1, 0), HeisElement(0, 0, 1))[index]


class BS12Model(GroupModel):
    """BS(1,2) as dyadic affine maps: x = t -> t + 1, h = t -> 2t"""

    name = "BS12"

    def __init__(self, x: str = "x", h: str = "h"):
        super().__init__((x, h))

    def identity(self) -> BSElement:
        return BSElement()

    def multiply(self, g: BSElement, h: BSElement) -> BSElement:
        return BSElement(g.a + h.a, h.b.scale2(g.a) + g.b)

    def inverse(self, g: BSElement) -> BSElement:
        return BSElement(-g.a, -g.b.scale2(-g.a))

    def _generator(self, index: int) -> BSElement:
        return BSElement(0, ONE) if index == 0 else BSElement(1, ZERO)


class LModel(GroupModel):
    """L on {x, y, h, u, v}; (t1,a1,w1)(t2,a2,w2) = (t1 + 2^a1 M(w1) t2, a1 + a2, w1 w2)"""

    name = "L"

    def __init__(self, names: Sequence[str] = ("x", "y", "h", "u", "v")):
        super().__init__(names)

    def identity(self) -> LElement:
        return LElement()

    def multiply(self, g: LElement, h: LElement) -> LElement:
        moved = vec_scale2(mat_apply(f2_matrix(g.w), h.t), g.a)
        return LElement(vec_add(g.t, moved), g.a + h.a, g.w * h.w)

    def inverse(self, g: LElement) -> LElement:
        w_inv = invert(g.w)
        t = vec_scale2(mat_apply(f2_matrix(w_inv), g.t), -g.a)
        return LElement((-t[0], -t[1]), -g.a, w_inv)

    def _generator(self, index: int) -> LElement:
        return (
            LElement((ONE, ZERO)),
            LElement((ZERO, ONE)),
            LElement(a=1),
            LElement(w=F2.gen("u")),
            LElement(w=F2.gen("v")),
        )[index]


class Z2Model(GroupModel):
    """Free abelian group of rank 2 on (g1, g2)"""

    name = "Z2"

    def __init__(self, g1: str = "a", g2: str = "b"):
        super().__init__((g1, g2))

    def identity(self) -> Z2Element:
        return Z2Element()

    def multiply(self, g: Z2Element, h: Z2Element) -> Z2Element:
        return Z2Element(g.i + h.i, g.j + h.j)

    def inverse(self, g: Z2Element) -> Z2Element:
        return Z2Element(-g.i, -g.j)

    def _generator(self, index: int) -> Z2Element:
        return Z2Element(1, 0) if index == 0 else Z2Element(0, 1)


class ZxF2Model(GroupModel):
    """<h> x F(u, v), the subgroup <h, u, v> of L"""

    name = "ZxF2"

    def __init__(self, h: str = "h", u: str = "u", v: str = "v"):
        super().__init__((h, u, v))

    def identity(self) -> ZxF2Element:
        return ZxF2Element()

    def multiply(self, g: ZxF2Element, h: ZxF2Element) -> ZxF2Element:
        return ZxF2Element(g.k + h.k, g.w * h.w)

    def inverse(self, g: ZxF2Element) -> ZxF2Element:
        return ZxF2Element(-g.k, invert(g.w))

    def _generator(self, index: int) -> ZxF2Element:
        return (ZxF2Element(1), ZxF2Element(w=F2.gen("u")), ZxF2Element(w=F2.gen("v")))[index]


MODELS = {
    "heis": HeisModel,
    "bs12": BS12Model,
    "l": LModel,
    "z2": Z2Model,
    "zxf2": ZxF2Model,
}


def eval_word(model: GroupModel, w: Word) -> Any:
    return model.eval(w)


def check_relators(model: GroupModel, p: Presentation,
                   assignment: Optional[Mapping[str, Word]] = None) -> bool:
    """True iff every relator of p is the identity under generator -> model word.

    Without an assignment each generator of p evaluates to the model
    generator of the same name.
    """
    images = {}
    for g in p.generators:
        if assignment is None:
            images[g] = model.generator(g)
            continue
        if g not in assignment:
            raise ModelError(f"No model word assigned to '{g}'")
        images[g] = model.eval(assignment[g])
    for relator in p.relators:
        value = model.identity()
        for gen, sign in relator:
            image = images[gen.name]
            value = model.multiply(value, image if sign > 0 else model.inverse(image))
        if not model.is_identity(value):
            return False
    return True


_AFFINE = {
    "x": Matrix([[1, 0, 1], [0, 1, 0], [0, 0, 1]]),
    "y": Matrix([[1, 0, 0], [0, 1, 1], [0, 0, 1]]),
    "h": Matrix([[2, 0, 0], [0, 2, 0], [0, 0, 1]]),
    "u": Matrix([[1, 1, 0], [0, 1, 0], [0, 0, 1]]),
    "v": Matrix([[1, 0, 0], [1, 1, 0], [0, 0, 1]]),
}


def affine_matrix_model(w: Word) -> Matrix:
    """[[2^a M(w), t], [0, 1]] over the rationals; not faithful on the free factor"""
    result = eye(3)
    for gen, sign in w:
        if gen.name not in _AFFINE:
            raise UnknownGeneratorError(f"Generator '{gen.name}' has no affine matrix")
        m = _AFFINE[gen.name]
        result = result * (m if sign > 0 else m.inv())
    return result


def autothysis_conjugation_check() -> bool:
    """(u v^-1 u) x (u v^-1 u)^-1 = y^-1 in L"""
    model = LModel()
    alphabet = model.alphabet
    c = alphabet.gen("u") * invert(alphabet.gen("v")) * alphabet.gen("u")
    lhs = model.eval(c * alphabet.gen("x") * invert(c))
    return model.equal(lhs, model.eval(invert(alphabet.gen("y"))))
