"""
Amalgam - normal forms in one-level amalgamated free products and HNN extensions

An element of A *_C B is stored as embed(head) r1 r2 ... rk, where the ri
are non-identity transversal representatives of right cosets of C taken
alternately from A and B. Multiplication works from the right and pushes
the C-parts leftward into the head.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from .constructions import heisenberg_relators
from .exact_models import (
    BS12Model, BSElement, F2, GroupModel, HeisElement, HeisModel, LElement, LModel,
    Z2Element, Z2Model, ZERO, Dyadic, ZxF2Element, ZxF2Model, f2_matrix, mat_apply, vec_scale2
)
from .presentation import Presentation
from .sampler import WordSampler
from .word import Alphabet, UnknownGeneratorError, Word, commutator, exponent_sum, invert
from .word_parser import parse_word

logger = logging.getLogger(__name__)

Coords = Tuple[int, ...]


class Side(Enum):
    A = "A"
    B = "B"


class FactorOracle:
    """A factor group together with its amalgamated subgroup and transversal.

    ``decompose(g)`` returns ``(c, r)`` with ``g = embed(c) * r`` and ``r`` the
    canonical representative of the coset ``C g``; ``r`` is the identity
    exactly when ``g`` lies in C.
    """

    def __init__(self, model: GroupModel, rank: int, embed: Callable[[Coords], Any],
                 decompose: Callable[[Any], Tuple[Coords, Any]], label: str):
        self.model = model
        self.rank = rank
        self._embed = embed
        self._decompose = decompose
        self.label = label

    def identity(self) -> Any:
        return self.model.identity()

    def multiply(self, g: Any, h: Any) -> Any:
        return self.model.multiply(g, h)

    def inverse(self, g: Any) -> Any:
        return self.model.inverse(g)

    def equal(self, g: Any, h: Any) -> bool:
        return self.model.equal(g, h)

    def is_identity(self, g: Any) -> bool:
        return self.model.is_identity(g)

    def eval_generator(self, name: str) -> Any:
        return self.model.generator(name)

    def embed(self, coords: Coords) -> Any:
        if len(coords) != self.rank:
            raise ValueError(f"{self.label}: expected {self.rank} subgroup coordinates, got {len(coords)}")
        return self._embed(tuple(coords))

    def decompose(self, g: Any) -> Tuple[Coords, Any]:
        return self._decompose(g)


def _v_power(m: int) -> Word:
    return F2.word([("v", m)])


def l_over_hv() -> FactorOracle:
    """L over <h, v>; transversal (t, 0, w) with zero v-exponent in w"""
    model = LModel()

    def embed(c: Coords) -> LElement:
        return LElement(a=c[0], w=_v_power(c[1]))

    def decompose(g: LElement) -> Tuple[Coords, LElement]:
        m = exponent_sum(g.w, "v")
        v_inv = _v_power(-m)
        t = vec_scale2(mat_apply(f2_matrix(v_inv), g.t), -g.a)
        return (g.a, m), LElement(t, 0, v_inv * g.w)

    return FactorOracle(model, 2, embed, decompose, "L over <h,v>")


def heis_over_outer(model: HeisModel) -> FactorOracle:
    """Heis(alpha, beta, zeta) over <alpha, zeta>; transversal {beta^q}"""

    def embed(c: Coords) -> HeisElement:
        return HeisElement(c[0], 0, c[1])

    def decompose(g: HeisElement) -> Tuple[Coords, HeisElement]:
        return (g.p, g.r), HeisElement(0, g.q, 0)

    return FactorOracle(model, 2, embed, decompose, f"{model.name} over <{model.alphabet.names[0]},{model.alphabet.names[2]}>")


def heis_over_alpha(model: HeisModel) -> FactorOracle:
    """Heis(alpha, beta, zeta) over <alpha>; transversal {beta^q zeta^r}"""

    def embed(c: Coords) -> HeisElement:
        return HeisElement(c[0], 0, 0)

    def decompose(g: HeisElement) -> Tuple[Coords, HeisElement]:
        return (g.p,), HeisElement(0, g.q, g.r)

    return FactorOracle(model, 1, embed, decompose, f"{model.name} over <{model.alphabet.names[0]}>")


def bs_over_x(model: BS12Model) -> FactorOracle:
    """BS(1,2) over <x>; transversal {(a, b) : 0 <= b < 1}"""

    def embed(c: Coords) -> BSElement:
        return BSElement(0, Dyadic(c[0]))

    def decompose(g: BSElement) -> Tuple[Coords, BSElement]:
        m = g.b.floor()
        return (m,), BSElement(g.a, g.b - m)

    return FactorOracle(model, 1, embed, decompose, "BS(1,2) over <x>")


def bs_over_h(model: BS12Model) -> FactorOracle:
    """BS(1,2) over <h>; transversal of translations {(0, b)}"""

    def embed(c: Coords) -> BSElement:
        return BSElement(c[0], ZERO)

    def decompose(g: BSElement) -> Tuple[Coords, BSElement]:
        return (g.a,), BSElement(0, g.b.scale2(-g.a))

    return FactorOracle(model, 1, embed, decompose, "BS(1,2) over <h>")


def z2_over_first(model: Z2Model) -> FactorOracle:
    """Z^2 = <g1, g2> over <g1>; transversal {g2^j}"""

    def embed(c: Coords) -> Z2Element:
        return Z2Element(c[0], 0)

    def decompose(g: Z2Element) -> Tuple[Coords, Z2Element]:
        return (g.i,), Z2Element(0, g.j)

    return FactorOracle(model, 1, embed, decompose, "Z^2 over first factor")


def zxf2_over_hv(model: ZxF2Model) -> FactorOracle:
    """<h> x F(u, v) over <h, v>; transversal {(0, w) : zero v-exponent}"""

    def embed(c: Coords) -> ZxF2Element:
        return ZxF2Element(c[0], _v_power(c[1]))

    def decompose(g: ZxF2Element) -> Tuple[Coords, ZxF2Element]:
        m = exponent_sum(g.w, "v")
        return (g.k, m), ZxF2Element(0, _v_power(-m) * g.w)

    return FactorOracle(model, 2, embed, decompose, "ZxF2 over <h,v>")


@dataclass(frozen=True)
class AmalgamNormalForm:
    head: Coords
    syllables: Tuple[Tuple[Side, Any], ...] = ()

    def is_identity(self) -> bool:
        return not self.syllables and not any(self.head)


def syllable_length(nf: AmalgamNormalForm) -> int:
    return len(nf.syllables)


@dataclass(frozen=True, eq=False)
class AmalgamInstance:
    """A *_C B with a merged generator alphabet; each letter names (side, factor generator)"""
    name: str
    factor_a: FactorOracle
    factor_b: FactorOracle
    alphabet: Alphabet
    letters: Mapping[str, Tuple[Side, str]] = field(default_factory=dict)

    def __post_init__(self):
        if self.factor_a.rank != self.factor_b.rank:
            raise ValueError(f"{self.name}: factor subgroup ranks differ")
        for g in self.alphabet:
            if g not in self.letters:
                raise ValueError(f"{self.name}: generator '{g}' is not assigned to a factor")

    @property
    def rank(self) -> int:
        return self.factor_a.rank

    def factor(self, side: Side) -> FactorOracle:
        return self.factor_a if side is Side.A else self.factor_b

    def identity(self) -> AmalgamNormalForm:
        return AmalgamNormalForm((0,) * self.rank)

    def gen(self, name: str) -> Word:
        return self.alphabet.gen(name)

    def word(self, text: str) -> Word:
        return parse_word(text, self.alphabet)


def _push_left(instance: AmalgamInstance, syllables: List[Tuple[Side, Any]], c: Coords) -> Coords:
    """Move the C-element embed(c), sitting right of the syllables, into the head"""
    for i in range(len(syllables) - 1, -1, -1):
        if not any(c):
            break
        side, rep = syllables[i]
        f = instance.factor(side)
        c, rep = f.decompose(f.multiply(rep, f.embed(c)))
        syllables[i] = (side, rep)
    return c


def _combine_heads(instance: AmalgamInstance, head: Coords, c: Coords) -> Coords:
    if not any(c):
        return head
    if not any(head):
        return c
    f = instance.factor_a
    coords, _ = f.decompose(f.multiply(f.embed(head), f.embed(c)))
    return coords


def right_multiply(instance: AmalgamInstance, nf: AmalgamNormalForm, side: Side, g: Any) -> AmalgamNormalForm:
    """Normal form of nf * g for an element g of the factor on ``side``"""
    f = instance.factor(side)
    syllables = list(nf.syllables)
    if syllables and syllables[-1][0] is side:
        _, last = syllables.pop()
        g = f.multiply(last, g)
    c, r = f.decompose(g)
    c = _push_left(instance, syllables, c)
    if not f.is_identity(r):
        syllables.append((side, r))
    return AmalgamNormalForm(_combine_heads(instance, nf.head, c), tuple(syllables))


def multiply(instance: AmalgamInstance, nf1: AmalgamNormalForm, nf2: AmalgamNormalForm) -> AmalgamNormalForm:
    result = nf1
    if any(nf2.head):
        result = right_multiply(instance, result, Side.A, instance.factor_a.embed(nf2.head))
    for side, rep in nf2.syllables:
        result = right_multiply(instance, result, side, rep)
    return result


def amalgam_eval(instance: AmalgamInstance, w: Word) -> AmalgamNormalForm:
    """Normal form of the element a word represents"""
    nf = instance.identity()
    cache: Dict[int, Tuple[Side, Any]] = {}
    for letter in w.letters:
        if letter not in cache:
            name = w.alphabet.name_of(letter)
            if name not in instance.letters:
                raise UnknownGeneratorError(f"Generator '{name}' is not part of {instance.name}")
            side, gen = instance.letters[name]
            f = instance.factor(side)
            g = f.eval_generator(gen)
            cache[letter] = (side, g if letter > 0 else f.inverse(g))
        side, g = cache[letter]
        nf = right_multiply(instance, nf, side, g)
    return nf


def factor_normal_form(instance: AmalgamInstance, side: Side, g: Any) -> AmalgamNormalForm:
    return right_multiply(instance, instance.identity(), side, g)


def is_normal_form(instance: AmalgamInstance, nf: AmalgamNormalForm) -> bool:
    """Sides alternate and every syllable is a non-identity canonical representative"""
    zero = (0,) * instance.rank
    if len(nf.head) != instance.rank:
        return False
    for k, (side, rep) in enumerate(nf.syllables):
        if k and nf.syllables[k - 1][0] is side:
            return False
        f = instance.factor(side)
        if f.is_identity(rep):
            return False
        c, r = f.decompose(rep)
        if c != zero or not f.equal(r, rep):
            return False
    return True


def instance_J() -> AmalgamInstance:
    """J = L *_{<h,v>} Heis(h, z, v)"""
    letters = {g: (Side.A, g) for g in ("x", "y", "h", "u", "v")}
    letters["z"] = (Side.B, "z")
    return AmalgamInstance("J", l_over_hv(), heis_over_outer(HeisModel("h", "z", "v")),
                           Alphabet.of(("x", "y", "h", "u", "v", "z")), letters)


def instance_Hhalf() -> AmalgamInstance:
    """H = < L_0, L_1 : x_0 = h_1 > with L_i = BS(1,2) on (x_i, h_i)"""
    letters = {
        "x@0": (Side.A, "x"),
        "h@0": (Side.A, "h"),
        "x@1": (Side.B, "x"),
        "h@1": (Side.B, "h"),
    }
    return AmalgamInstance("Hhalf", bs_over_x(BS12Model()), bs_over_h(BS12Model()),
                           Alphabet.of(("x@0", "h@0", "x@1", "h@1")), letters)


def instance_Q() -> AmalgamInstance:
    """Q = Heis(v, x, y) *_{<v>} <v, z>"""
    letters = {"v": (Side.A, "v"), "x": (Side.A, "x"), "y": (Side.A, "y"), "z": (Side.B, "z")}
    return AmalgamInstance("Q", heis_over_alpha(HeisModel("v", "x", "y")), z2_over_first(Z2Model("v", "z")),
                           Alphabet.of(("v", "x", "y", "z")), letters)


def instance_T() -> AmalgamInstance:
    """T = Heis(h, z, v) *_{<h,v>} <h, u, v>_L"""
    letters = {"h": (Side.A, "h"), "z": (Side.A, "z"), "v": (Side.A, "v"), "u": (Side.B, "u")}
    return AmalgamInstance("T", heis_over_outer(HeisModel("h", "z", "v")), zxf2_over_hv(ZxF2Model("h", "u", "v")),
                           Alphabet.of(("h", "z", "v", "u")), letters)


INSTANCES: Dict[str, Callable[[], AmalgamInstance]] = {
    "J": instance_J,
    "Hhalf": instance_Hhalf,
    "Q": instance_Q,
    "T": instance_T,
}


def blocking_element(instance: Optional[AmalgamInstance] = None) -> Word:
    """t = x_0^-1 x_1 h_0 x_1^-1 x_0 in H"""
    instance = instance or instance_Hhalf()
    return instance.word("x@0^-1 x@1 h@0 x@1^-1 x@0")


# HNN extensions

@dataclass(frozen=True)
class HNNInstance:
    """BS(p, q) = < x, t : t x^p t^-1 = x^q > as an HNN extension of Z = <x>"""
    base: str = "x"
    stable: str = "h"
    p: int = 1
    q: int = 2

    def __post_init__(self):
        if self.p == 0 or self.q == 0:
            raise ValueError("BS(p, q) needs nonzero p and q")

    @property
    def alphabet(self) -> Alphabet:
        return Alphabet.of((self.base, self.stable))

    @property
    def name(self) -> str:
        return f"BS({self.p},{self.q})"


@dataclass(frozen=True)
class BrittonForm:
    """Pinch-free alternation of ('x', k) base syllables and ('t', +-1) stable letters"""
    syllables: Tuple[Tuple[str, int], ...] = ()

    def is_identity(self) -> bool:
        return not self.syllables

    def __len__(self) -> int:
        return len(self.syllables)


def _push_base(stack: List[Tuple[str, int]], k: int):
    if k == 0:
        return
    if stack and stack[-1][0] == "x":
        total = stack[-1][1] + k
        stack.pop()
        if total:
            stack.append(("x", total))
    else:
        stack.append(("x", k))


def hnn_eval(instance: HNNInstance, w: Word) -> BrittonForm:
    """Britton reduction by a stack: pinch t x^k t^-1 when p | k and t^-1 x^k t when q | k"""
    stack: List[Tuple[str, int]] = []
    for letter in w.letters:
        name = w.alphabet.name_of(letter)
        sign = 1 if letter > 0 else -1
        if name == instance.base:
            _push_base(stack, sign)
            continue
        if name != instance.stable:
            raise UnknownGeneratorError(f"Generator '{name}' is not part of {instance.name}")
        if stack and stack[-1] == ("t", -sign):
            stack.pop()
            continue
        if len(stack) >= 2 and stack[-1][0] == "x" and stack[-2] == ("t", -sign):
            k = stack[-1][1]
            if sign == -1 and k % instance.p == 0:
                image = k * instance.q // instance.p
            elif sign == 1 and k % instance.q == 0:
                image = k * instance.p // instance.q
            else:
                stack.append(("t", sign))
                continue
            del stack[-2:]
            _push_base(stack, image)
            continue
        stack.append(("t", sign))
    return BrittonForm(tuple(stack))


# Freeness and blocking pair checks

@dataclass
class FreenessReport:
    instance: str
    letters: Tuple[str, ...]
    max_len: int
    words_checked: int = 0
    counterexample: Optional[str] = None

    @property
    def free(self) -> bool:
        return self.counterexample is None


def freeness_report(instance: AmalgamInstance, letters: Sequence[Word], max_len: int) -> FreenessReport:
    """Evaluate every nonempty reduced word of length <= max_len in the given letters"""
    if not letters:
        raise ValueError("At least one letter is required")
    names = tuple(str(w) for w in letters)
    report = FreenessReport(instance.name, names, max_len)
    symbols: List[AmalgamNormalForm] = []
    labels: List[str] = []
    for k, w in enumerate(letters):
        symbols += [amalgam_eval(instance, w), amalgam_eval(instance, invert(w))]
        labels += [f"({names[k]})", f"({names[k]})^-1"]
    # DFS over (prefix value, last symbol, length, labels)
    stack: List[Tuple[AmalgamNormalForm, int, int, Tuple[int, ...]]] = [(instance.identity(), -1, 0, ())]
    while stack:
        value, last, length, path = stack.pop()
        if length == max_len:
            continue
        for s in range(len(symbols) - 1, -1, -1):
            if last >= 0 and s == last ^ 1:
                continue
            nxt = multiply(instance, value, symbols[s])
            report.words_checked += 1
            if nxt.is_identity():
                report.counterexample = " ".join(labels[i] for i in path + (s,))
                logger.warning("%s: word %s over %s is trivial", instance.name, report.counterexample, names)
                return report
            stack.append((nxt, s, length + 1, path + (s,)))
    return report


def check_free(instance: AmalgamInstance, letters: Sequence[Word], max_len: int) -> bool:
    return freeness_report(instance, letters, max_len).free


# Property suite

PROPERTIES = ("homomorphism", "inverse", "factor_embedding", "alternation")


@dataclass
class SuiteReport:
    instance: str
    samples: int
    max_len: int
    seed: int
    failures: Dict[str, int] = field(default_factory=lambda: {name: 0 for name in PROPERTIES})

    @property
    def total_failures(self) -> int:
        return sum(self.failures.values())

    @property
    def passed(self) -> bool:
        return self.total_failures == 0


def run_property_suite(instance: AmalgamInstance, samples: int, max_len: int, seed: int) -> SuiteReport:
    sampler = WordSampler(seed)
    report = SuiteReport(instance.name, samples, max_len, seed)
    for i in range(samples):
        w1 = sampler.word(instance.alphabet, max_len)
        w2 = sampler.word(instance.alphabet, max_len)
        n1, n2 = amalgam_eval(instance, w1), amalgam_eval(instance, w2)
        n12 = amalgam_eval(instance, w1 * w2)
        if n12 != multiply(instance, n1, n2):
            report.failures["homomorphism"] += 1
        inverse = amalgam_eval(instance, invert(w1))
        if not amalgam_eval(instance, w1 * invert(w1)).is_identity() or not multiply(instance, n1, inverse).is_identity():
            report.failures["inverse"] += 1
        if not all(is_normal_form(instance, nf) for nf in (n1, n2, n12)):
            report.failures["alternation"] += 1
        side = Side.A if i % 2 == 0 else Side.B
        f = instance.factor(side)
        g = f.model.eval(sampler.word(f.model.alphabet, max_len))
        if factor_normal_form(instance, side, g).is_identity() != f.is_identity(g):
            report.failures["factor_embedding"] += 1
        if (i + 1) % 1000 == 0:
            logger.debug("%s suite: %d/%d samples", instance.name, i + 1, samples)
    if not report.passed:
        logger.warning("%s suite failures: %s", instance.name, report.failures)
    return report


# Q and T

QT_RENAME = {"v": "h", "x": "z", "y": "v", "z": "u"}


def q_presentation() -> Presentation:
    """Q = Heis(v, x, y) *_{<v>} <v, z>"""
    alphabet = Alphabet.of(("v", "x", "y", "z"))
    v, x, y, z = (alphabet.gen(g) for g in alphabet.names)
    return Presentation("Q", alphabet, tuple(heisenberg_relators(v, x, y) + [commutator(v, z)]))


def qt_map(w: Word, target: Optional[AmalgamInstance] = None) -> Word:
    """The letterwise map (v, x, y, z) -> (h, z, v, u)"""
    target = target or instance_T()
    return w.relabel(target.alphabet, QT_RENAME)


@dataclass
class QTIsoReport:
    samples: int
    max_len: int
    seed: int
    identity_samples: int = 0
    violations: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


def check_qt_iso(samples: int, max_len: int, seed: int) -> QTIsoReport:
    """w = e in Q iff its image is e in T, over random and relator-laden words.

    Odd-numbered samples are s with a conjugated Q relator spliced in,
    followed by s^-1, so they are trivial in Q.
    """
    q, t = instance_Q(), instance_T()
    relators = list(q_presentation().relators)
    sampler = WordSampler(seed)
    report = QTIsoReport(samples, max_len, seed)
    for i in range(samples):
        w = sampler.word(q.alphabet, max_len)
        if i % 2 == 1:
            cut = sampler.integer(0, len(w))
            conjugator = sampler.word(q.alphabet, max(1, max_len // 4))
            relator = sampler.choice(relators) ** sampler.sign()
            prefix, suffix = Word(q.alphabet, w.letters[:cut]), Word(q.alphabet, w.letters[cut:])
            w = prefix * conjugator * relator * invert(conjugator) * suffix * invert(w)
        q_trivial = amalgam_eval(q, w).is_identity()
        t_trivial = amalgam_eval(t, qt_map(w, t)).is_identity()
        if q_trivial:
            report.identity_samples += 1
        if q_trivial != t_trivial:
            report.violations.append(str(w))
    if report.violations:
        logger.warning("Q -> T: %d violations in %d samples", len(report.violations), samples)
    return report


# Britton reduction against the affine model

@dataclass
class HNNCrossReport:
    samples: int
    max_len: int
    seed: int
    trivial_samples: int = 0
    mismatches: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.mismatches


def check_hnn_against_model(samples: int, max_len: int, seed: int,
                            instance: Optional[HNNInstance] = None) -> HNNCrossReport:
    """hnn_eval(w) is empty exactly when w is the identity of the BS(1,2) affine model.

    Odd-numbered samples are conjugates of powers of the defining relator,
    so both sides see trivial words too.
    """
    instance = instance or HNNInstance()
    model = BS12Model(instance.base, instance.stable)
    alphabet = instance.alphabet
    x, t = alphabet.gen(instance.base), alphabet.gen(instance.stable)
    relator = commutator(t, x) * invert(x)
    sampler = WordSampler(seed)
    report = HNNCrossReport(samples, max_len, seed)
    for i in range(samples):
        w = sampler.word(alphabet, max_len)
        if i % 2 == 1:
            w = w * relator ** sampler.integer(-2, 2) * invert(w)
        britton_trivial = hnn_eval(instance, w).is_identity()
        model_trivial = model.is_identity(model.eval(w))
        if model_trivial:
            report.trivial_samples += 1
        if britton_trivial != model_trivial:
            report.mismatches.append(str(w))
    if report.mismatches:
        logger.warning("%s: %d Britton/model mismatches in %d samples", instance.name,
                       len(report.mismatches), samples)
    return report
