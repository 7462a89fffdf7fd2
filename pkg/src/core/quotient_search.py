"""
Quotient Search - backtracking enumeration of homomorphisms into symmetric groups
"""

import logging
import math
import time
from dataclasses import dataclass, field
from enum import Enum
from itertools import permutations
from multiprocessing import Pool
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

from .arithmetic import divides_mersenne
from .presentation import Presentation
from .word import Word

logger = logging.getLogger(__name__)


class DegreeMismatchError(ValueError):
    """Raised when permutation images have different degrees"""


class SearchStatus(Enum):
    COMPLETE = "complete"
    BUDGET_EXHAUSTED = "budget_exhausted"


@dataclass(frozen=True)
class Permutation:
    """Bijection of {0..k-1}; (p * q)[i] = p[q[i]]"""
    images: Tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"{images} is not a permutation of 0..{len(images) - 1}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(tuple(range(degree)))

    @classmethod
    def cycle(cls, degree: int, *points: int) -> "Permutation":
        images = list(range(degree))
        for a, b in zip(points, points[1:] + points[:1]):
            images[a] = b
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def __mul__(self, other: "Permutation") -> "Permutation":
        if other.degree != self.degree:
            raise DegreeMismatchError(f"Degrees {self.degree} and {other.degree} differ")
        return Permutation(_compose(self.images, other.images))

    def inverse(self) -> "Permutation":
        return Permutation(_invert(self.images))

    def cycle_lengths(self) -> List[int]:
        lengths = []
        seen: Set[int] = set()
        for start in range(self.degree):
            if start in seen:
                continue
            length, nxt = 0, start
            while nxt not in seen:
                seen.add(nxt)
                nxt = self.images[nxt]
                length += 1
            lengths.append(length)
        return lengths

    def order(self) -> int:
        return math.lcm(*self.cycle_lengths()) if self.degree else 1

    def __str__(self) -> str:
        cycles = []
        seen = set()
        for start in range(self.degree):
            if start in seen or self.images[start] == start:
                continue
            cycle = [start]
            seen.add(start)
            nxt = self.images[start]
            while nxt != start:
                cycle.append(nxt)
                seen.add(nxt)
                nxt = self.images[nxt]
            cycles.append("(" + " ".join(str(c) for c in cycle) + ")")
        return "".join(cycles) or "()"


def _compose(p: Tuple[int, ...], q: Tuple[int, ...]) -> Tuple[int, ...]:
    return tuple(p[i] for i in q)


def _invert(p: Tuple[int, ...]) -> Tuple[int, ...]:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def _evaluate(letters: Sequence[int], images: Sequence[Tuple[int, ...]],
              inverses: Sequence[Tuple[int, ...]], degree: int) -> Tuple[int, ...]:
    result = tuple(range(degree))
    for letter in letters:
        g = abs(letter) - 1
        result = _compose(result, images[g] if letter > 0 else inverses[g])
    return result


def evaluate_word(w: Word, images: Mapping[str, Permutation]) -> Permutation:
    degrees = {perm.degree for perm in images.values()}
    if len(degrees) > 1:
        raise DegreeMismatchError(f"Images have different degrees: {sorted(degrees)}")
    degree = degrees.pop() if degrees else 0
    result = Permutation.identity(degree)
    for gen, sign in w:
        perm = images[gen.name]
        result = result * (perm if sign > 0 else perm.inverse())
    return result


def verify_hom(p: Presentation, images: Mapping[str, Permutation]) -> bool:
    """True iff every relator of p evaluates to the identity under images"""
    missing = [g for g in p.generators if g not in images]
    if missing:
        raise ValueError(f"No image for generators {', '.join(missing)}")
    degrees = {images[g].degree for g in p.generators}
    if len(degrees) > 1:
        raise DegreeMismatchError(f"Images have different degrees: {sorted(degrees)}")
    return all(evaluate_word(r, images).is_identity() for r in p.relators)


@dataclass
class HomSearchReport:
    """Homomorphisms p -> Sym(target_degree), counted raw"""
    presentation: str
    target_degree: int
    total_homs: int
    nontrivial_found: bool
    witnesses: List[Dict[str, Permutation]] = field(default_factory=list)
    nodes: int = 0
    status: SearchStatus = SearchStatus.COMPLETE
    elapsed: float = 0.0

    @property
    def complete(self) -> bool:
        return self.status == SearchStatus.COMPLETE


def higman_shape(letters: Tuple[int, ...]) -> Optional[Tuple[int, int]]:
    """(a, b) when the relator is [a, b] b^-1, i.e. a b a^-1 b^-2, else None"""
    if len(letters) != 5:
        return None
    a, b = letters[0], letters[1]
    if a > 0 and b > 0 and a != b and letters[2:] == (-a, -b, -b):
        return a - 1, b - 1
    return None


class _Searcher:
    """Depth-first assignment of permutations to generators in presentation order"""

    def __init__(self, p: Presentation, degree: int, budget: int, max_witnesses: int):
        self.p = p
        self.degree = degree
        self.budget = budget
        self.max_witnesses = max_witnesses
        self.ngens = len(p.generators)
        self.candidates: List[Tuple[int, ...]] = list(permutations(range(degree)))
        self.identity = tuple(range(degree))

        # relators checked once their last generator (in order) is assigned
        self.checks: List[List[Tuple[int, ...]]] = [[] for _ in range(self.ngens)]
        # (other generator, direction) constraints from [a, b] b^-1 relators
        self.links: List[List[Tuple[int, str]]] = [[] for _ in range(self.ngens)]
        for r in p.relators:
            shape = higman_shape(r.letters)
            if shape is not None:
                a, b = shape
                if a < b:
                    self.links[b].append((a, "forward"))
                else:
                    self.links[a].append((b, "reverse"))
            last = max(abs(letter) - 1 for letter in r.letters)
            self.checks[last].append(r.letters)
        self._forward: Dict[Tuple[int, ...], List[Tuple[int, ...]]] = {}
        self._reverse: Dict[Tuple[int, ...], List[Tuple[int, ...]]] = {}

        self.nodes = 0
        self.total = 0
        self.nontrivial = False
        self.witnesses: List[List[Tuple[int, ...]]] = []
        self.exhausted = False

    def forward(self, big_p: Tuple[int, ...]) -> List[Tuple[int, ...]]:
        """All Q with P Q P^-1 = Q^2, in lexicographic order"""
        if big_p not in self._forward:
            inv = _invert(big_p)
            self._forward[big_p] = [
                q for q in self.candidates
                if _compose(_compose(big_p, q), inv) == _compose(q, q)
            ]
        return self._forward[big_p]

    def reverse(self, q: Tuple[int, ...]) -> List[Tuple[int, ...]]:
        """All P with P Q P^-1 = Q^2, in lexicographic order"""
        if q not in self._reverse:
            q2 = _compose(q, q)
            self._reverse[q] = [
                big_p for big_p in self.candidates
                if _compose(_compose(big_p, q), _invert(big_p)) == q2
            ]
        return self._reverse[q]

    def options(self, k: int, assigned: List[Tuple[int, ...]]) -> Iterable[Tuple[int, ...]]:
        pools = []
        for other, direction in self.links[k]:
            pools.append(self.forward(assigned[other]) if direction == "forward" else self.reverse(assigned[other]))
        if not pools:
            return self.candidates
        pools.sort(key=len)
        rest: List[Set[Tuple[int, ...]]] = [set(pool) for pool in pools[1:]]
        return [c for c in pools[0] if all(c in s for s in rest)]

    def run(self, first_choices: Sequence[Tuple[int, ...]]):
        if self.ngens == 0:
            self.nodes = 1
            self._record([])
            return
        assigned: List[Tuple[int, ...]] = []
        self._extend(assigned, first_choices)

    def _extend(self, assigned: List[Tuple[int, ...]], choices: Iterable[Tuple[int, ...]]):
        k = len(assigned)
        for choice in choices:
            self.nodes += 1
            if self.nodes > self.budget:
                self.exhausted = True
                return
            assigned.append(choice)
            if self._passes(k, assigned):
                if k + 1 == self.ngens:
                    self._record(assigned)
                else:
                    self._extend(assigned, self.options(k + 1, assigned))
            assigned.pop()
            if self.exhausted:
                return

    def _passes(self, k: int, assigned: List[Tuple[int, ...]]) -> bool:
        if not self.checks[k]:
            return True
        inverses = [_invert(perm) for perm in assigned]
        return all(
            _evaluate(letters, assigned, inverses, self.degree) == self.identity
            for letters in self.checks[k]
        )

    def _record(self, assigned: List[Tuple[int, ...]]):
        self.total += 1
        if any(perm != self.identity for perm in assigned):
            self.nontrivial = True
            if len(self.witnesses) < self.max_witnesses:
                self.witnesses.append(list(assigned))


def _search_chunk(p: Presentation, degree: int, budget: int, max_witnesses: int,
                  first_choices: Optional[List[Tuple[int, ...]]]) -> Tuple[int, int, bool, List, bool]:
    searcher = _Searcher(p, degree, budget, max_witnesses)
    searcher.run(searcher.options(0, []) if first_choices is None else first_choices)
    return searcher.total, searcher.nodes, searcher.nontrivial, searcher.witnesses, searcher.exhausted


def _chunks(items: List, count: int) -> List[List]:
    size = -(-len(items) // count)
    return [items[i:i + size] for i in range(0, len(items), size)]


def search_homs(p: Presentation, degree: int, budget: int = 10000000,
                max_witnesses: int = 5, workers: int = 1) -> HomSearchReport:
    """Count every homomorphism p -> Sym(degree).

    With workers > 1 the first generator's candidates are split into
    contiguous chunks searched in separate processes, each chunk with the
    full budget; counts are summed and witnesses kept in search order.
    """
    if degree < 1:
        raise ValueError(f"Degree must be at least 1, got {degree}")
    if budget < 1:
        raise ValueError(f"Budget must be at least 1, got {budget}")
    started = time.perf_counter()
    if workers > 1 and p.generators:
        first = list(permutations(range(degree)))
        arguments = [(p, degree, budget, max_witnesses, chunk) for chunk in _chunks(first, workers)]
        with Pool(processes=workers) as pool:
            results = pool.starmap(_search_chunk, arguments)
    else:
        results = [_search_chunk(p, degree, budget, max_witnesses, None)]

    total = sum(r[0] for r in results)
    nodes = sum(r[1] for r in results)
    nontrivial = any(r[2] for r in results)
    exhausted = any(r[4] for r in results) or nodes > budget
    witnesses: List[Dict[str, Permutation]] = []
    for r in results:
        for assignment in r[3]:
            if len(witnesses) < max_witnesses:
                witnesses.append({g: Permutation(perm) for g, perm in zip(p.generators, assignment)})
    status = SearchStatus.BUDGET_EXHAUSTED if exhausted else SearchStatus.COMPLETE
    if exhausted:
        logger.warning("Search budget %d exhausted for %s into S_%d", budget, p.name, degree)
    logger.debug("%s -> S_%d: %d homs, %d nodes", p.name, degree, total, nodes)
    return HomSearchReport(p.name, degree, total, nontrivial, witnesses, nodes, status,
                           time.perf_counter() - started)


def higman_order_violations(witness: Mapping[str, Permutation], n: int) -> List[int]:
    """Indices i where ord(a_i) fails to divide 2^ord(a_{i-1}) - 1.

    Any hom Hig_n -> Sym(k) must satisfy every one of these divisibilities,
    so a non-empty result means a bug in the search or in the arithmetic.
    """
    orders = [witness[f"a@{i}"].order() for i in range(n)]
    return [i for i in range(n) if not divides_mersenne(orders[i], orders[i - 1])]
