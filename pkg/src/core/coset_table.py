"""
Coset Table - Todd-Coxeter coset enumeration (HLT and Felsch strategies)

Cosets are integer ids; coset 0 is the subgroup coset. Each row has two
columns per generator, ``2*i`` for g_i and ``2*i + 1`` for g_i^-1, so the
inverse of column ``c`` is ``c ^ 1``. Coincidences are resolved with a
union-find forest whose representative is always the smaller id.
"""

import logging
from bisect import bisect_left
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from .presentation import Presentation
from .word import AlphabetMismatchError, Word

logger = logging.getLogger(__name__)

COMPACT_MIN_ROWS = 4096
PROGRESS_EVERY = 100000


class Strategy(Enum):
    """Coset enumeration strategies"""
    HLT = "hlt"
    FELSCH = "felsch"


class EnumerationStatus(Enum):
    """Outcome of an enumeration"""
    INDEX = "index"
    LIMIT_EXCEEDED = "limit_exceeded"


class _CosetLimitReached(Exception):
    pass


def letter_column(letter: int) -> int:
    return 2 * (abs(letter) - 1) + (1 if letter < 0 else 0)


def word_columns(w: Word) -> Tuple[int, ...]:
    return tuple(letter_column(letter) for letter in w.letters)


class CosetTable:
    """Partial coset action table under construction"""

    max_stack_size = 500

    def __init__(self, presentation: Presentation, subgroup: Sequence[Word] = (),
                 max_cosets: int = 1000000, compaction_ratio: float = 0.5):
        if max_cosets < 1:
            raise ValueError(f"max_cosets must be at least 1, got {max_cosets}")
        for w in subgroup:
            if w.alphabet != presentation.alphabet:
                raise AlphabetMismatchError(f"Subgroup word '{w}' is not over the alphabet of {presentation.name}")
        self.presentation = presentation
        self.subgroup = tuple(subgroup)
        self.max_cosets = max_cosets
        self.compaction_ratio = compaction_ratio
        self.logger = logging.getLogger(__name__)

        self.ncols = 2 * len(presentation.generators)
        self.relators = [word_columns(r.cyclically_reduced()) for r in presentation.relators]
        self.subgroup_cols = [word_columns(w) for w in self.subgroup]

        self.table: List[List[Optional[int]]] = [[None] * self.ncols]
        self.p: List[int] = [0]
        self.live = 1
        self.defined = 1
        self.max_live = 1
        self.compactions = 0
        self.record_deductions = False
        self.deduction_stack: List[Tuple[int, int]] = []

    # Union-find over coset ids

    def rep(self, k: int) -> int:
        p = self.p
        root = k
        while p[root] != root:
            root = p[root]
        while p[k] != root:
            p[k], k = root, p[k]
        return root

    def merge(self, k: int, lamda: int, q: deque):
        phi, psi = self.rep(k), self.rep(lamda)
        if phi != psi:
            mu, v = min(phi, psi), max(phi, psi)
            self.p[v] = mu
            self.live -= 1
            q.append(v)

    def is_live(self, alpha: int) -> bool:
        return self.p[alpha] == alpha

    @property
    def omega(self) -> List[int]:
        """Live coset ids in ascending order"""
        return [alpha for alpha in range(len(self.p)) if self.p[alpha] == alpha]

    # Table primitives

    def define(self, alpha: int, col: int):
        if self.live >= self.max_cosets:
            raise _CosetLimitReached()
        beta = len(self.table)
        self.table.append([None] * self.ncols)
        self.p.append(beta)
        self.table[alpha][col] = beta
        self.table[beta][col ^ 1] = alpha
        self.live += 1
        self.defined += 1
        if self.live > self.max_live:
            self.max_live = self.live
        if self.record_deductions:
            self.deduction_stack.append((alpha, col))
        if self.defined % PROGRESS_EVERY == 0:
            self.logger.debug("%s: %d cosets defined, %d live", self.presentation.name, self.defined, self.live)

    def scan(self, alpha: int, cols: Sequence[int], fill: bool = False):
        """Scan coset alpha under a word, making deductions and, with fill, definitions"""
        table = self.table
        f, i = alpha, 0
        b, j = alpha, len(cols) - 1
        while True:
            while i <= j and table[f][cols[i]] is not None:
                f = table[f][cols[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and table[b][cols[j] ^ 1] is not None:
                b = table[b][cols[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if j == i:
                table[f][cols[i]] = b
                table[b][cols[i] ^ 1] = f
                if self.record_deductions:
                    self.deduction_stack.append((f, cols[i]))
                return
            if not fill:
                return
            self.define(f, cols[i])

    def coincidence(self, alpha: int, beta: int):
        table = self.table
        q: deque = deque()
        self.merge(alpha, beta, q)
        while q:
            gamma = q.popleft()
            for col in range(self.ncols):
                delta = table[gamma][col]
                if delta is None:
                    continue
                table[delta][col ^ 1] = None
                mu, nu = self.rep(gamma), self.rep(delta)
                if table[mu][col] is not None:
                    self.merge(nu, table[mu][col], q)
                elif table[nu][col ^ 1] is not None:
                    self.merge(mu, table[nu][col ^ 1], q)
                else:
                    table[mu][col] = nu
                    table[nu][col ^ 1] = mu
                    if self.record_deductions:
                        self.deduction_stack.append((mu, col))

    # Felsch deduction processing

    def conjugates_by_column(self) -> List[List[Tuple[int, ...]]]:
        """Cyclic conjugates of the relators and their inverses, grouped by first column"""
        seen = set()
        for cols in self.relators:
            inverse = tuple(c ^ 1 for c in reversed(cols))
            for word in (cols, inverse):
                for k in range(len(word)):
                    seen.add(word[k:] + word[:k])
        grouped: List[List[Tuple[int, ...]]] = [[] for _ in range(self.ncols)]
        for word in sorted(seen):
            grouped[word[0]].append(word)
        return grouped

    def look_ahead(self):
        """Scan every live coset under every relator without defining"""
        for beta in self.omega:
            for cols in self.relators:
                if not self.is_live(beta):
                    break
                self.scan(beta, cols)

    def process_deductions(self, by_column: List[List[Tuple[int, ...]]]):
        table = self.table
        while self.deduction_stack:
            if len(self.deduction_stack) >= self.max_stack_size:
                del self.deduction_stack[:]
                self.record_deductions = False
                self.look_ahead()
                self.record_deductions = True
                continue
            alpha, col = self.deduction_stack.pop()
            if self.is_live(alpha):
                for cols in by_column[col]:
                    self.scan(alpha, cols)
                    if not self.is_live(alpha):
                        break
            if not self.is_live(alpha):
                continue
            beta = table[alpha][col]
            if beta is not None and self.is_live(beta):
                for cols in by_column[col ^ 1]:
                    self.scan(beta, cols)
                    if not self.is_live(beta):
                        break

    # Compaction

    def should_compact(self) -> bool:
        rows = len(self.table)
        return rows > COMPACT_MIN_ROWS and self.live < self.compaction_ratio * rows

    def compact(self, alpha: int = 0) -> int:
        """Renumber live cosets 0..live-1 keeping their order; returns alpha's new id.

        Only valid when the deduction stack is empty and no coincidence is
        being processed.
        """
        live = self.omega
        if len(live) == len(self.table):
            return alpha
        new_id: Dict[int, int] = {old: new for new, old in enumerate(live)}
        self.table = [
            [None if entry is None else new_id[entry] for entry in self.table[old]]
            for old in live
        ]
        self.p = list(range(len(live)))
        self.live = len(live)
        self.compactions += 1
        self.logger.debug("Compacted %s table to %d cosets", self.presentation.name, len(live))
        return bisect_left(live, alpha)

    # Enumeration drivers

    def run_hlt(self, start: int = 0):
        for cols in self.subgroup_cols:
            self.scan(0, cols, fill=True)
        alpha = start
        while alpha < len(self.table):
            if self.should_compact():
                alpha = self.compact(alpha)
            if self.is_live(alpha):
                for cols in self.relators:
                    self.scan(alpha, cols, fill=True)
                    if not self.is_live(alpha):
                        break
                if self.is_live(alpha):
                    for col in range(self.ncols):
                        if self.table[alpha][col] is None:
                            self.define(alpha, col)
            alpha += 1

    def run_felsch(self):
        by_column = self.conjugates_by_column()
        self.record_deductions = True
        try:
            for cols in self.subgroup_cols:
                self.scan(0, cols, fill=True)
            self.process_deductions(by_column)
            alpha = 0
            while alpha < len(self.table):
                if self.should_compact():
                    alpha = self.compact(alpha)
                if self.is_live(alpha):
                    for col in range(self.ncols):
                        if not self.is_live(alpha):
                            break
                        if self.table[alpha][col] is None:
                            self.define(alpha, col)
                            self.process_deductions(by_column)
                alpha += 1
        finally:
            self.record_deductions = False
            del self.deduction_stack[:]

    def is_complete(self) -> bool:
        return all(None not in self.table[alpha] for alpha in self.omega)

    def is_closed(self) -> bool:
        """Every relator traces a closed loop at every live coset, subgroup words at coset 0"""
        table = self.table
        checks = [(alpha, cols) for alpha in self.omega for cols in self.relators]
        checks += [(0, cols) for cols in self.subgroup_cols]
        for alpha, cols in checks:
            f = alpha
            for col in cols:
                f = table[f][col]
                if f is None:
                    return False
            if f != alpha:
                return False
        return self.is_complete()

    # Results

    @property
    def n(self) -> int:
        return self.live

    def representatives(self) -> Dict[int, Word]:
        """Breadth-first coset representative words, keyed by live coset id"""
        alphabet = self.presentation.alphabet
        parents: Dict[int, Tuple[int, int]] = {}
        order = [0]
        queue = deque([0])
        while queue:
            alpha = queue.popleft()
            for col in range(self.ncols):
                beta = self.table[alpha][col]
                if beta is None or beta == 0 or beta in parents:
                    continue
                parents[beta] = (alpha, col)
                order.append(beta)
                queue.append(beta)
        reps: Dict[int, Word] = {}
        for alpha in order:
            letters: List[int] = []
            node = alpha
            while node != 0:
                node, col = parents[node]
                letters.append((col // 2 + 1) * (-1 if col & 1 else 1))
            reps[alpha] = Word(alphabet, tuple(reversed(letters)))
        return reps

    def dump(self) -> str:
        """One line per live coset: ``id: g1 g1' g2 g2' ...`` with '-' for undefined"""
        lines = []
        for alpha in self.omega:
            cells = ["-" if entry is None else str(entry) for entry in self.table[alpha]]
            lines.append(f"{alpha}: " + " ".join(cells))
        return "\n".join(lines)


@dataclass
class EnumerationResult:
    """Outcome of a coset enumeration"""
    status: EnumerationStatus
    index: Optional[int]
    cosets_defined: int
    max_live: int
    strategy: Strategy
    table: Optional[CosetTable] = None

    @property
    def is_index(self) -> bool:
        return self.status == EnumerationStatus.INDEX


def enumerate_cosets(p: Presentation, subgroup: Sequence[Word] = (), max_cosets: int = 1000000,
                     strategy: Strategy = Strategy.HLT, compaction_ratio: float = 0.5) -> EnumerationResult:
    """Enumerate the cosets of <subgroup> in the group presented by p.

    An INDEX result is validated: the returned table is complete and every
    relator closes at every coset. Hitting max_cosets live cosets gives a
    LIMIT_EXCEEDED result.
    """
    strategy = Strategy(strategy)
    table = CosetTable(p, subgroup, max_cosets=max_cosets, compaction_ratio=compaction_ratio)
    try:
        if strategy == Strategy.FELSCH:
            table.run_felsch()
        else:
            table.run_hlt()
        while not table.is_closed():
            table.logger.debug("Table for %s not closed, running another fill pass", p.name)
            table.run_hlt()
    except _CosetLimitReached:
        logger.warning("Coset limit %d reached for %s after %d definitions",
                       max_cosets, p.name, table.defined)
        return EnumerationResult(EnumerationStatus.LIMIT_EXCEEDED, None, table.defined,
                                 table.max_live, strategy, table)
    table.compact()
    logger.debug("%s: index %d (%d defined, max live %d)", p.name, table.n, table.defined, table.max_live)
    return EnumerationResult(EnumerationStatus.INDEX, table.n, table.defined, table.max_live, strategy, table)

