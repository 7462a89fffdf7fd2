"""
Abelianize - relation matrices, integer Smith normal form and abelian invariants
"""

import logging
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

from .presentation import Presentation
from .word import exponent_sum

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IntMatrix:
    """Rectangular matrix of Python integers"""
    rows: Tuple[Tuple[int, ...], ...]
    ncols: int = field(default=-1)

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.rows)
        widths = {len(row) for row in rows}
        if len(widths) > 1:
            raise ValueError(f"Matrix rows have different lengths: {sorted(widths)}")
        ncols = widths.pop() if widths else max(self.ncols, 0)
        if self.ncols >= 0 and rows and ncols != self.ncols:
            raise ValueError(f"Rows have {ncols} columns, expected {self.ncols}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "ncols", ncols)

    @classmethod
    def of(cls, rows: Sequence[Sequence[int]], ncols: int = -1) -> "IntMatrix":
        return cls(tuple(tuple(row) for row in rows), ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    def to_lists(self) -> List[List[int]]:
        return [list(row) for row in self.rows]


@dataclass(frozen=True)
class SmithNormalForm:
    """Nonzero invariant factors d1 | d2 | ... plus the number of zero columns left over"""
    factors: Tuple[int, ...]
    rank_defect: int


@dataclass(frozen=True)
class AbelianInvariants:
    """Z^rank x Z/t1 x ... x Z/tk with t1 | t2 | ... and every ti >= 2"""
    rank: int
    torsion: Tuple[int, ...] = ()

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def __str__(self) -> str:
        if self.is_trivial:
            return "trivial"
        parts = [f"Z/{t}" for t in self.torsion]
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        return " x ".join(parts)


def relation_matrix(p: Presentation) -> IntMatrix:
    """One row per relator, one column per generator, entry = exponent sum"""
    rows = [[exponent_sum(r, g) for g in p.generators] for r in p.relators]
    return IntMatrix.of(rows, len(p.generators))


def _move_least_to_start(a: List[List[int]], s: int) -> bool:
    """Bring the smallest nonzero |entry| of the lower-right block to (s, s); False if the block is zero"""
    best = None
    for i in range(s, len(a)):
        for j in range(s, len(a[i])):
            if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                best = (i, j)
    if best is None:
        return False
    i, j = best
    if i != s:
        a[s], a[i] = a[i], a[s]
    if j != s:
        for row in a:
            row[s], row[j] = row[j], row[s]
    return True


def _clear_edging(a: List[List[int]], s: int):
    """Zero row s and column s beyond the pivot, re-pivoting on smaller remainders"""
    rows, cols = len(a), len(a[0])
    while True:
        for i in range(s + 1, rows):
            if a[i][s]:
                q = a[i][s] // a[s][s]
                a[i] = [x - q * y for x, y in zip(a[i], a[s])]
        for j in range(s + 1, cols):
            if a[s][j]:
                q = a[s][j] // a[s][s]
                for row in a:
                    row[j] -= q * row[s]
        edge = [(i, s) for i in range(s + 1, rows) if a[i][s]] + [(s, j) for j in range(s + 1, cols) if a[s][j]]
        if not edge:
            return
        i, j = min(edge, key=lambda ij: abs(a[ij[0]][ij[1]]))
        if j == s:
            a[s], a[i] = a[i], a[s]
        else:
            for row in a:
                row[s], row[j] = row[j], row[s]


def _find_non_multiple(a: List[List[int]], s: int):
    d = a[s][s]
    for i in range(s + 1, len(a)):
        for j in range(s + 1, len(a[i])):
            if a[i][j] % d:
                return i
    return None


def smith_normal_form(m: IntMatrix) -> SmithNormalForm:
    """Invariant factors by elementary row and column operations, smallest pivot first"""
    nrows, ncols = m.shape
    if nrows == 0 or ncols == 0:
        return SmithNormalForm((), ncols)
    a = m.to_lists()
    s = 0
    while s < min(nrows, ncols) and _move_least_to_start(a, s):
        while True:
            _clear_edging(a, s)
            bad = _find_non_multiple(a, s)
            if bad is None:
                break
            # fold a row the pivot does not divide into row s and reduce again
            a[s] = [x + y for x, y in zip(a[s], a[bad])]
        a[s][s] = abs(a[s][s])
        s += 1
    factors = tuple(a[k][k] for k in range(s))
    logger.debug("SNF of %dx%d matrix: %s", nrows, ncols, factors)
    return SmithNormalForm(factors, ncols - len(factors))


def abelian_invariants(p: Presentation) -> AbelianInvariants:
    """Invariants of Z^n modulo the row space of the relation matrix"""
    snf = smith_normal_form(relation_matrix(p))
    torsion = tuple(d for d in snf.factors if d > 1)
    return AbelianInvariants(snf.rank_defect, torsion)
