"""
Arithmetic - orders of 2 modulo m, cyclic divisibility chains and the Folner constant
"""

import logging
from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Set, Tuple

from sympy import divisors, n_order

logger = logging.getLogger(__name__)


def ord2_mod(m: int) -> Optional[int]:
    """Multiplicative order of 2 mod m; None for even m > 1"""
    if m < 1:
        raise ValueError(f"Modulus must be positive, got {m}")
    if m == 1:
        return 1
    if m % 2 == 0:
        return None
    return int(n_order(2, m))


def divides_mersenne(d: int, r: int) -> bool:
    """d | 2^r - 1, decided through the order of 2"""
    order = ord2_mod(d)
    return order is not None and r % order == 0


class DivisibilityGraph:
    """Nodes 1..bound, edge r -> d for odd d with ord_d(2) | r"""

    def __init__(self, bound: int):
        if bound < 1:
            raise ValueError(f"Bound must be positive, got {bound}")
        self.bound = bound
        self.logger = logging.getLogger(__name__)
        self.order: Dict[int, int] = {d: ord2_mod(d) for d in range(1, bound + 1, 2)}
        self.by_order: Dict[int, List[int]] = defaultdict(list)
        for d, o in self.order.items():
            self.by_order[o].append(d)
        self._successors: Dict[int, List[int]] = {}

    def has_edge(self, r: int, d: int) -> bool:
        return d in self.order and r % self.order[d] == 0

    def successors(self, r: int) -> List[int]:
        if r not in self._successors:
            found = []
            for o in divisors(r):
                found.extend(self.by_order.get(o, ()))
            self._successors[r] = sorted(found)
        return self._successors[r]

    def cycle_candidates(self) -> Set[int]:
        """Nodes left after repeatedly dropping nodes with no live predecessor"""
        live = set(self.order)
        # live nodes that are multiples of each order
        count: Dict[int, int] = {o: 0 if o % 2 == 0 else (self.bound // o + 1) // 2 for o in self.by_order}
        queue = deque(o for o, c in count.items() if c == 0)
        dead_orders = set(queue)
        while queue:
            o = queue.popleft()
            for d in self.by_order[o]:
                if d not in live:
                    continue
                live.discard(d)
                for k in divisors(d):
                    if k in count and k not in dead_orders:
                        count[k] -= 1
                        if count[k] == 0:
                            dead_orders.add(k)
                            queue.append(k)
        self.logger.debug("Bound %d: %d cycle candidates after trimming", self.bound, len(live))
        return live


def order_tuple_search(n: int, bound: int) -> List[Tuple[int, ...]]:
    """All (r_0..r_{n-1}) in [1, bound] with r_j | 2^{r_{j-1}} - 1 cyclically"""
    if n < 1:
        raise ValueError(f"Cycle length must be positive, got {n}")
    graph = DivisibilityGraph(bound)
    live = graph.cycle_candidates()
    cycles: List[Tuple[int, ...]] = []

    def extend(path: List[int]):
        if len(path) == n:
            if graph.has_edge(path[-1], path[0]):
                cycles.append(tuple(path))
            return
        for d in graph.successors(path[-1]):
            if d in live:
                path.append(d)
                extend(path)
                path.pop()

    for start in sorted(live):
        extend([start])
    return cycles


def is_all_ones(cycles: List[Tuple[int, ...]]) -> bool:
    return len(cycles) == 1 and all(r == 1 for r in cycles[0])


@dataclass
class FolnerCheck:
    """Integer comparisons showing sqrt(2 - sqrt(3)) / 3 > 1/6"""
    steps: List[Tuple[str, int, int]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.steps) and all(lhs > rhs for _, lhs, rhs in self.steps)


def folner_steps() -> FolnerCheck:
    check = FolnerCheck()
    # 2 - sqrt(3) > 0, so the outer root is real
    check.steps.append(("2^2 > 3", 2 * 2, 3))
    # sqrt(2 - sqrt(3)) / 3 > 1/6  <=>  4 (2 - sqrt(3)) > 1  <=>  7 > 4 sqrt(3)
    check.steps.append(("7 > 0", 7, 0))
    check.steps.append(("7^2 > 4^2 * 3", 7 * 7, 4 * 4 * 3))
    return check


def folner_bound_check() -> bool:
    check = folner_steps()
    if not check.passed:
        logger.warning("Folner constant comparison failed: %s", check.steps)
    return check.passed


def folner_square() -> Tuple[int, int]:
    """(1/6)^2 as a numerator/denominator pair"""
    return 1, 6 * 6
