import time
from dataclasses import dataclass, field
from functools import partial
from typing import *

from .bounds import f_lower
from .digraph import Digraph, is_mediated, iter_bits, max_in_degree
from .errors import ArgumentError, BudgetError, ConstructionError, ResourceError, SearchBudgetExceeded
from .families import BlockFamily, digraph_from_family
from .utils import first_hit, logger

DEFAULT_MAX_N = 10


class SearchState:
    """
    Partial family X_0..X_{n-1} with i in X_i and |X_i| <= cap. rows[a] is the
    bitset of points already paired with a (a itself included).
    """

    def __init__(self, n: int, d: int) -> None:
        self.n = n
        self.cap = d + 1
        self.full = (1 << n) - 1
        self.blocks = [1 << i for i in range(n)]
        self.sizes = [1] * n
        self.rows = [1 << i for i in range(n)]
        self.uncovered = n * (n - 1) // 2
        self.room = n * self.cap * (self.cap - 1) // 2
        for p in range(1, d + 1):
            self.add(0, p)

    def copy(self) -> "SearchState":
        other = SearchState.__new__(SearchState)
        other.n, other.cap, other.full = self.n, self.cap, self.full
        other.blocks = list(self.blocks)
        other.sizes = list(self.sizes)
        other.rows = list(self.rows)
        other.uncovered, other.room = self.uncovered, self.room
        return other

    def add(self, j: int, p: int):
        fresh = self.blocks[j] & ~self.rows[p]
        for b in iter_bits(fresh):
            self.rows[b] |= 1 << p
        self.rows[p] |= fresh
        self.uncovered -= fresh.bit_count()
        self.room -= self.sizes[j]
        self.blocks[j] |= 1 << p
        self.sizes[j] += 1

    def least_uncovered(self) -> Optional[Tuple[int, int]]:
        for a in range(self.n):
            missing = self.full & ~self.rows[a] & ~((1 << (a + 1)) - 1)
            if missing:
                return a, (missing & -missing).bit_length() - 1
        return None

    def feasible(self) -> bool:
        # the pairs still coverable by the free slots
        if self.room < self.uncovered:
            return False
        for a in range(self.n):
            need = (self.full & ~self.rows[a]).bit_count()
            if not need:
                continue
            reach = 0
            for j in range(self.n):
                free = self.cap - self.sizes[j]
                if self.blocks[j] >> a & 1:
                    reach += free
                elif free >= 2:
                    reach += free - 1
            if reach < need:
                return False
        return True

    def family(self) -> BlockFamily:
        return BlockFamily(self.n, (iter_bits(mask) for mask in self.blocks))


class _Search:
    def __init__(self, node_limit: Optional[int], time_limit: Optional[float]) -> None:
        self.node_limit = node_limit
        self.deadline = None if time_limit is None else time.monotonic() + time_limit
        self.nodes = 0

    def tick(self):
        self.nodes += 1
        if self.node_limit is not None and self.nodes > self.node_limit:
            raise SearchBudgetExceeded(f"exact search exceeded {self.node_limit} nodes", self.nodes)
        if self.deadline is not None and self.nodes % 1024 == 0 and time.monotonic() > self.deadline:
            raise SearchBudgetExceeded("exact search ran out of time", self.nodes)

    def run(self, state: SearchState) -> Optional[SearchState]:
        self.tick()
        pair = state.least_uncovered()
        if pair is None:
            return state
        if not state.feasible():
            return None
        a, b = pair
        want = 1 << a | 1 << b
        # fullest blocks first
        for j in sorted(range(state.n), key=lambda j: (-state.sizes[j], j)):
            need = want & ~state.blocks[j]
            if state.sizes[j] + need.bit_count() > state.cap:
                continue
            child = state.copy()
            for p in iter_bits(need):
                child.add(j, p)
            found = self.run(child)
            if found is not None:
                return found
        return None


@dataclass
class SearchStats:
    """Nodes explored per first-block size d, in the order the sizes were consumed."""

    nodes: Dict[int, int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.nodes.values())

    def record(self, d: int, outcome: Tuple[Optional[BlockFamily], int]):
        self.nodes[d] = outcome[1]


def _attempt(
    n: int, d: int, node_limit: Optional[int] = None, time_limit: Optional[float] = None
) -> Tuple[Optional[BlockFamily], int]:
    search = _Search(node_limit, time_limit)
    found = search.run(SearchState(n, d))
    logger.debug(f"exact n={n} d={d}: {'found' if found else 'none'} after {search.nodes} nodes")
    return (None if found is None else found.family()), search.nodes


def search_first_block(
    n: int, d: int, node_limit: Optional[int] = None, time_limit: Optional[float] = None
) -> Optional[BlockFamily]:
    """
    Mediated families whose first block is {0, 1, ..., d} and whose blocks all
    have at most d+1 points. Any mediated digraph with maximum in-degree d
    relabels into this form: put a vertex of in-degree d at 0 and its
    in-neighbours at 1..d.
    """
    return _attempt(n, d, node_limit, time_limit)[0]


def decide(
    n: int,
    k: int,
    node_limit: Optional[int] = None,
    time_limit: Optional[float] = None,
    workers: int = 1,
    stats: Optional[SearchStats] = None,
) -> Optional[BlockFamily]:
    """
    A symmetric 2-covering family with i in X_i and mcard <= k+1, or None if
    there is none. Raises SearchBudgetExceeded when the answer is unknown.
    """
    if n < 1 or k < 0:
        raise ArgumentError(f"need n >= 1 and k >= 0, got n={n} k={k}")
    # below f(n) the degree-sum count already rules every family out
    sizes = list(range(f_lower(n), min(k, n - 1) + 1))
    hit = first_hit(
        partial(_attempt, n, node_limit=node_limit, time_limit=time_limit),
        sizes,
        workers,
        accept=lambda outcome: outcome[0] is not None,
        seen=None if stats is None else stats.record,
    )
    return None if hit is None else hit[1][0]


def mu_exact(
    n: int,
    k_cap: int,
    max_n: int = DEFAULT_MAX_N,
    node_limit: Optional[int] = None,
    time_limit: Optional[float] = None,
    workers: int = 1,
    stats: Optional[SearchStats] = None,
) -> Tuple[int, Digraph]:
    if not 1 <= n <= max_n:
        raise ResourceError(f"exact search is capped at n <= {max_n}, got n={n}")
    if k_cap < f_lower(n):
        raise ArgumentError(f"k_cap={k_cap} is below the lower bound f({n})={f_lower(n)}")

    stats = SearchStats() if stats is None else stats
    family = decide(
        n, k_cap, node_limit=node_limit, time_limit=time_limit, workers=workers, stats=stats
    )
    if family is None:
        raise BudgetError(f"no mediated digraph on {n} vertices with in-degree <= {k_cap}")

    mu = max(len(b) for b in family.blocks) - 1
    witness = digraph_from_family(family)
    if not is_mediated(witness) or max_in_degree(witness) > mu:
        raise ConstructionError(f"exact witness for n={n} failed independent verification")
    logger.info(f"mu({n}) = {mu} after {stats.total} nodes")
    return mu, witness
