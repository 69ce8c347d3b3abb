import math
from dataclasses import dataclass
from functools import partial
from typing import *

from tqdm import tqdm

from .errors import ArgumentError, SearchBudgetExceeded
from .families import BlockFamily
from .utils import first_hit, logger, show_progress


@dataclass(frozen=True)
class DifferenceCover:
    n: int
    elems: Tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.elems)


def is_difference_cover(elems: Iterable[int], n: int) -> bool:
    elems = sorted(set(elems))
    if any(d < 0 or d >= n for d in elems):
        raise ArgumentError(f"difference cover elements must lie in [0, {n})")
    residues = {(a - b) % n for a in elems for b in elems}
    return len(residues) == n


def develop(cover: DifferenceCover) -> BlockFamily:
    """dev D = {c + D : c in Z_n}; block c has representative c + d_1."""
    if not is_difference_cover(cover.elems, cover.n):
        raise ArgumentError(f"{list(cover.elems)} is not a difference cover mod {cover.n}")
    n = cover.n
    return BlockFamily(n, ([(c + d) % n for d in cover.elems] for c in range(n)))


def default_k_budget(n: int, slack: int = 6) -> int:
    """ceil(sqrt(1.5 n)) + slack, in integers."""
    root = math.isqrt((3 * n + 1) // 2)
    if 2 * root * root < 3 * n:
        root += 1
    return root + slack


def least_size(n: int) -> int:
    """A k-set has at most k(k-1) nonzero differences."""
    k = 1
    while k * (k - 1) < n - 1:
        k += 1
    return k


class _Counter:
    def __init__(self, limit: Optional[int]) -> None:
        self.limit = limit
        self.nodes = 0

    def tick(self):
        self.nodes += 1
        if self.limit is not None and self.nodes > self.limit:
            raise SearchBudgetExceeded(
                f"difference cover search exceeded {self.limit} nodes", self.nodes
            )


def _search_branch(
    n: int, k: int, gap: int, node_limit: Optional[int] = None
) -> Optional[Tuple[int, ...]]:
    """
    Covers {0, gap, ...} of size k whose consecutive gaps (cyclically) are all
    at least `gap`. Every cover rotates into this form with gap = its smallest
    gap, and the lexicographically least cover is already in it.
    """
    full = (1 << n) - 1
    # potential[s]: most new residues gained by growing an s-set to a k-set
    potential = [sum(2 * j for j in range(s, k)) for s in range(k + 1)]
    counter = _Counter(node_limit)
    elems = [0, gap]

    def extend(covered: int) -> Optional[Tuple[int, ...]]:
        counter.tick()
        s = len(elems)
        if s == k:
            return tuple(elems) if covered == full else None
        for x in range(elems[-1] + gap, n - gap * (k - s) + 1):
            grown = covered
            for d in elems:
                grown |= 1 << (x - d) | 1 << (n - x + d)
            if (full & ~grown).bit_count() > potential[s + 1]:
                continue
            elems.append(x)
            found = extend(grown)
            elems.pop()
            if found is not None:
                return found
        return None

    covered = 1 | 1 << gap | 1 << (n - gap)
    if (full & ~covered).bit_count() > potential[2]:
        return None
    return extend(covered & full)


def search_size(
    n: int, k: int, node_limit: Optional[int] = None, workers: int = 1
) -> Optional[DifferenceCover]:
    """Lexicographically least difference cover of size exactly k, if any."""
    if k == 1 or n == 1:
        return DifferenceCover(n, (0,)) if n == 1 and k == 1 else None
    if k > n:
        return None
    hit = first_hit(
        partial(_search_branch, n, k, node_limit=node_limit),
        list(range(1, n // k + 1)),
        workers,
    )
    return None if hit is None else DifferenceCover(n, hit[1])


def min_difference_cover(
    n: int,
    k_budget: Optional[int] = None,
    node_limit: Optional[int] = None,
    workers: int = 1,
    progress: bool = False,
) -> Optional[DifferenceCover]:
    """
    Tries k = least_size(n), least_size(n)+1, ... up to k_budget and returns
    the first cover found: minimal k, then lexicographically least.
    """
    if n < 1:
        raise ArgumentError(f"modulus must be at least 1, got {n}")
    if k_budget is None:
        k_budget = default_k_budget(n)
    sizes = range(least_size(n), k_budget + 1)
    for k in tqdm(sizes, desc=f"diffcover n={n}", leave=False, disable=not show_progress(progress)):
        cover = search_size(n, k, node_limit=node_limit, workers=workers)
        if cover is not None:
            logger.debug(f"difference cover mod {n} of size {k}: {list(cover.elems)}")
            return cover
    logger.debug(f"no difference cover mod {n} with at most {k_budget} elements")
    return None
