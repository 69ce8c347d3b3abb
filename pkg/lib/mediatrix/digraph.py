import random
from dataclasses import dataclass
from typing import *

import numpy as np

from .errors import ArgumentError


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(points: Iterable[int]) -> int:
    mask = 0
    for p in points:
        mask |= 1 << p
    return mask


@dataclass(frozen=True)
class Verdict:
    """Yes, or the lexicographically least pair that is not covered."""

    ok: bool
    pair: Optional[Tuple[int, int]] = None

    def __bool__(self) -> bool:
        return self.ok


def least_uncovered_pair(
    n: int, groups: Iterable[Sequence[int]]
) -> Optional[Tuple[int, int]]:
    """
    Marks every pair inside every group in an n x n bit matrix and returns the
    least pair {a, b}, a < b, that no group contains.
    """
    if n < 2:
        return None
    covered = np.zeros((n, n), dtype=bool)
    for group in groups:
        idx = np.asarray(group, dtype=np.intp)
        if len(idx) > 1:
            covered[np.ix_(idx, idx)] = True
    missing = np.argwhere(np.triu(~covered, k=1))
    if len(missing) == 0:
        return None
    a, b = missing[0]
    return int(a), int(b)


class Digraph:
    """
    Loopless digraph on [0, n). in_nbrs[v] is the in-neighbour set N-(v)
    stored as an int bitset.
    """

    def __init__(self, n: int, in_nbrs: Optional[Sequence[int]] = None) -> None:
        if n < 0:
            raise ArgumentError(f"vertex count must be non-negative, got {n}")
        if in_nbrs is None:
            in_nbrs = [0] * n
        if len(in_nbrs) != n:
            raise ArgumentError(f"expected {n} in-neighbour sets, got {len(in_nbrs)}")
        full = (1 << n) - 1
        for v, mask in enumerate(in_nbrs):
            if mask < 0 or mask & ~full:
                raise ArgumentError(f"in-neighbours of {v} leave the range [0, {n})")
            if mask >> v & 1:
                raise ArgumentError(f"self-loop at vertex {v}")
        self.n = n
        self.in_nbrs: Tuple[int, ...] = tuple(in_nbrs)

    @classmethod
    def from_sets(cls, n: int, in_sets: Sequence[Iterable[int]]) -> "Digraph":
        masks = []
        for v, points in enumerate(in_sets):
            points = list(points)
            if any(p < 0 or p >= n for p in points):
                raise ArgumentError(f"in-neighbours of {v} leave the range [0, {n})")
            masks.append(to_mask(points))
        return cls(n, masks)

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[Tuple[int, int]]) -> "Digraph":
        masks = [0] * n
        for source, target in arcs:
            if not (0 <= source < n and 0 <= target < n):
                raise ArgumentError(f"arc ({source}, {target}) leaves the range [0, {n})")
            if source == target:
                raise ArgumentError(f"self-loop at vertex {source}")
            masks[target] |= 1 << source
        return cls(n, masks)

    def in_neighbors(self, v: int) -> List[int]:
        return list(iter_bits(self.in_nbrs[v]))

    def has_arc(self, source: int, target: int) -> bool:
        return bool(self.in_nbrs[target] >> source & 1)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Digraph)
            and self.n == other.n
            and self.in_nbrs == other.in_nbrs
        )

    def __hash__(self) -> int:
        return hash((self.n, self.in_nbrs))

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, arcs={arcs(self)})"


def in_degrees(d: Digraph) -> List[int]:
    return [mask.bit_count() for mask in d.in_nbrs]


def max_in_degree(d: Digraph) -> int:
    return max(in_degrees(d), default=0)


def arcs(d: Digraph) -> List[Tuple[int, int]]:
    return sorted(
        (source, target)
        for target in range(d.n)
        for source in iter_bits(d.in_nbrs[target])
    )


def closed_in_neighborhood(d: Digraph, v: int) -> List[int]:
    if not 0 <= v < d.n:
        raise IndexError(f"vertex {v} out of range [0, {d.n})")
    return list(iter_bits(d.in_nbrs[v] | 1 << v))


def is_mediated(d: Digraph) -> Verdict:
    pair = least_uncovered_pair(
        d.n, (closed_in_neighborhood(d, z) for z in range(d.n))
    )
    return Verdict(pair is None, pair)


def degree_sum_slack(d: Digraph) -> int:
    return sum(x * x + x for x in in_degrees(d)) - d.n * (d.n - 1)


def relabel(d: Digraph, perm: Sequence[int]) -> Digraph:
    """Vertex v becomes perm[v]."""
    if sorted(perm) != list(range(d.n)):
        raise ArgumentError("relabelling must be a permutation of the vertices")
    return Digraph.from_arcs(d.n, ((perm[s], perm[t]) for s, t in arcs(d)))


def with_arc(d: Digraph, source: int, target: int) -> Digraph:
    masks = list(d.in_nbrs)
    masks[target] |= 1 << source
    return Digraph(d.n, masks)


def without_arc(d: Digraph, source: int, target: int) -> Digraph:
    masks = list(d.in_nbrs)
    masks[target] &= ~(1 << source)
    return Digraph(d.n, masks)


def sink_star(n: int) -> Digraph:
    """Every other vertex dominates vertex 0; mediated with in-degree n-1."""
    return Digraph.from_arcs(n, ((v, 0) for v in range(1, n)))


def random_tournament(n: int, rng: random.Random) -> Digraph:
    return Digraph.from_arcs(
        n,
        (
            (a, b) if rng.random() < 0.5 else (b, a)
            for a in range(n)
            for b in range(a + 1, n)
        ),
    )


def random_mediated(n: int, rng: random.Random, density: float = 0.3) -> Digraph:
    masks = [0] * n
    for target in range(n):
        for source in range(n):
            if source != target and rng.random() < density:
                masks[target] |= 1 << source
    d = Digraph(n, masks)
    while True:
        verdict = is_mediated(d)
        if verdict:
            return d
        a, b = verdict.pair
        d = with_arc(d, a, b) if rng.random() < 0.5 else with_arc(d, b, a)
