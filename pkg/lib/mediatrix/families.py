from dataclasses import dataclass
from typing import *

import numpy as np

from .digraph import (
    Digraph,
    Verdict,
    closed_in_neighborhood,
    least_uncovered_pair,
    to_mask,
)
from .errors import ArgumentError, ConstructionError


class BlockFamily:
    """
    Ordered list of blocks over the points [0, n). Blocks are kept as sorted
    tuples, with bitset mirrors in `masks`. Repeated blocks are allowed and
    block order matters: SDRs are indexed by it.
    """

    def __init__(self, n: int, blocks: Iterable[Iterable[int]]) -> None:
        if n < 0:
            raise ArgumentError(f"point count must be non-negative, got {n}")
        normalized = []
        for i, block in enumerate(blocks):
            points = tuple(sorted(set(block)))
            if points and (points[0] < 0 or points[-1] >= n):
                raise ArgumentError(f"block {i} leaves the point range [0, {n})")
            normalized.append(points)
        self.n = n
        self.blocks: Tuple[Tuple[int, ...], ...] = tuple(normalized)
        self.masks: Tuple[int, ...] = tuple(to_mask(b) for b in self.blocks)

    @property
    def m(self) -> int:
        return len(self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BlockFamily)
            and self.n == other.n
            and self.blocks == other.blocks
        )

    def __hash__(self) -> int:
        return hash((self.n, self.blocks))

    def __repr__(self) -> str:
        return f"BlockFamily(n={self.n}, blocks={[list(b) for b in self.blocks]})"


@dataclass(frozen=True)
class DesignParams:
    n: int
    k: int
    lam: int
    b: int
    r: int

    def satisfies_identities(self) -> bool:
        return (
            self.b * self.k * (self.k - 1) == self.lam * self.n * (self.n - 1)
            and self.r * (self.k - 1) == self.lam * (self.b - 1)
        )


def incidence_matrix(f: BlockFamily) -> np.ndarray:
    """m x n 0/1 matrix, row i marks the points of block i."""
    matrix = np.zeros((f.m, f.n), dtype=np.int64)
    for i, block in enumerate(f.blocks):
        matrix[i, list(block)] = 1
    return matrix


def mcard(f: BlockFamily) -> int:
    return max((len(b) for b in f.blocks), default=0)


def point_degrees(f: BlockFamily) -> List[int]:
    return incidence_matrix(f).sum(axis=0).tolist()


def is_regular(f: BlockFamily) -> bool:
    """|X_i| = d(i) = r for every i."""
    if not is_symmetric(f) or f.n == 0:
        return False
    sizes = {len(b) for b in f.blocks}
    return len(sizes) == 1 and set(point_degrees(f)) == sizes


def is_symmetric(f: BlockFamily) -> bool:
    return f.m == f.n


def is_two_covering(f: BlockFamily) -> Verdict:
    pair = least_uncovered_pair(f.n, f.blocks)
    return Verdict(pair is None, pair)


def find_sdr(f: BlockFamily) -> Optional[Tuple[int, ...]]:
    """
    Maximum matching between blocks and points by augmenting paths, blocks in
    order and points ascending. Returns representatives indexed by block, or
    None when the matching does not saturate the blocks.
    """
    if f.m > f.n:
        return None
    owner = [-1] * f.n
    chosen = [-1] * f.m

    for root in range(f.m):
        seen = bytearray(f.n)
        # frames are [block, point iterator, point taken from the next frame]
        stack = [[root, iter(f.blocks[root]), -1]]
        free_point = -1
        while stack and free_point < 0:
            frame = stack[-1]
            for p in frame[1]:
                if seen[p]:
                    continue
                seen[p] = 1
                frame[2] = p
                if owner[p] < 0:
                    free_point = p
                else:
                    stack.append([owner[p], iter(f.blocks[owner[p]]), -1])
                break
            else:
                stack.pop()
        if free_point < 0:
            return None
        for block, _, p in stack:
            chosen[block] = p
            owner[p] = block

    return tuple(chosen)


def is_sdr(f: BlockFamily, sdr: Sequence[int]) -> bool:
    return (
        len(sdr) == f.m
        and len(set(sdr)) == f.m
        and all(x in block for x, block in zip(sdr, f.blocks))
    )


def is_mediated_family(f: BlockFamily) -> bool:
    return is_symmetric(f) and bool(is_two_covering(f)) and find_sdr(f) is not None


def check_symmetric_design(f: BlockFamily, k: int, lam: int) -> bool:
    if lam < 1 or not f.n > k >= 2:
        raise ArgumentError(f"need lambda >= 1 and n > k >= 2, got n={f.n} k={k} lambda={lam}")
    if not is_symmetric(f) or any(len(b) != k for b in f.blocks):
        return False
    matrix = incidence_matrix(f)
    pairs = matrix.T @ matrix
    np.fill_diagonal(pairs, lam)
    return bool((pairs == lam).all())


def design_params(f: BlockFamily) -> Optional[DesignParams]:
    """Reads (n, k, lambda, b, r) off a 2-design, or None if f is not one."""
    sizes = {len(b) for b in f.blocks}
    if len(sizes) != 1:
        return None
    k = sizes.pop()
    if not f.n > k >= 2:
        return None
    matrix = incidence_matrix(f)
    pairs = matrix.T @ matrix
    off_diagonal = pairs[~np.eye(f.n, dtype=bool)]
    degrees = np.diag(pairs)
    if len(set(off_diagonal.tolist())) != 1 or len(set(degrees.tolist())) != 1:
        return None
    lam = int(off_diagonal[0])
    if lam < 1:
        return None
    return DesignParams(n=f.n, k=k, lam=lam, b=f.m, r=int(degrees[0]))


def family_from_digraph(d: Digraph) -> BlockFamily:
    return BlockFamily(d.n, (closed_in_neighborhood(d, v) for v in range(d.n)))


def digraph_from_family(f: BlockFamily) -> Digraph:
    """
    Moves block i to position sdr[i], so that every block holds its own index,
    then reads N-[i] = X_i.
    """
    if not is_symmetric(f):
        raise ConstructionError(f"family has {f.m} blocks on {f.n} points")
    if all(i in block for i, block in enumerate(f.blocks)):
        sdr = tuple(range(f.n))
    else:
        sdr = find_sdr(f)
        if sdr is None:
            raise ConstructionError("family has no system of distinct representatives")
    placed: List[Tuple[int, ...]] = [()] * f.n
    for block, rep in zip(f.blocks, sdr):
        placed[rep] = block
    return Digraph.from_sets(
        f.n, ([p for p in block if p != v] for v, block in enumerate(placed))
    )
