import math
import random
from dataclasses import dataclass
from typing import *

from .errors import ArgumentError, ConstructionError
from .families import BlockFamily, find_sdr
from .galois import DEFAULT_MAX_ORDER, is_prime, is_prime_power, projective_plane


@dataclass
class PlaneExtension:
    """
    A projective plane of order q grown by m points W and mq - t primed
    copies Z' of plane points Z. Points are numbered plane points first, then
    W, then Z' in the order of Z. Blocks are the plane lines (extended), then
    Q_1..Q_m, then R_z for z in Z.
    """

    q: int
    m: int
    t: int
    x: int
    B: List[int]
    W: List[int]
    Z: List[int]
    Z_prime: List[int]
    tau: Dict[int, int]
    family: BlockFamily
    sdr: Tuple[int, ...]

    @property
    def n(self) -> int:
        return self.family.n


def extension_size(q: int, m: int, t: int) -> int:
    return q * q + q + 1 + m * (q + 1) - t


def extend_plane(
    q: int,
    m: int,
    t: int,
    rng: Optional[random.Random] = None,
    max_order: int = DEFAULT_MAX_ORDER,
) -> PlaneExtension:
    if not is_prime_power(q):
        raise ArgumentError(f"q must be a prime power, got {q}")
    if not 1 <= m <= q + 1:
        raise ArgumentError(f"need 1 <= m <= q+1, got m={m} for q={q}")
    if not 0 <= t <= q:
        raise ArgumentError(f"need 0 <= t <= q, got t={t} for q={q}")

    plane = projective_plane(q, max_order=max_order)
    lines = plane.lines.blocks
    size = len(plane.points)

    x = 0
    B = plane.lines_through(x)
    tau_of = {p: i for i, line in enumerate(B, start=1) for p in lines[line] if p != x}

    pool = [p for line in B[:m] for p in lines[line] if p != x]
    if rng is None:
        Z = pool[: m * q - t]
    else:
        chosen = set(rng.sample(pool, m * q - t))
        Z = [p for p in pool if p in chosen]

    W = list(range(size, size + m))
    Z_prime = list(range(size + m, size + m + len(Z)))
    prime_of = dict(zip(Z, Z_prime))
    through_x = set(B)

    blocks: List[List[int]] = []
    for i, line in enumerate(lines):
        block = list(line)
        if i in through_x:
            block += W
        else:
            block += [prime_of[z] for z in line if z in prime_of]
        blocks.append(block)
    for i in range(1, m + 1):
        blocks.append(W + [prime_of[z] for z in Z if tau_of[z] == i])
    for z in Z:
        blocks.append([p for p in lines[B[tau_of[z] - 1]] if p != z] + [prime_of[z]])

    family = BlockFamily(size + m + len(Z), blocks)
    assert family.m == family.n == extension_size(q, m, t)
    sdr = find_sdr(family)
    if sdr is None:
        raise ConstructionError(f"extension ({q}, {m}, {t}) has no SDR")

    return PlaneExtension(
        q=q,
        m=m,
        t=t,
        x=x,
        B=B,
        W=W,
        Z=Z,
        Z_prime=Z_prime,
        tau={z: tau_of[z] for z in Z},
        family=family,
        sdr=sdr,
    )


def prime_powers_upto(limit: int) -> List[int]:
    return [q for q in range(2, limit + 1) if is_prime_power(q)]


def extension_parameters(n: int) -> List[Tuple[int, int, int]]:
    """
    For every prime power q with q^2+q+1 < n <= q^2+q+1+(q+1)^2, the (q, m, t)
    with n = q^2+q+1+m(q+1)-t and the least m.
    """
    out = []
    for q in prime_powers_upto(math.isqrt(n)):
        extra = n - (q * q + q + 1)
        if extra <= 0:
            continue
        m = -(-extra // (q + 1))
        if m <= q + 1:
            out.append((q, m, m * (q + 1) - extra))
    return out


def plane_order(n: int) -> Optional[int]:
    """q when n = q^2+q+1 for a prime power q."""
    q = (math.isqrt(4 * n - 3) - 1) // 2 if n >= 1 else 0
    if q >= 2 and q * q + q + 1 == n and is_prime_power(q):
        return q
    return None


def consecutive_prime_bound(n: int) -> Optional[int]:
    """
    p + ceil(d/(p+1)) with p the largest prime such that p^2+p+1 <= n and
    d = n - (p^2+p+1); None when the extension would need m > p+1.
    """
    p = max((p for p in range(2, math.isqrt(n) + 1) if is_prime(p) and p * p + p + 1 <= n), default=None)
    if p is None:
        return None
    m = -(-(n - p * p - p - 1) // (p + 1))
    return p + m if m <= p + 1 else None
