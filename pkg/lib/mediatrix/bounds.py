import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import *

import numpy as np
from pydantic import BaseModel
from tqdm import tqdm

from .config import MediatrixConfig
from .constructions import (
    consecutive_prime_bound,
    extend_plane,
    extension_parameters,
    plane_order,
)
from .difference_cover import (
    DifferenceCover,
    default_k_budget,
    develop,
    least_size,
    search_size,
)
from .digraph import sink_star
from .errors import ArgumentError, SearchBudgetExceeded
from .families import BlockFamily, family_from_digraph, incidence_matrix
from .galois import projective_plane
from .utils import logger, show_progress

# tie-break order between methods reaching the same value
METHOD_ORDER = ["plane", "plane-extension", "diff-cover", "exact", "trivial"]


def f_lower(n: int) -> int:
    """Least d >= 0 with d^2 + d >= n - 1, i.e. ceil((sqrt(4n-3) - 1) / 2)."""
    if n < 1:
        raise ArgumentError(f"f(n) is defined for n >= 1, got {n}")
    d = max(0, (math.isqrt(4 * n - 3) - 1) // 2)
    while d * d + d < n - 1:
        d += 1
    return d


def is_sum_of_two_squares(q: int) -> bool:
    for a in range(math.isqrt(q) + 1):
        rest = q - a * a
        if math.isqrt(rest) ** 2 == rest:
            return True
    return False


def bruck_ryser_excludes(q: int) -> bool:
    if q < 2:
        raise ArgumentError(f"plane orders start at 2, got {q}")
    return q % 4 in (1, 2) and not is_sum_of_two_squares(q)


def plane_known_nonexistent(q: int) -> bool:
    # order 10 was ruled out by exhaustive computer search
    return bruck_ryser_excludes(q) or q == 10


def plane_status(q: int) -> Literal["exists", "nonexistent", "unknown"]:
    if plane_known_nonexistent(q):
        return "nonexistent"
    if plane_order(q * q + q + 1) == q:
        return "exists"
    return "unknown"


def central_order(n: int) -> Optional[int]:
    """q >= 2 with n = q^2+q+1, prime power or not."""
    if n < 7:
        return None
    q = (math.isqrt(4 * n - 3) - 1) // 2
    return q if q * q + q + 1 == n else None


def strict_gap_flag(n: int) -> bool:
    if n < 1:
        raise ArgumentError(f"n must be at least 1, got {n}")
    q = central_order(n)
    return q is not None and plane_known_nonexistent(q)


def mu_lower(n: int) -> int:
    return f_lower(n) + (1 if strict_gap_flag(n) else 0)


def verify_extremal_family_is_plane(f: BlockFamily, q: int) -> bool:
    """Every block has q+1 points and any two blocks meet in exactly one point."""
    if f.n != q * q + q + 1 or f.m != f.n:
        raise ArgumentError(
            f"not applicable: needs {q * q + q + 1} blocks on {q * q + q + 1} points, "
            f"got {f.m} blocks on {f.n}"
        )
    if any(len(b) != q + 1 for b in f.blocks):
        return False
    matrix = incidence_matrix(f)
    meets = matrix @ matrix.T
    np.fill_diagonal(meets, 1)
    return bool((meets == 1).all())


@dataclass
class UpperBound:
    n: int
    value: int
    method: str
    params: Dict[str, Any] = field(default_factory=dict)
    family: Optional[BlockFamily] = field(default=None, repr=False)

    @property
    def label(self) -> str:
        if self.method == "plane":
            return f"plane({self.params['q']})"
        if self.method == "plane-extension":
            return "plane-extension({q},{m},{t})".format(**self.params)
        if self.method == "diff-cover":
            return f"diff-cover({self.params['k']})"
        return self.method

    def build_family(self, config: Optional[MediatrixConfig] = None) -> BlockFamily:
        """Rebuilds the witness; the result is a mediated family with mcard <= value + 1."""
        if self.family is not None:
            return self.family
        config = config or MediatrixConfig()
        max_order = config.galois.max_order
        if self.method == "plane":
            self.family = projective_plane(self.params["q"], max_order=max_order).lines
        elif self.method == "plane-extension":
            p = self.params
            self.family = extend_plane(p["q"], p["m"], p["t"], max_order=max_order).family
        elif self.method == "diff-cover":
            self.family = develop(DifferenceCover(self.n, tuple(self.params["elems"])))
        elif self.method == "trivial":
            self.family = family_from_digraph(sink_star(self.n))
        else:
            raise ArgumentError(f"cannot rebuild a witness for method {self.method!r}")
        return self.family


def closed_form_bounds(n: int) -> List[UpperBound]:
    out = [UpperBound(n, max(n - 1, 0), "trivial")]
    q = plane_order(n)
    if q is not None:
        out.append(UpperBound(n, q, "plane", {"q": q}))
    for q, m, t in extension_parameters(n):
        out.append(UpperBound(n, q + m, "plane-extension", {"q": q, "m": m, "t": t}))
    return out


def _pick(candidates: List[UpperBound]) -> UpperBound:
    return min(candidates, key=lambda b: (b.value, METHOD_ORDER.index(b.method)))


def diffcover_bound(n: int, below: int, config: MediatrixConfig) -> Optional[UpperBound]:
    """
    A cyclic difference cover with k elements gives k - 1, so only k <= below
    can improve on `below`. A size whose search runs out of nodes is skipped,
    the bound stays valid but may not be the least.
    """
    budget = min(below, default_k_budget(n, config.diffcover.budget_slack))
    for k in range(least_size(n), budget + 1):
        try:
            cover = search_size(
                n, k, node_limit=config.diffcover.node_limit, workers=config.diffcover.workers
            )
        except SearchBudgetExceeded as e:
            logger.info(f"n={n}: difference cover search at k={k} gave up: {e}")
            continue
        if cover is not None:
            return UpperBound(n, k - 1, "diff-cover", {"k": k, "elems": list(cover.elems)})
    return None


def exact_bound(n: int, below: int, config: MediatrixConfig) -> Optional[UpperBound]:
    from .exact import mu_exact

    try:
        mu, witness = mu_exact(
            n,
            below,
            max_n=config.exact.max_n,
            node_limit=config.exact.node_limit,
            time_limit=config.exact.time_limit,
            workers=config.exact.workers,
        )
    except SearchBudgetExceeded as e:
        logger.info(f"n={n}: exact search gave up: {e}")
        return None
    return UpperBound(n, mu, "exact", {"k": mu}, family=family_from_digraph(witness))


def best_upper_bound(
    n: int, effort: Optional[int] = None, config: Optional[MediatrixConfig] = None
) -> UpperBound:
    """
    Tier 0 uses closed forms only, tier 1 adds the difference cover search
    (n <= diffcover.max_n), tier 2 adds the exact solver (n <= exact.max_n).
    Searches only run while the bound is above mu_lower(n).
    """
    if n < 1:
        raise ArgumentError(f"n must be at least 1, got {n}")
    config = config or MediatrixConfig()
    effort = config.bounds.default_effort if effort is None else effort
    lower = mu_lower(n)

    best = _pick(closed_form_bounds(n))
    if effort >= 1 and best.value > lower and n <= config.diffcover.max_n:
        found = diffcover_bound(n, best.value, config)
        if found is not None:
            best = _pick([best, found])
    if effort >= 2 and best.value > lower and n <= config.exact.max_n:
        found = exact_bound(n, best.value, config)
        if found is not None:
            best = _pick([best, found])
    return best


class BoundsRecord(BaseModel):
    n: int
    f_lower: int
    mu_lower: int
    mu_upper: int
    upper_method: str
    gap: int
    strict_gap_proved: bool
    witness_ref: Optional[str] = None


def bounds_record(
    n: int, effort: Optional[int] = None, config: Optional[MediatrixConfig] = None
) -> BoundsRecord:
    bound = best_upper_bound(n, effort, config)
    lower = f_lower(n)
    return BoundsRecord(
        n=n,
        f_lower=lower,
        mu_lower=mu_lower(n),
        mu_upper=bound.value,
        upper_method=bound.label,
        gap=bound.value - lower,
        strict_gap_proved=strict_gap_flag(n),
        witness_ref=f"{bound.label}@n={n}",
    )


def bounds_table(
    lo: int,
    hi: int,
    effort: Optional[int] = None,
    config: Optional[MediatrixConfig] = None,
    workers: int = 1,
    progress: bool = False,
) -> List[BoundsRecord]:
    """One record per n in [lo, hi], always in ascending n."""
    if not 1 <= lo <= hi:
        raise ArgumentError(f"need 1 <= from <= to, got [{lo}, {hi}]")
    config = config or MediatrixConfig()
    ns = range(lo, hi + 1)
    compute = partial(bounds_record, effort=effort, config=config)
    bar = dict(total=len(ns), desc="bounds", disable=not show_progress(progress))
    if workers <= 1:
        return [compute(n) for n in tqdm(ns, **bar)]
    with ProcessPoolExecutor(max_workers=workers) as executor:
        return list(tqdm(executor.map(compute, ns), **bar))


def monotonicity_violations(records: Sequence[BoundsRecord]) -> List[int]:
    """n where mu_upper(n) < mu_lower(n-1), which would prove mu(n) < mu(n-1)."""
    out = []
    for prev, cur in zip(records, records[1:]):
        if cur.n == prev.n + 1 and cur.mu_upper < prev.mu_lower:
            logger.warning(f"mu({cur.n}) < mu({prev.n}): brackets cross")
            out.append(cur.n)
    return out


class RatioReport(BaseModel):
    rows: int
    max_ratio: float
    max_ratio_n: int
    max_gap: int
    max_gap_n: int
    # the same ratio for the primes-only closed form, where it applies
    max_prime_ratio: Optional[float] = None
    max_prime_ratio_n: Optional[int] = None


def ratio_report(records: Sequence[BoundsRecord]) -> RatioReport:
    rated = [r for r in records if r.f_lower > 0]
    if not rated:
        raise ArgumentError("the ratio report needs a row with f(n) > 0")
    worst = max(rated, key=lambda r: (r.mu_upper / r.f_lower, -r.n))
    widest = max(records, key=lambda r: (r.gap, -r.n))

    primes = [(consecutive_prime_bound(r.n), r) for r in rated]
    primes = [(b / r.f_lower, r.n) for b, r in primes if b is not None]
    prime_ratio, prime_n = max(primes, key=lambda x: (x[0], -x[1])) if primes else (None, None)

    return RatioReport(
        rows=len(records),
        max_ratio=worst.mu_upper / worst.f_lower,
        max_ratio_n=worst.n,
        max_gap=widest.gap,
        max_gap_n=widest.n,
        max_prime_ratio=prime_ratio,
        max_prime_ratio_n=prime_n,
    )
