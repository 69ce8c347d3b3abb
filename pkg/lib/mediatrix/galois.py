import itertools
import math
from functools import lru_cache
from typing import *

import numpy as np

from .errors import ArgumentError, ResourceError
from .families import BlockFamily
from .utils import logger

DEFAULT_MAX_ORDER = 2**14


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power_decompose(q: int) -> Optional[Tuple[int, int]]:
    if q < 2:
        raise ArgumentError(f"prime power candidates start at 2, got {q}")
    p = next((d for d in range(2, math.isqrt(q) + 1) if q % d == 0), q)
    e = 0
    while q % p == 0:
        q //= p
        e += 1
    return (p, e) if q == 1 else None


def is_prime_power(q: int) -> bool:
    return q >= 2 and prime_power_decompose(q) is not None


# polynomials over GF(p) are coefficient tuples, lowest degree first


def _poly_mod(a: List[int], modulus: Sequence[int], p: int) -> List[int]:
    a = list(a)
    deg = len(modulus) - 1
    for i in range(len(a) - 1, deg - 1, -1):
        c = a[i] % p
        if c:
            for j in range(deg + 1):
                a[i - deg + j] = (a[i - deg + j] - c * modulus[j]) % p
    return [c % p for c in a[:deg]] + [0] * max(0, deg - len(a))


def _divides(divisor: Sequence[int], poly: Sequence[int], p: int) -> bool:
    return not any(_poly_mod(list(poly), divisor, p))


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Monic poly of degree e is irreducible iff no monic factor of degree <= e/2 divides it."""
    e = len(poly) - 1
    for deg in range(1, e // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            if _divides(low + (1,), poly, p):
                return False
    return True


def smallest_irreducible(p: int, e: int) -> Tuple[int, ...]:
    for low in itertools.product(range(p), repeat=e):
        poly = low + (1,)
        if is_irreducible(poly, p):
            return poly
    raise ArgumentError(f"no irreducible polynomial of degree {e} over GF({p})")


def _digits(code: int, p: int, e: int) -> List[int]:
    out = []
    for _ in range(e):
        code, r = divmod(code, p)
        out.append(r)
    return out


def _code(digits: Sequence[int], p: int) -> int:
    return sum(c * p**i for i, c in enumerate(digits))


def table_dtype(q: int) -> type:
    return np.uint16 if q <= 2**16 else np.int32


class FieldTables:
    """
    GF(p^e) as operation tables over element codes [0, q). The code of an
    element is its coefficient vector read as base-p digits, lowest degree
    first, so 0 is zero and 1 is one.
    """

    zero_code = 0
    one_code = 1

    def __init__(self, p: int, e: int, modulus: Tuple[int, ...]) -> None:
        self.p = p
        self.e = e
        self.q = p**e
        self.modulus = modulus
        q = self.q

        # q x q tables dominate memory, codes fit in 16 bits up to 2^16
        dtype = table_dtype(q)
        codes = np.arange(q, dtype=np.int32)
        add = np.zeros((q, q), dtype=dtype)
        for j in range(e):
            digit = (codes // p**j) % p
            add += ((digit[:, None] + digit[None, :]) % p).astype(dtype) * dtype(p**j)

        exp = self._powers(self._generator_mod_p() if e == 1 else self._generator())
        log = np.zeros(q, dtype=np.int32)
        log[exp] = np.arange(q - 1)
        mul = np.zeros((q, q), dtype=dtype)
        mul[1:, 1:] = exp[(log[1:, None] + log[None, 1:]) % (q - 1)]

        inv = np.zeros(q, dtype=np.int64)
        inv[1:] = exp[(-log[1:]) % (q - 1)]
        neg = np.argmin(add, axis=1)

        self.add = add
        self.mul = mul
        self.inv = inv
        self.neg = neg
        self.sub = add[codes[:, None], neg[None, :]]
        for table in (self.add, self.mul, self.inv, self.neg, self.sub):
            table.setflags(write=False)

    def _mul_code(self, a: int, b: int) -> int:
        da, db = _digits(a, self.p, self.e), _digits(b, self.p, self.e)
        prod = [0] * (2 * self.e - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        return _code(_poly_mod(prod, self.modulus, self.p), self.p)

    def _order(self, g: int, mul: Callable[[int, int], int]) -> int:
        x, order = g, 1
        while x != 1:
            x = mul(x, g)
            order += 1
        return order

    def _generator(self) -> int:
        for g in range(1, self.q):
            if self._order(g, self._mul_code) == self.q - 1:
                return g
        raise ArgumentError(f"modulus {self.modulus} does not define a field")

    def _generator_mod_p(self) -> int:
        p = self.p
        for g in range(1, p):
            if self._order(g, lambda a, b: a * b % p) == p - 1:
                return g
        raise ArgumentError(f"{p} is not prime")

    def _powers(self, g: int) -> np.ndarray:
        exp = np.zeros(self.q - 1, dtype=np.int64)
        x = 1
        for i in range(self.q - 1):
            exp[i] = x
            x = self._mul_code(x, g) if self.e > 1 else x * g % self.p
        return exp

    def __repr__(self) -> str:
        return f"FieldTables(p={self.p}, e={self.e}, modulus={self.modulus})"


@lru_cache(maxsize=32)
def build_field(p: int, e: int, max_order: int = DEFAULT_MAX_ORDER) -> FieldTables:
    if not is_prime(p):
        raise ArgumentError(f"field characteristic must be prime, got {p}")
    if e < 1:
        raise ArgumentError(f"extension degree must be at least 1, got {e}")
    if p**e > max_order:
        raise ResourceError(f"GF({p}^{e}) exceeds the field order cap {max_order}")
    modulus = smallest_irreducible(p, e)
    return FieldTables(p, e, modulus)


def check_field_axioms(field: FieldTables) -> Optional[str]:
    """Exhaustive check; returns a description of the first failed axiom."""
    add, mul, q = field.add, field.mul, field.q
    a = np.arange(q)
    if not (add == add.T).all():
        return "addition is not commutative"
    if not (mul == mul.T).all():
        return "multiplication is not commutative"
    if not (add[0] == a).all():
        return "0 is not an additive identity"
    if not (mul[1] == a).all():
        return "1 is not a multiplicative identity"
    if not (add[a, field.neg] == 0).all():
        return "an element has no additive inverse"
    if not (mul[a[1:], field.inv[1:]] == 1).all():
        return "a nonzero element has no multiplicative inverse"
    x, y, z = np.meshgrid(a, a, a, indexing="ij")
    if not (add[add[x, y], z] == add[x, add[y, z]]).all():
        return "addition is not associative"
    if not (mul[mul[x, y], z] == mul[x, mul[y, z]]).all():
        return "multiplication is not associative"
    if not (mul[x, add[y, z]] == add[mul[x, y], mul[x, z]]).all():
        return "multiplication does not distribute over addition"
    return None


class ProjectivePlane:
    def __init__(
        self,
        q: int,
        field: FieldTables,
        points: List[Tuple[int, int, int]],
        lines: BlockFamily,
    ) -> None:
        self.q = q
        self.field = field
        self.points = points
        self.lines = lines

    def lines_through(self, point: int) -> List[int]:
        return [i for i, line in enumerate(self.lines.blocks) if point in line]

    def __repr__(self) -> str:
        return f"ProjectivePlane(q={self.q}, points={len(self.points)})"


def normalized_triples(q: int) -> List[Tuple[int, int, int]]:
    """Nonzero triples whose leftmost nonzero coordinate is 1, in code order."""
    triples = [(0, 0, 1)]
    triples += [(0, 1, z) for z in range(q)]
    triples += [(1, y, z) for y in range(q) for z in range(q)]
    return triples


@lru_cache(maxsize=16)
def projective_plane(q: int, max_order: int = DEFAULT_MAX_ORDER) -> ProjectivePlane:
    decomposed = prime_power_decompose(q) if q >= 2 else None
    if decomposed is None:
        raise ArgumentError(f"projective planes are built for prime powers, got {q}")
    field = build_field(*decomposed, max_order=max_order)
    logger.debug(f"building PG(2,{q}) over {field}")

    points = normalized_triples(q)
    coords = np.array(points, dtype=np.int64)
    x, y, z = coords[:, 0], coords[:, 1], coords[:, 2]
    add, mul = field.add, field.mul

    lines = []
    for a, b, c in points:
        values = add[add[mul[a, x], mul[b, y]], mul[c, z]]
        lines.append(np.flatnonzero(values == 0).tolist())

    return ProjectivePlane(q, field, points, BlockFamily(len(points), lines))
