import itertools
import random

import pytest

from lib.mediatrix.bounds import closed_form_bounds
from lib.mediatrix.constructions import (
    consecutive_prime_bound,
    extend_plane,
    extension_parameters,
    extension_size,
    plane_order,
    prime_powers_upto,
)
from lib.mediatrix.digraph import is_mediated, max_in_degree
from lib.mediatrix.errors import ArgumentError
from lib.mediatrix.families import (
    digraph_from_family,
    find_sdr,
    is_mediated_family,
    is_sdr,
    is_symmetric,
    is_two_covering,
    mcard,
)


def test_extension_2_1_0():
    ext = extend_plane(2, 1, 0)
    assert ext.n == 10
    assert mcard(ext.family) <= 4
    assert is_mediated_family(ext.family)
    d = digraph_from_family(ext.family)
    assert is_mediated(d)
    assert max_in_degree(d) <= 3


def test_extension_without_primed_points():
    ext = extend_plane(2, 1, 2)
    assert ext.n == 8
    assert ext.Z == [] and ext.Z_prime == []
    assert ext.W == [7]
    assert ext.family.m == 8
    # the three lines through x pick up w, the other four stay as they are
    sizes = sorted(len(b) for b in ext.family.blocks[:7])
    assert sizes == [3, 3, 3, 3, 4, 4, 4]
    assert ext.family.blocks[7] == (7,)
    assert mcard(ext.family) == 4
    assert is_mediated_family(ext.family)


def test_extension_3_2_1():
    ext = extend_plane(3, 2, 1)
    assert ext.n == 13 + 8 - 1 == 20
    assert mcard(ext.family) <= 6
    assert is_two_covering(ext.family)
    assert len(ext.Z) == 2 * 3 - 1
    assert all(1 <= ext.tau[z] <= 2 for z in ext.Z)


def test_extension_layout():
    ext = extend_plane(3, 2, 0)
    assert ext.x == 0
    assert len(ext.B) == 4
    size = 13
    assert ext.W == [size, size + 1]
    assert ext.Z_prime == list(range(size + 2, size + 2 + len(ext.Z)))
    assert is_sdr(ext.family, ext.sdr)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_extension_sweep(q):
    for m, t in itertools.product(range(1, q + 2), range(q + 1)):
        ext = extend_plane(q, m, t)
        f = ext.family
        assert f.n == extension_size(q, m, t)
        assert is_symmetric(f)
        assert is_two_covering(f)
        assert find_sdr(f) is not None
        assert mcard(f) <= q + 1 + m
        d = digraph_from_family(f)
        assert is_mediated(d)
        assert max_in_degree(d) <= q + m


def test_random_primed_points(rng):
    for _ in range(30):
        q = rng.choice([2, 3, 4])
        m = rng.randint(1, q + 1)
        t = rng.randint(0, q)
        ext = extend_plane(q, m, t, rng=random.Random(rng.random()))
        assert len(ext.Z) == m * q - t
        assert is_mediated_family(ext.family)
        assert mcard(ext.family) <= q + 1 + m


@pytest.mark.parametrize("q, m, t", [(6, 1, 0), (2, 0, 0), (2, 4, 0), (2, 1, 3), (2, 1, -1)])
def test_extension_rejects_bad_parameters(q, m, t):
    with pytest.raises(ArgumentError):
        extend_plane(q, m, t)


def test_extension_parameters():
    assert extension_parameters(10) == [(2, 1, 0)]
    assert extension_parameters(8) == [(2, 1, 2)]
    assert extension_parameters(7) == []
    for n in range(8, 400):
        for q, m, t in extension_parameters(n):
            assert extension_size(q, m, t) == n
            assert 1 <= m <= q + 1 and 0 <= t <= q


def test_plane_order():
    assert plane_order(7) == 2
    assert plane_order(57) == 7
    assert plane_order(43) is None
    assert plane_order(10) is None
    assert plane_order(1) is None


def test_prime_powers_upto():
    assert prime_powers_upto(10) == [2, 3, 4, 5, 7, 8, 9]


def test_consecutive_prime_bound():
    assert consecutive_prime_bound(10) == 3
    assert consecutive_prime_bound(6) is None
    for n in range(7, 500):
        bound = consecutive_prime_bound(n)
        if bound is not None:
            assert bound >= min(b.value for b in closed_form_bounds(n))
