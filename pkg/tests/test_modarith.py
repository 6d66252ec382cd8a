import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sympcond.errors import DimensionMismatch, ModulusMismatch, NonCoprimeFactors, NonDivisorLevel, NotInvertible
from sympcond.modarith import (
    KeyCodec,
    ModMatrix,
    Modulus,
    crt_join,
    crt_split,
    det,
    divisors,
    factorize,
    lookup,
    mat_inverse,
    mat_mul,
    prime_support_part,
    reduce_level,
    unit_group_generators,
    valuation,
)


def mats(dim, n):
    return st.lists(st.integers(0, n - 1), min_size=dim * dim, max_size=dim * dim).map(
        lambda xs: ModMatrix.from_flat(xs, n)
    )


def test_factorize_and_divisors():
    assert factorize(720) == ((2, 4), (3, 2), (5, 1))
    assert factorize(1) == ()
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert valuation(48, 2) == 4
    assert prime_support_part(360, 6) == 72


@pytest.mark.parametrize("q", [3, 4, 5, 8, 9, 16, 25, 27])
def test_unit_group_generators_generate(q):
    units = {x for x in range(q) if np.gcd(x, q) == 1}
    gens = unit_group_generators(q)
    reached = {1}
    frontier = [1]
    while frontier:
        nxt = [x * c % q for x in frontier for c in gens]
        frontier = [x for x in nxt if x not in reached]
        reached.update(frontier)
    assert reached == units


def test_modulus_prime_powers():
    m = Modulus.of(360)
    assert m.primes == [2, 3, 5]
    assert m.prime_powers == [8, 9, 5]
    with pytest.raises(ValueError):
        Modulus(12, ((2, 1), (3, 1)))


def test_mul_and_inverse_example():
    a = ModMatrix.from_rows([[1, 1], [0, 1]], 6)
    assert mat_mul(a, a).rows() == [[1, 2], [0, 1]]
    assert mat_inverse(a).rows() == [[1, 5], [0, 1]]


def test_inverse_rejects_non_unit_det():
    with pytest.raises(NotInvertible):
        mat_inverse(ModMatrix.from_rows([[2, 0], [0, 1]], 4))


def test_mismatches_raise():
    a = ModMatrix.identity(2, 4)
    with pytest.raises(DimensionMismatch):
        mat_mul(a, ModMatrix.identity(4, 4))
    with pytest.raises(ModulusMismatch):
        mat_mul(a, ModMatrix.identity(2, 6))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_inverse_exhaustive_2x2(n):
    # oracle: brute-force search for the inverse
    everything = [ModMatrix.from_flat(e, n) for e in itertools.product(range(n), repeat=4)]
    ident = ModMatrix.identity(2, n)
    for a in everything:
        if np.gcd(det(a), n) == 1:
            b = mat_inverse(a)
            assert a @ b == ident and b @ a == ident
        else:
            assert not any(a @ b == ident for b in everything)


@settings(max_examples=60, deadline=None)
@given(mats(3, 12), mats(3, 12), mats(3, 12))
def test_mul_associative(a, b, c):
    assert (a @ b) @ c == a @ (b @ c)


@settings(max_examples=60, deadline=None)
@given(mats(4, 36))
def test_crt_round_trip(a):
    x, y = crt_split(a, 4, 9)
    assert crt_join(x, y) == a
    assert x == reduce_level(a, 4) and y.n == 9


@settings(max_examples=40, deadline=None)
@given(mats(2, 36), mats(2, 36))
def test_crt_is_multiplicative(a, b):
    left = crt_split(a @ b, 4, 9)
    ra, rb = crt_split(a, 4, 9), crt_split(b, 4, 9)
    assert left == (ra[0] @ rb[0], ra[1] @ rb[1])


def test_crt_errors():
    a = ModMatrix.identity(2, 12)
    with pytest.raises(NonCoprimeFactors):
        crt_split(a, 2, 6)
    with pytest.raises(NonDivisorLevel):
        reduce_level(a, 5)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([2, 7, 300, 70000]), st.data())
def test_encode_round_trip(n, data):
    a = data.draw(mats(2, n))
    assert ModMatrix.decode(a.encode()) == a


def test_encode_is_injective_over_small_space():
    seen = {ModMatrix.from_flat(e, 3).encode() for e in itertools.product(range(3), repeat=4)}
    assert len(seen) == 81


@pytest.mark.parametrize("dim,n", [(2, 5), (4, 4), (4, 27)])
def test_keycodec_bijective_and_lookup(dim, n):
    rng = np.random.default_rng(0)
    arr = rng.integers(0, n, size=(500, dim, dim))
    codec = KeyCodec(dim, n)
    keys = codec.keys(arr)
    flat_unique = len({tuple(x.ravel()) for x in arr})
    assert len(np.unique(keys)) == flat_unique
    order = np.argsort(keys)
    sk = keys[order]
    idx = lookup(sk, keys)
    assert np.all(idx >= 0)
    assert np.array_equal(arr[order][idx], arr)
    assert lookup(sk[:0], keys[:3]).tolist() == [-1, -1, -1]
