import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sympcond.errors import CompositeModulus, NonDivisorLevel, UnsupportedRank
from sympcond.modarith import ModMatrix, reduce_level
from sympcond.subgroup import close
from sympcond.sympgroup import (
    SymplecticContext,
    alpha,
    batch_inverse,
    group_constant,
    gsp_generators,
    gsp_order,
    gsp_order_n,
    is_gsp,
    is_sp,
    kernel_generators,
    kernel_order,
    lift_element,
    multiplier,
    omega_array,
    sp_generators,
    sp_order,
    sp_order_n,
)


def brute_gsp_count(g, n):
    """Independent count: gamma^T Omega gamma = mu Omega for a unit mu."""
    d = 2 * g
    om = omega_array(g, n)
    units = [c for c in range(1, n) if np.gcd(c, n) == 1]
    total = sp = 0
    for e in itertools.product(range(n), repeat=d * d):
        a = np.array(e).reshape(d, d)
        form = a.T @ om @ a % n
        for c in units:
            if np.array_equal(form, c * om % n):
                total += 1
                sp += c == 1
    return total, sp


def test_order_examples():
    assert (sp_order(2, 3), gsp_order(2, 3)) == (51840, 103680)
    assert gsp_order(1, 2) == 6 and sp_order(1, 5) == 120
    assert gsp_order(2, 2) == sp_order(2, 2) == 720
    assert gsp_order_n(1, 4) == 96
    assert gsp_order_n(1, 6) == 288
    assert sp_order_n(2, 4) == 737280
    assert gsp_order_n(1, 27) == 314928 and gsp_order_n(1, 16) == 24576
    with pytest.raises(CompositeModulus):
        gsp_order(1, 4)


@pytest.mark.parametrize("n", [2, 3, 4, 6])
def test_gl2_orders_against_brute_force(n):
    assert brute_gsp_count(1, n) == (gsp_order_n(1, n), sp_order_n(1, n))


def test_membership_examples():
    ctx = SymplecticContext.of(1, 5)
    x = ModMatrix.from_rows([[2, 0], [0, 1]], 5)
    assert multiplier(x, ctx) == 2 and is_gsp(x, ctx) and not is_sp(x, ctx)
    assert multiplier(ModMatrix.from_rows([[1, 1], [1, 1]], 5), ctx) is None
    assert is_sp(ModMatrix.from_array(omega_array(2, 7), 7), SymplecticContext.of(2, 7))


def gsp_elements(g, n, k):
    ctx = SymplecticContext.of(g, n)
    G = close(ctx, gsp_generators(g, n))
    rng = np.random.default_rng(k)
    return ctx, G.elements[rng.integers(G.order, size=40)]


@pytest.mark.parametrize("g,n", [(1, 12), (2, 3), (2, 4)])
def test_multiplier_is_homomorphism_and_inverse(g, n):
    from sympcond.sympgroup import batch_multiplier

    ctx, xs = gsp_elements(g, n, 1)
    ys = xs[::-1]
    mx, my = batch_multiplier(xs, ctx), batch_multiplier(ys, ctx)
    mxy = batch_multiplier(np.matmul(xs, ys) % n, ctx)
    assert np.all(mx >= 0) and np.array_equal(mxy, mx * my % n)
    inv = batch_inverse(xs, ctx)
    ident = np.broadcast_to(np.eye(2 * g, dtype=np.int64), xs.shape)
    assert np.array_equal(np.matmul(xs, inv) % n, ident)


def test_generators_lie_in_groups():
    for g, n in [(1, 8), (2, 6), (3, 2)]:
        ctx = SymplecticContext.of(g, n)
        assert all(is_sp(x, ctx) for x in sp_generators(g, n))
        assert all(is_gsp(x, ctx) for x in gsp_generators(g, n))
    with pytest.raises(UnsupportedRank):
        sp_generators(4, 3)


@pytest.mark.parametrize("g,n", [(1, 2), (1, 3), (1, 4), (1, 8), (1, 9), (1, 12), (2, 2), (2, 3)])
def test_generators_reach_full_order(g, n):
    ctx = SymplecticContext.of(g, n)
    assert close(ctx, gsp_generators(g, n)).order == gsp_order_n(g, n)
    assert close(ctx, sp_generators(g, n)).order == sp_order_n(g, n)


def brute_kernel(g, n, m):
    d = 2 * g
    om = omega_array(g, n)
    count = 0
    for e in itertools.product(range(n // m), repeat=d * d):
        a = (np.eye(d, dtype=np.int64) + m * np.array(e).reshape(d, d)) % n
        form = a.T @ om @ a % n
        mu = form[0, g]
        if np.gcd(mu, n) == 1 and np.array_equal(form, mu * om % n):
            count += 1
    return count


@pytest.mark.parametrize("g,n,m", [(1, 4, 2), (1, 9, 3), (1, 8, 2), (1, 12, 2), (1, 6, 1)])
def test_kernel_generators_small(g, n, m):
    ctx = SymplecticContext.of(g, n)
    gens = kernel_generators(g, n, m)
    assert all(reduce_level(x, m) == ModMatrix.identity(2 * g, m) for x in gens) if m > 1 else True
    order = close(ctx, gens).order
    assert order == brute_kernel(g, n, m) == kernel_order(g, n, m)


def test_kernel_rank2():
    ctx = SymplecticContext.of(2, 4)
    assert close(ctx, kernel_generators(2, 4, 2)).order == 2**11 == kernel_order(2, 4, 2)
    with pytest.raises(NonDivisorLevel):
        kernel_generators(1, 8, 3)


def test_group_constants():
    assert group_constant(1).lg == 5 and group_constant(2).lg == 3 and group_constant(3).lg == 2
    assert alpha(2) == 2 and alpha(3) == 1


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([(1, 3, 27), (1, 4, 12), (2, 2, 8), (1, 6, 36), (2, 3, 18)]), st.integers(0, 10**6))
def test_lift_element(params, seed):
    g, m, n = params
    ctx_m = SymplecticContext.of(g, m)
    G = close(ctx_m, gsp_generators(g, m))
    x = G.element(int(np.random.default_rng(seed).integers(G.order)))
    y = lift_element(x, n, g)
    ctx_n = SymplecticContext.of(g, n)
    assert is_gsp(y, ctx_n)
    assert reduce_level(y, m) == x
