from fractions import Fraction as F

import pytest

from ternlat.errors import BoxTooLarge
from ternlat.enumeration import (DominanceQuery, QueryMode,
                                 dominated_elements, elements_of_norm,
                                 enumerate_representations,
                                 is_indecomposable, sqrt_element,
                                 squarefree_witness, sum_of_squares_test,
                                 unsquare)


def coords_of(elements):
    return sorted(e.coords for e in elements)


def test_small_square_lists(ctx_sqrt2):
    ctx = ctx_sqrt2
    s = ctx.sqrt2
    lam = 2 + s
    lists = {
        "lam": (lam, {(0, 0)}),
        "3": (ctx.from_rational(3), {(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)}),
        "6": (ctx.from_rational(6),
              {(0, 0), (1, 0), (-1, 0), (2, 0), (-2, 0), (0, 1), (0, -1),
               (1, 1), (-1, -1), (1, -1), (-1, 1)}),
        "3lam": (3 * lam, {(0, 0), (1, 0), (-1, 0), (1, 1), (-1, -1)}),
        "3lambar": (3 * (2 - s), {(0, 0), (1, 0), (-1, 0), (1, -1), (-1, 1)}),
    }
    for name, (bound, expected) in lists.items():
        got = {e.coords for e in dominated_elements(ctx, bound)}
        assert got == expected, name


def test_interval_mode(ctx_sqrt2):
    ctx = ctx_sqrt2
    got = dominated_elements(ctx, ctx.from_rational(3), QueryMode.INTERVAL)
    assert coords_of(got) == sorted([(0, 0), (1, 0), (2, 0), (3, 0)])
    got4 = dominated_elements(ctx, ctx.from_rational(4), QueryMode.INTERVAL)
    # now 2 +- sqrt2 (embeddings 3.41 and 0.59) fit under the bound
    assert (2, 1) in {e.coords for e in got4}
    assert (2, -1) in {e.coords for e in got4}


def test_bound_must_be_positive(ctx_sqrt2):
    with pytest.raises(ValueError):
        DominanceQuery(ctx_sqrt2, ctx_sqrt2.sqrt2)


def test_symmetry(ctx_sqrt2):
    out = dominated_elements(ctx_sqrt2, ctx_sqrt2.from_rational(6))
    got = {e.coords for e in out}
    assert all(tuple(-c for c in t) in got for t in got)


def test_ceiling(table):
    ctx = table.context("K51200")
    with pytest.raises(BoxTooLarge):
        dominated_elements(ctx, ctx.from_rational(10 ** 8), ceiling=1000)


def test_sqrt_element(ctx_sqrt2):
    ctx = ctx_sqrt2
    s = ctx.sqrt2
    assert sqrt_element(ctx.from_rational(2)) == s
    assert sqrt_element(ctx.from_rational(3)) is None
    assert sqrt_element(6 + 4 * s) == 2 + s
    assert sqrt_element(ctx.zero) == ctx.zero


def test_sqrt_element_quartic(table):
    ctx = table.context("K7168")
    p7 = 5 + 3 * ctx.sqrt2
    root = sqrt_element(p7)
    assert root is not None and root * root == p7
    # and the root is the expected (1+sqrt2)*theta up to sign
    expected = (1 + ctx.sqrt2) * ctx.gen
    assert root in (expected, -expected)


def test_indecomposable(ctx_sqrt2):
    ctx = ctx_sqrt2
    lam = 2 + ctx.sqrt2
    res = is_indecomposable(lam)
    assert res.indecomposable and res.reason == "norm-bound"
    res2 = is_indecomposable(ctx.from_rational(2))
    assert not res2.indecomposable
    b, g = res2.decomposition
    assert b + g == ctx.from_rational(2)
    assert b.is_totally_positive() and g.is_totally_positive()


def test_indecomposable_sigma_mode(ctx_sqrt2):
    # -lam is sigma-indecomposable: its positive associate is indecomposable
    res = is_indecomposable(-(2 + ctx_sqrt2.sqrt2), sigma_mode=True)
    assert res.indecomposable


def test_squarefree_witness(ctx_sqrt2, ctx_q, ctx_sqrt3):
    ctx = ctx_sqrt2
    s = ctx.sqrt2
    assert squarefree_witness(5 + 3 * s) is None
    t, gamma = squarefree_witness(ctx.from_rational(2))
    assert t == s and t * t * gamma == ctx.from_rational(2)
    assert abs(t.norm()) > 1
    assert squarefree_witness(ctx_q.from_rational(2)) is None
    w3 = squarefree_witness(ctx_sqrt3.from_rational(2))
    assert w3 is not None
    t3, g3 = w3
    assert t3 * t3 * g3 == ctx_sqrt3.from_rational(2)


def test_squarefree_witness_quartic(table):
    ctx = table.context("K1600")  # contains sqrt2 and sqrt5
    assert squarefree_witness(5 + 3 * ctx.sqrt2) is None


def test_unsquare(ctx_sqrt2):
    ctx = ctx_sqrt2
    s = ctx.sqrt2
    lam = 2 + s
    mu, beta, k = unsquare(ctx.from_rational(2))
    assert (beta, k) == (lam, 1)
    assert mu == (1 + s) ** -2
    assert mu * beta ** 2 == ctx.from_rational(2)
    assert unsquare(lam) == (ctx.one, lam, 0)
    mu3, beta3, k3 = unsquare(6 + 4 * s)
    assert (mu3, beta3, k3) == (ctx.one, lam, 1)


def test_sum_of_squares(ctx_sqrt2, ctx_q):
    ctx = ctx_sqrt2
    dec = sum_of_squares_test(ctx.from_rational(2), 2)
    assert dec is not None
    assert sum((w * w for w in dec), ctx.zero) == ctx.from_rational(2)
    dec2 = sum_of_squares_test(2 * (2 + ctx.sqrt2), 3)
    assert dec2 is not None
    assert sum((w * w for w in dec2), ctx.zero) == 2 * (2 + ctx.sqrt2)
    assert sum_of_squares_test(ctx_q.from_rational(7), 3) is None
    assert sum_of_squares_test(ctx_q.from_rational(7), 4) is not None


def test_representations(ctx_q):
    one, zero = ctx_q.one, ctx_q.zero
    g2 = [[one, zero], [zero, one]]
    reps = enumerate_representations(g2, ctx_q.from_rational(2))
    assert len(reps) == 4
    g3 = [[one if i == j else zero for j in range(3)] for i in range(3)]
    assert enumerate_representations(g3, ctx_q.from_rational(7)) == []
    assert len(enumerate_representations(g3, ctx_q.from_rational(6))) == 24


def test_elements_of_norm(ctx_sqrt2):
    els = elements_of_norm(ctx_sqrt2, 7, F(5), totally_positive=True)
    assert {e.coords for e in els} == {(3, 1), (3, -1)}


def test_lambda_squarefree_depends_on_field(ctx_sqrt2, table):
    # 2+sqrt2 is squarefree in the quadratic field but becomes a square in
    # the field generated by its square root
    lam2 = 2 + ctx_sqrt2.sqrt2
    assert squarefree_witness(lam2) is None
    ctx = table.context("K2048")
    lam4 = 2 + ctx.sqrt2
    w = squarefree_witness(lam4)
    assert w is not None
    t, gamma = w
    assert t * t * gamma == lam4 and gamma.is_unit()
