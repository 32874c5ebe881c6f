import pytest

from ternlat import polys
from ternlat.cyclotomic import (alpha_beta_verify, cyclo_info, mobius_phi,
                                prime_power_base, subfield_test)
from ternlat.errors import UnsupportedK


def test_mobius_phi():
    assert mobius_phi(12) == (0, 4)
    assert mobius_phi(5) == (-1, 4)
    assert mobius_phi(30) == (-1, 8)
    assert mobius_phi(1) == (1, 1)
    assert mobius_phi(8) == (0, 4)


def test_prime_power_base():
    assert prime_power_base(9) == 3
    assert prime_power_base(8) == 2
    assert prime_power_base(12) is None
    assert prime_power_base(7) == 7


def test_cyclo_info_small():
    info8 = cyclo_info(8)
    assert info8.minpoly_cos == (-2, 0, 1)
    assert info8.field.degree == 2
    info5 = cyclo_info(5)
    assert info5.minpoly_cos == (-1, 1, 1)
    info12 = cyclo_info(12)
    assert info12.minpoly_cos == (-3, 0, 1)
    assert polys.cyclotomic(12) == [1, 0, -1, 0, 1]


def test_cyclo_rejects_small_k():
    with pytest.raises(UnsupportedK):
        cyclo_info(2)


def test_alpha_beta_structure():
    info = cyclo_info(7)
    assert info.alpha + info.beta == info.field.from_rational(4)
    assert info.alpha - info.beta == 2 * info.field.gen
    assert info.alpha.is_totally_positive()
    assert info.beta.is_totally_positive()


def test_alpha_beta_numbers():
    r9 = alpha_beta_verify(9)
    assert (r9.norm_alpha, r9.norm_beta) == (1, 3)
    r14 = alpha_beta_verify(14)
    assert r14.norm_alpha == 7
    r5 = alpha_beta_verify(5)
    assert r5.trace_alpha == 3
    r12 = alpha_beta_verify(12)
    assert r12.trace_alpha == 4       # twice the degree, mu(12) = 0


def test_cos_minpoly_straddles_its_root():
    # the largest root of the halved polynomial encloses 2cos(2pi/k)
    import math
    for k in (7, 9, 16, 30):
        p = polys.cos_minpoly(k)
        roots = polys.isolate_real_roots(p)
        top = max(roots, key=lambda iv: iv.hi)
        target = 2 * math.cos(2 * math.pi / k)
        assert float(top.lo) - 1e-9 <= target <= float(top.hi) + 1e-9
        val = polys.eval_interval(p, top)
        assert val.contains_zero()


def test_cyclotomic_values_at_units():
    # constant-term facts behind the norm formulas
    for k in range(2, 40):
        phi_at_1 = polys.eval_at(polys.cyclotomic(k), 1)
        p = prime_power_base(k)
        assert phi_at_1 == (p if p is not None else 1)


def test_subfield_tests(ctx_sqrt2, table):
    w = subfield_test(ctx_sqrt2, 8)
    assert w is not None and w * w == ctx_sqrt2.from_rational(2)
    assert subfield_test(ctx_sqrt2, 5) is None
    k1600 = table.context("K1600")
    w5 = subfield_test(k1600, 5)
    assert w5 is not None
    # root of x^2 + x - 1
    assert w5 * w5 + w5 - k1600.one == k1600.zero
    # self containment
    info = cyclo_info(20)
    assert subfield_test(info.field, 20) is not None


def test_generator_house_below_two():
    from fractions import Fraction as F
    info = cyclo_info(7)
    h = info.field.gen.house(F(1, 1000))
    assert h.hi < 2


def test_cyclotomic_value_at_minus_one():
    # constant-term fact behind the norm formula for the plus element
    for k in range(3, 40):
        phi_at_m1 = polys.eval_at(polys.cyclotomic(k), -1)
        p = prime_power_base(k // 2) if k % 2 == 0 else None
        expected = p if (k % 2 == 0 and p is not None) else 1
        assert phi_at_m1 == expected


def test_subfield_detects_own_generator(table):
    # the degree-4 field generated by sqrt(2+sqrt2) is the k=16 real
    # cyclotomic field; its generator must be found inside itself
    ctx = table.context("K2048")
    w = subfield_test(ctx, 16)
    assert w is not None
    acc = ctx.zero
    for c in reversed(polys.cos_minpoly(16)):
        acc = acc * w + ctx.from_rational(c)
    assert acc.is_zero
    # the k=20 real cyclotomic field has the same degree but is a
    # different field
    assert subfield_test(table.context("K1600"), 20) is None
