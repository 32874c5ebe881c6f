from fractions import Fraction as F

import pytest

from ternlat.errors import (DivisionByZero, FieldDataError, NoSuchUnit,
                            NotARing, NotTotallyReal)
from ternlat.numberfield import (Dominance, FieldRecord, load_field,
                                 sqrt2_context, unit_square_canonical)


def test_load_rejects_imaginary():
    rec = FieldRecord("bad", 2, (1, 0, 1), ((F(1), F(0)), (F(0), F(1))), 4)
    with pytest.raises(NotTotallyReal):
        load_field(rec)


def test_load_rejects_non_ring():
    # {1, x/2} is not multiplicatively closed in Q[x]/(x^2-2)
    rec = FieldRecord("bad", 2, (-2, 0, 1),
                      ((F(1), F(0)), (F(0), F(1, 2))), 2)
    with pytest.raises(NotARing):
        load_field(rec)


def test_load_rejects_class_number_inconsistency():
    rec = FieldRecord("bad", 2, (-2, 0, 1), ((F(1), F(0)), (F(0), F(1))), 8,
                      h=2, h_plus=3)
    with pytest.raises(FieldDataError):
        load_field(rec)


def test_quartic_field_accepted(table):
    ctx = table.context("K2048")
    assert ctx.degree == 4
    assert len(ctx.roots()) == 4
    assert ctx.sqrt2 * ctx.sqrt2 == ctx.from_rational(2)


def test_arithmetic_identities(ctx_sqrt2):
    s = ctx_sqrt2.sqrt2
    lam = 2 + s
    assert lam * (2 - s) == ctx_sqrt2.from_rational(2)
    p7 = 5 + 3 * s
    assert p7 / (1 + s) ** 2 == 3 - s
    inv = ctx_sqrt2.one / p7
    assert inv.den == 7 and inv * p7 == ctx_sqrt2.one


def test_division_by_zero(ctx_sqrt2):
    with pytest.raises(DivisionByZero):
        ctx_sqrt2.one / ctx_sqrt2.zero


def test_norm_trace(ctx_sqrt2):
    lam = 2 + ctx_sqrt2.sqrt2
    assert lam.norm_trace() == (F(2), F(4))
    assert (ctx_sqrt2.one / lam).norm() == F(1, 2)


def test_embeddings_and_house(ctx_sqrt2):
    lam = 2 + ctx_sqrt2.sqrt2
    ivs = lam.embeddings(F(1, 100))
    assert all(iv.width <= F(1, 100) for iv in ivs)
    assert ivs[0].lo < ivs[1].lo  # ascending root order
    h = lam.house(F(1, 100))
    assert h.lo <= F(342, 100) <= h.hi + F(1, 100)


def test_dominance(ctx_sqrt2):
    s = ctx_sqrt2.sqrt2
    zero = ctx_sqrt2.zero
    assert (2 + s).compare(zero) is Dominance.GT
    assert (1 + s).compare(zero) is Dominance.INCOMPARABLE
    assert ctx_sqrt2.from_rational(6).compare((1 + s) ** 2) is Dominance.GT
    assert zero.compare(2 + s) is Dominance.LT
    assert s.compare(s) is Dominance.EQ


def test_signature_and_associate(ctx_sqrt2):
    s = ctx_sqrt2.sqrt2
    assert s.signature() == (-1, 1)
    eta, assoc = ctx_sqrt2.totally_positive_associate(s)
    assert eta == 1 + s and assoc == 2 + s
    eta1, assoc1 = ctx_sqrt2.totally_positive_associate(ctx_sqrt2.one)
    assert eta1 == ctx_sqrt2.one and assoc1 == ctx_sqrt2.one


def test_no_such_unit(ctx_sqrt3):
    # in this field units only realize the two constant signatures
    t = 1 + ctx_sqrt3.gen           # 1 + sqrt3, signature (-, +)
    with pytest.raises(NoSuchUnit):
        ctx_sqrt3.totally_positive_associate(t)


def test_unit_predicates(ctx_sqrt2):
    s = ctx_sqrt2.sqrt2
    assert (1 + s).is_unit()
    assert not (2 + s).is_unit()
    assert not (ctx_sqrt2.one / (1 + s)).is_unit() or \
        (ctx_sqrt2.one / (1 + s)).is_integral  # inverse of a unit is integral
    inv = ctx_sqrt2.one / (1 + s)
    assert inv.is_integral and inv.is_unit()


def test_unit_square_canonical(ctx_sqrt2):
    s = ctx_sqrt2.sqrt2
    units = ctx_sqrt2.units
    assert unit_square_canonical(2 - s, units) == 2 + s
    assert unit_square_canonical(10 - 7 * s, units) == 2 + s
    assert unit_square_canonical(ctx_sqrt2.from_rational(3), units) == \
        ctx_sqrt2.from_rational(3)


def test_rational_span(ctx_sqrt2):
    ctx = ctx_sqrt2
    gens = [ctx.one, ctx.sqrt2]
    assert ctx.rational_span_coords(5 + 3 * ctx.sqrt2, gens) == [F(5), F(3)]


def test_same_record_interoperates(ctx_sqrt2):
    other = sqrt2_context()
    assert other.one + ctx_sqrt2.sqrt2 == 1 + other.sqrt2


def test_degree_one_field(ctx_q):
    a = ctx_q.from_rational(7)
    assert a.norm_trace() == (F(7), F(7))
    assert a.compare(ctx_q.zero) is Dominance.GT
    assert a.signature() == (1,)


def test_product_ring_ties():
    # a squarefree but reducible polynomial gives a product ring in which
    # dominance comparisons can tie on a coordinate
    rec = FieldRecord("QxQ", 4, (6, 0, -5, 0, 1),
                      tuple(tuple(F(int(i == j)) for j in range(4))
                            for i in range(4)), 0 + 2 ** 2 * 3 ** 2 * 4)
    ctx = load_field(rec)
    a = ctx.gen * ctx.gen - ctx.from_rational(2)   # vanishes on two factors
    assert a.compare(ctx.zero) is Dominance.GE_TIED
    with pytest.raises(DivisionByZero):
        ctx.one / a


def test_mult_table_fast_and_slow_paths_agree():
    # identity basis takes the integer fast path; a permuted basis takes the
    # generic path; the structure constants must agree up to the permutation
    poly = (2, 0, -4, 0, 1)
    ident = tuple(tuple(F(int(i == j)) for j in range(4)) for i in range(4))
    perm = tuple(ident[i] for i in (3, 2, 1, 0))
    a = load_field(FieldRecord("fast", 4, poly, ident, 2048))
    b = load_field(FieldRecord("slow", 4, poly, perm, 2048))
    p = (3, 2, 1, 0)
    for i in range(4):
        for j in range(4):
            fast = a.mult_table[i][j]
            slow = b.mult_table[p[i]][p[j]]
            assert fast == tuple(slow[p[k]] for k in range(4))


def test_zero_divisor_signature_detected():
    rec = FieldRecord("QxQ2", 4, (6, 0, -5, 0, 1),
                      tuple(tuple(F(int(i == j)) for j in range(4))
                            for i in range(4)), 144)
    ctx = load_field(rec)
    a = ctx.gen * ctx.gen - ctx.from_rational(2)
    with pytest.raises(ValueError):
        a.signature()
