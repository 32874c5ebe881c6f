"""Maximal real subfields of cyclotomic fields.

For k >= 3, the field generated by z_k + 1/z_k (z_k a primitive k-th root of
unity) is totally real of degree phi(k)/2, and its ring of integers is the
power order of that generator, so no external field table is needed: the
context is built directly from the halved cyclotomic polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from . import linalg, polys
from .enumeration import (DEFAULT_CEILING, QueryMode, dominated_elements,
                          is_indecomposable)
from .errors import MismatchAgainstFormula, UnsupportedK
from .numberfield import Element, FieldContext, FieldRecord, load_field


def mobius_phi(k: int) -> Tuple[int, int]:
    """(Mobius mu, Euler phi) by trial-division factorization."""
    if k < 1:
        raise ValueError("k must be positive")
    mu, phi = 1, 1
    n = k
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            phi *= (p - 1) * p ** (e - 1)
            mu = 0 if e > 1 else -mu
        p += 1 if p == 2 else 2
    if n > 1:
        phi *= n - 1
        mu = -mu
    return mu, phi


def prime_power_base(k: int) -> Optional[int]:
    """p when k = p^n with n >= 1, else None."""
    if k < 2:
        return None
    p = 2
    n = k
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            return p if n == 1 else None
        p += 1 if p == 2 else 2
    return n


@dataclass(frozen=True)
class CycloInfo:
    k: int
    phi: int
    mu: int
    minpoly_cos: Tuple[int, ...]
    field: FieldContext
    alpha: Element      # 2 + (z + 1/z)
    beta: Element       # 2 - (z + 1/z)


def cyclo_info(k: int) -> CycloInfo:
    if k < 3:
        raise UnsupportedK(f"k = {k} < 3")
    mu, phi = mobius_phi(k)
    pcos = polys.cos_minpoly(k)
    d = phi // 2
    # disc of the power order (which is the maximal order here)
    comp_traces = _power_traces(pcos, 2 * d)
    gram = [[_trace_of_product(pcos, comp_traces, i, j) for j in range(d)]
            for i in range(d)]
    disc = linalg.det(gram)
    assert disc.denominator == 1
    basis = tuple(tuple(Fraction(int(i == j)) for j in range(d))
                  for i in range(d))
    rec = FieldRecord(label=f"F{k}", degree=d, poly=tuple(pcos), basis=basis,
                      disc=int(disc), h=1, h_plus=1)
    ctx = load_field(rec)
    two = ctx.from_rational(2)
    alpha = two + ctx.gen
    beta = two - ctx.gen
    return CycloInfo(k, phi, mu, tuple(pcos), ctx, alpha, beta)


def _power_traces(p, upto):
    """Power sums of the roots of monic p, by Newton's identities."""
    d = len(p) - 1
    sums = [Fraction(d)]
    for m in range(1, upto + 1):
        s = Fraction(0)
        for i in range(1, min(m, d) + 1):
            s -= p[d - i] * sums[m - i]
        if m <= d:
            s -= m * p[d - m]
            # note: the loop above already subtracted p[d-m]*sums[0] = d*p[d-m]
            s += d * p[d - m]
        sums.append(s)
    return sums


def _trace_of_product(p, traces, i, j):
    d = len(p) - 1
    prod = [0] * (i + j) + [1]
    _, r = polys.divmod_poly(prod, p)
    return sum(Fraction(c) * traces[t] for t, c in enumerate(r))


@dataclass(frozen=True)
class AlphaBetaReport:
    k: int
    degree: int
    mu: int
    norm_alpha: int
    norm_beta: int
    trace_alpha: int
    trace_beta: int
    alpha_indecomposable: Optional[bool]
    beta_indecomposable: Optional[bool]


def alpha_beta_verify(k: int, check_indecomposable: bool = True,
                      max_indec_degree: Optional[int] = None) -> AlphaBetaReport:
    """Check the closed norm/trace formulas for 2 +- (z_k + 1/z_k).

    Norm of the plus element is p exactly when k = 2p^n; of the minus element
    exactly when k = p^n; traces are twice the degree plus/minus mu(k).  Both
    elements must be totally positive, and for degree > 2 indecomposable.
    Any failure raises MismatchAgainstFormula (the formulas are theorems, so
    a mismatch means an implementation bug).
    """
    info = cyclo_info(k)
    d = info.field.degree
    na, ta = info.alpha.norm_trace()
    nb, tb = info.beta.norm_trace()
    p_half = prime_power_base(k // 2) if k % 2 == 0 else None
    expected_na = p_half if (k % 2 == 0 and p_half is not None) else 1
    p_full = prime_power_base(k)
    expected_nb = p_full if p_full is not None else 1
    if na != expected_na:
        raise MismatchAgainstFormula(f"k={k}: N(alpha) = {na} != {expected_na}")
    if nb != expected_nb:
        raise MismatchAgainstFormula(f"k={k}: N(beta) = {nb} != {expected_nb}")
    if ta != 2 * d + info.mu:
        raise MismatchAgainstFormula(f"k={k}: Tr(alpha) = {ta} != {2*d+info.mu}")
    if tb != 2 * d - info.mu:
        raise MismatchAgainstFormula(f"k={k}: Tr(beta) = {tb} != {2*d-info.mu}")
    if not info.alpha.is_totally_positive() or not info.beta.is_totally_positive():
        raise MismatchAgainstFormula(f"k={k}: alpha or beta not totally positive")
    ia = ib = None
    if check_indecomposable and d > 2 and \
            (max_indec_degree is None or d <= max_indec_degree):
        ia = bool(is_indecomposable(info.alpha))
        ib = bool(is_indecomposable(info.beta))
        if not (ia and ib):
            raise MismatchAgainstFormula(f"k={k}: expected indecomposable")
    return AlphaBetaReport(k, d, info.mu, int(na), int(nb), int(ta), int(tb),
                           ia, ib)


def subfield_test(field: FieldContext, k: int,
                  ceiling: int = DEFAULT_CEILING) -> Optional[Element]:
    """A root in `field` of the minimal polynomial of z_k + 1/z_k, or None.

    Every conjugate of the generator lies strictly between -2 and 2, so the
    complete candidate set is the dominated enumeration against 4; each
    candidate is tested by exact polynomial evaluation.
    """
    if k < 3:
        raise UnsupportedK(f"k = {k} < 3")
    _, phi = mobius_phi(k)
    if phi // 2 == 0 or field.degree % (phi // 2) != 0:
        return None
    pcos = polys.cos_minpoly(k)
    four = field.from_rational(4)
    for w in dominated_elements(field, four, QueryMode.SQUARE_DOMINATED,
                                ceiling):
        acc = field.zero
        for c in reversed(pcos):
            acc = acc * w + field.from_rational(c)
        if acc.is_zero:
            return w
    return None
