"""Dense univariate polynomials over Q with Sturm-based real root isolation.

Polynomials are lists of coefficients in ascending order (constant term
first), matching the on-disk field format.  Coefficients are ints or
Fractions; arithmetic promotes as needed.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import List, Sequence, Union

from .intervals import Interval

Coeff = Union[int, Fraction]
Poly = List[Coeff]


def trim(p: Sequence[Coeff]) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p: Sequence[Coeff]) -> int:
    p = trim(p)
    return len(p) - 1 if p else -1


def add(p: Sequence[Coeff], q: Sequence[Coeff]) -> Poly:
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0)
                 for i in range(n)])


def sub(p: Sequence[Coeff], q: Sequence[Coeff]) -> Poly:
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0)
                 for i in range(n)])


def neg(p: Sequence[Coeff]) -> Poly:
    return [-c for c in p]


def mul(p: Sequence[Coeff], q: Sequence[Coeff]) -> Poly:
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def scale(p: Sequence[Coeff], c: Coeff) -> Poly:
    return trim([a * c for a in p])


def diff(p: Sequence[Coeff]) -> Poly:
    return trim([i * p[i] for i in range(1, len(p))])


def eval_at(p: Sequence[Coeff], x: Coeff) -> Fraction:
    acc = Fraction(0)
    for c in reversed(list(p)):
        acc = acc * x + c
    return acc


def eval_interval(p: Sequence[Coeff], iv: Interval) -> Interval:
    """Horner evaluation with exact rational interval arithmetic."""
    acc = Interval.point(0)
    for c in reversed(list(p)):
        acc = acc * iv + Interval.point(Fraction(c))
    return acc


def divmod_poly(a: Sequence[Coeff], b: Sequence[Coeff]):
    a = [Fraction(c) for c in trim(a)]
    b = [Fraction(c) for c in trim(b)]
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = a[:]
    db, lb = len(b) - 1, b[-1]
    while len(r) - 1 >= db and r:
        k = len(r) - 1 - db
        c = r[-1] / lb
        q[k] = c
        for i in range(len(b)):
            r[i + k] -= c * b[i]
        r = trim(r)
    return trim(q), r


def exact_div(a: Sequence[Coeff], b: Sequence[Coeff]) -> Poly:
    q, r = divmod_poly(a, b)
    if r:
        raise ValueError("inexact polynomial division")
    return q


def monic(p: Sequence[Coeff]) -> Poly:
    p = trim(p)
    if not p:
        return []
    lc = Fraction(p[-1])
    return [Fraction(c) / lc for c in p]


def gcd_poly(a: Sequence[Coeff], b: Sequence[Coeff]) -> Poly:
    a, b = trim(a), trim(b)
    while b:
        _, r = divmod_poly(a, b)
        a, b = b, r
    return monic(a)


def is_squarefree(p: Sequence[Coeff]) -> bool:
    return degree(gcd_poly(p, diff(p))) <= 0


def content_int(p: Sequence[int]) -> int:
    g = 0
    for c in p:
        g = gcd(g, abs(int(c)))
    return g or 1


def primitive_int(p: Sequence[Coeff]) -> List[int]:
    """Clear denominators and divide out integer content."""
    p = trim(p)
    if not p:
        return []
    den = 1
    for c in p:
        den = den * Fraction(c).denominator // gcd(den, Fraction(c).denominator)
    q = [int(Fraction(c) * den) for c in p]
    g = content_int(q)
    return [c // g for c in q]


def sturm_chain(p: Sequence[Coeff]) -> List[Poly]:
    """Sturm chain of a squarefree polynomial (integer-scaled remainders)."""
    p0 = primitive_int(p)
    p1 = primitive_int(diff(p0))
    chain = [p0, p1]
    while chain[-1]:
        _, r = divmod_poly(chain[-2], chain[-1])
        r = neg(r)
        if r:
            r = primitive_int(r)
        chain.append(r)
    chain.pop()
    return chain


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _variations(signs: Sequence[int]) -> int:
    signs = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def variations_at(chain: Sequence[Poly], x: Coeff) -> int:
    return _variations([_sign(eval_at(p, x)) for p in chain])


def variations_at_inf(chain: Sequence[Poly], positive: bool) -> int:
    signs = []
    for p in chain:
        if not p:
            signs.append(0)
            continue
        s = _sign(p[-1])
        if not positive and (len(p) - 1) % 2 == 1:
            s = -s
        signs.append(s)
    return _variations(signs)


def count_roots(chain: Sequence[Poly], a: Coeff, b: Coeff) -> int:
    """Number of real roots in the half-open interval (a, b]."""
    return variations_at(chain, a) - variations_at(chain, b)


def count_real_roots(p: Sequence[Coeff]) -> int:
    chain = sturm_chain(p)
    return variations_at_inf(chain, False) - variations_at_inf(chain, True)


def root_bound(p: Sequence[Coeff]) -> Fraction:
    """Cauchy bound: all real roots lie in [-B, B]."""
    p = trim(p)
    lc = abs(Fraction(p[-1]))
    m = max((abs(Fraction(c)) for c in p[:-1]), default=Fraction(0))
    return 1 + m / lc


def isolate_real_roots(p: Sequence[Coeff]) -> List[Interval]:
    """Disjoint isolating intervals for all real roots of squarefree p.

    Each returned interval either is a point (exact rational root) or has
    interior containing exactly one root with nonzero values of p at both
    endpoints, so bisection refinement is always possible.
    """
    p = trim(p)
    if degree(p) < 1:
        return []
    if not is_squarefree(p):
        raise ValueError("root isolation requires a squarefree polynomial")
    chain = sturm_chain(p)
    bound = root_bound(p)
    out: List[Interval] = []

    def go(a: Fraction, b: Fraction, n: int):
        # invariant: p(a) != 0, p(b) != 0, n roots in (a, b)
        if n == 0:
            return
        if n == 1:
            out.append(Interval(a, b))
            return
        m = (a + b) / 2
        if eval_at(p, m) == 0:
            out.append(Interval(m, m))
            # nudge around the exact root until the counts split cleanly
            eps = (b - a) / 4
            while eval_at(p, m - eps) == 0 or eval_at(p, m + eps) == 0 \
                    or count_roots(chain, m - eps, m + eps) != 1:
                eps /= 2
            go(a, m - eps, count_roots(chain, a, m - eps))
            go(m + eps, b, count_roots(chain, m + eps, b))
        else:
            left = count_roots(chain, a, m)
            go(a, m, left)
            go(m, b, n - left)

    a, b = -bound, bound
    while eval_at(p, a) == 0:
        a -= 1
    while eval_at(p, b) == 0:
        b += 1
    go(Fraction(a), Fraction(b), count_roots(chain, a, b))
    out.sort(key=lambda iv: iv.lo)
    return out


def refine_root(p: Sequence[Coeff], iv: Interval, max_width: Fraction) -> Interval:
    """Bisect an isolating interval until its width is <= max_width."""
    if iv.lo == iv.hi:
        return iv
    lo, hi = iv.lo, iv.hi
    slo = _sign(eval_at(p, lo))
    shi = _sign(eval_at(p, hi))
    if slo == 0 or shi == 0 or slo == shi:
        raise ValueError("not a sign-isolating interval")
    while hi - lo > max_width:
        m = (lo + hi) / 2
        sm = _sign(eval_at(p, m))
        if sm == 0:
            return Interval(m, m)
        if sm == slo:
            lo = m
        else:
            hi = m
    return Interval(lo, hi)


def cyclotomic(k: int) -> List[int]:
    """k-th cyclotomic polynomial, by exact division of x^k - 1."""
    if k < 1:
        raise ValueError("k must be positive")
    num = [-1] + [0] * (k - 1) + [1]
    den: Poly = [1]
    for d in range(1, k):
        if k % d == 0:
            den = mul(den, cyclotomic(d))
    return [int(c) for c in exact_div(num, den)]


def cos_minpoly(k: int) -> List[int]:
    """Minimal polynomial of z_k + 1/z_k for a primitive k-th root z_k, k >= 3.

    Uses the palindromic structure of the cyclotomic polynomial: with
    m = phi(k), Phi_k(t)/t^(m/2) is a polynomial in y = t + 1/t expressed in
    the basis C_j(y) = t^j + t^-j.
    """
    if k < 3:
        raise ValueError("k must be at least 3")
    phi = cyclotomic(k)
    m = degree(phi)
    half = m // 2
    # C_0 = 2, C_1 = y, C_j = y*C_(j-1) - C_(j-2)
    c_prev: Poly = [2]
    c_cur: Poly = [0, 1]
    result: Poly = [phi[half]]
    for j in range(1, half + 1):
        result = add(result, scale(c_cur, phi[half - j]))
        c_prev, c_cur = c_cur, sub(mul([0, 1], c_cur), c_prev)
    return [int(c) for c in result]
