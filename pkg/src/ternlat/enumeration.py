"""Complete, certified enumeration of algebraic integers under constraints.

Every search here reduces to integer points of a box in integral-basis
coordinates.  The box comes from enclosing the inverse of the basis
embedding matrix with exact rational intervals and applying it to the
per-embedding constraint region, so it provably contains all solutions;
candidates are then verified by exact dominance tests.  Precision is
increased until the box volume stabilizes, and a configurable ceiling turns
runaway searches into errors instead of long runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import ceil, floor
from typing import Callable, Iterator, List, Optional, Sequence, Tuple

from . import linalg
from .errors import BoxTooLarge, DivisionByZero, NoSuchUnit
from .intervals import Interval, sqrt_upper
from .numberfield import Dominance, Element, FieldContext

DEFAULT_CEILING = 10 ** 8


class QueryMode(Enum):
    SQUARE_DOMINATED = "square_dominated"   # omega^2 <= bound (all embeddings)
    INTERVAL = "interval"                   # 0 <= omega <= bound


@dataclass(frozen=True)
class DominanceQuery:
    field: FieldContext
    bound: Element
    mode: QueryMode = QueryMode.SQUARE_DOMINATED

    def __post_init__(self):
        if not self.bound.is_totally_positive():
            raise ValueError("enumeration bound must be totally positive")


@dataclass(frozen=True)
class EnumerationBox:
    """Certified coordinate box: provably contains every solution."""

    lows: Tuple[int, ...]
    highs: Tuple[int, ...]
    root_width: Fraction            # root-interval width used for the certificate
    targets: Tuple[Tuple[Fraction, Fraction], ...]   # per-embedding region

    @property
    def volume(self) -> int:
        v = 1
        for lo, hi in zip(self.lows, self.highs):
            if hi < lo:
                return 0
            v *= hi - lo + 1
        return v

    def to_dict(self) -> dict:
        return {
            "lows": list(self.lows),
            "highs": list(self.highs),
            "root_width": str(self.root_width),
            "targets": [[str(a), str(b)] for a, b in self.targets],
        }


def _candidate_estimate(emb: List[List[Interval]], box: EnumerationBox) -> int:
    """Expected number of enumerated points: region volume / |det E|.

    The pruned iteration visits on this order of candidates, which is far
    below the raw coordinate-box volume for skewed bases.
    """
    d = len(box.lows)
    region = Fraction(1)
    for lo, hi in box.targets:
        region *= hi - lo
    mid = [[e.mid for e in row] for row in emb]
    det = abs(linalg.det(mid))
    if det == 0:
        return box.volume
    return min(box.volume, ceil(region / det) + 1)


def _build_box(ctx: FieldContext,
               make_targets: Callable[[], List[Interval]],
               ceiling: int) -> Tuple[EnumerationBox, List[List[Interval]]]:
    """Shrink the certified box until its volume stabilizes within 1%."""
    d = ctx.degree
    width = Fraction(1, 64)
    prev: Optional[Tuple[EnumerationBox, List[List[Interval]]]] = None
    prev_vol = None
    for _ in range(80):
        ctx.refine_roots(width)
        emb = ctx.basis_embeddings()
        inv = linalg.interval_inverse(emb)
        if inv is None:
            width /= 4
            continue
        targets = make_targets()
        lows, highs = [], []
        for j in range(d):
            acc = Interval.point(0)
            for i in range(d):
                acc = acc + inv[j][i] * targets[i]
            lows.append(ceil(acc.lo))
            highs.append(floor(acc.hi))
        box = EnumerationBox(tuple(lows), tuple(highs), width,
                             tuple((t.lo, t.hi) for t in targets))
        vol = box.volume
        if prev_vol is not None and vol >= prev_vol * Fraction(99, 100):
            est = _candidate_estimate(emb, box)
            if est > ceiling:
                raise BoxTooLarge(est, ceiling)
            return box, emb
        prev, prev_vol = (box, emb), vol
        width /= 4
    if prev is not None and prev_vol is not None \
            and _candidate_estimate(prev[1], prev[0]) <= ceiling:
        return prev
    raise BoxTooLarge(prev_vol or 0, ceiling)


_PRUNE_BITS = 24


def _fixed_point(x: Fraction, up: bool) -> int:
    scale = 1 << _PRUNE_BITS
    if up:
        return -((-x.numerator * scale) // x.denominator)
    return (x.numerator * scale) // x.denominator


def _iter_box(emb: List[List[Interval]], box: EnumerationBox) -> Iterator[Tuple[int, ...]]:
    """Integer points of the box surviving per-embedding interval pruning.

    Coordinates are fixed from the last to the first; at each level the
    partial embedding sum plus the hull of the remaining coordinates'
    possible contributions must still meet every target region.  Pruning
    uses outward fixed-point arithmetic, so it never discards a solution.
    """
    d = len(box.lows)
    if not all(lo <= hi for lo, hi in zip(box.lows, box.highs)):
        return
    tlo = [_fixed_point(lo, up=False) for lo, _ in box.targets]
    thi = [_fixed_point(hi, up=True) for _, hi in box.targets]
    elo = [[_fixed_point(emb[i][j].lo, up=False) for j in range(d)]
           for i in range(d)]
    ehi = [[_fixed_point(emb[i][j].hi, up=True) for j in range(d)]
           for i in range(d)]

    def scaled(i: int, j: int, c: int) -> Tuple[int, int]:
        if c >= 0:
            return c * elo[i][j], c * ehi[i][j]
        return c * ehi[i][j], c * elo[i][j]

    # rem[i][j] = hull of possible contributions of coordinates < j
    rem_lo = [[0] * (d + 1) for _ in range(d)]
    rem_hi = [[0] * (d + 1) for _ in range(d)]
    for i in range(d):
        for j in range(d):
            alo, ahi = scaled(i, j, box.lows[j])
            blo, bhi = scaled(i, j, box.highs[j])
            rem_lo[i][j + 1] = rem_lo[i][j] + min(alo, blo)
            rem_hi[i][j + 1] = rem_hi[i][j] + max(ahi, bhi)

    coords = [0] * d

    def go(level: int, plo: List[int], phi: List[int]) -> Iterator[Tuple[int, ...]]:
        if level < 0:
            yield tuple(coords)
            return
        for c in range(box.lows[level], box.highs[level] + 1):
            coords[level] = c
            nlo, nhi = [0] * d, [0] * d
            ok = True
            for i in range(d):
                slo, shi = scaled(i, level, c)
                nlo[i] = plo[i] + slo
                nhi[i] = phi[i] + shi
                if nlo[i] + rem_lo[i][level] > thi[i] or \
                        nhi[i] + rem_hi[i][level] < tlo[i]:
                    ok = False
                    break
            if ok:
                yield from go(level - 1, nlo, nhi)

    yield from go(d - 1, [0] * d, [0] * d)


def _square_targets(ctx: FieldContext, bound: Element) -> List[Interval]:
    ivs = ctx.embeddings(bound, Fraction(1, 256))
    out = []
    for iv in ivs:
        r = sqrt_upper(max(iv.hi, Fraction(0)))
        out.append(Interval(-r, r))
    return out


def _interval_targets(ctx: FieldContext, bound: Element) -> List[Interval]:
    ivs = ctx.embeddings(bound, Fraction(1, 256))
    return [Interval(Fraction(0), max(iv.hi, Fraction(0))) for iv in ivs]


def solution_box(query: DominanceQuery,
                 ceiling: int = DEFAULT_CEILING) -> EnumerationBox:
    ctx = query.field
    if query.mode is QueryMode.SQUARE_DOMINATED:
        box, _ = _build_box(ctx, lambda: _square_targets(ctx, query.bound), ceiling)
    else:
        box, _ = _build_box(ctx, lambda: _interval_targets(ctx, query.bound), ceiling)
    return box


def enumerate_dominated(query: DominanceQuery,
                        ceiling: int = DEFAULT_CEILING) -> List[Element]:
    """All integral omega with omega^2 <= bound (or 0 <= omega <= bound).

    Output is sorted lexicographically by coordinates; completeness is
    guaranteed by the enclosing box, and every returned element passes the
    exact dominance test.
    """
    ctx = query.field
    if query.mode is QueryMode.SQUARE_DOMINATED:
        box, emb = _build_box(ctx, lambda: _square_targets(ctx, query.bound), ceiling)
    else:
        box, emb = _build_box(ctx, lambda: _interval_targets(ctx, query.bound), ceiling)
    bound = query.bound
    out = []
    for coords in _iter_box(emb, box):
        w = Element(ctx, coords)
        if query.mode is QueryMode.SQUARE_DOMINATED:
            ok = (bound - w * w).is_totally_nonnegative()
        else:
            ok = w.is_totally_nonnegative() and (bound - w).is_totally_nonnegative()
        if ok:
            out.append(w)
    out.sort(key=Element.key)
    return out


def dominated_elements(ctx: FieldContext, bound: Element,
                       mode: QueryMode = QueryMode.SQUARE_DOMINATED,
                       ceiling: int = DEFAULT_CEILING) -> List[Element]:
    return enumerate_dominated(DominanceQuery(ctx, bound, mode), ceiling)


# ---------------------------------------------------------------------------
# element matrices (rank <= 4): determinant and adjugate by Laplace expansion

def elem_matrix_det(m: Sequence[Sequence[Element]]) -> Element:
    n = len(m)
    if n == 1:
        return m[0][0]
    ctx = m[0][0].ctx
    total = ctx.zero
    for j in range(n):
        if m[0][j].is_zero:
            continue
        minor = [[m[i][k] for k in range(n) if k != j] for i in range(1, n)]
        term = m[0][j] * elem_matrix_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def elem_matrix_adjugate(m: Sequence[Sequence[Element]]) -> List[List[Element]]:
    n = len(m)
    ctx = m[0][0].ctx
    if n == 1:
        return [[ctx.one]]
    adj = [[ctx.zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[m[r][c] for c in range(n) if c != j]
                     for r in range(n) if r != i]
            cof = elem_matrix_det(minor)
            adj[j][i] = cof if (i + j) % 2 == 0 else -cof
    return adj


def enumerate_representations(gram: Sequence[Sequence[Element]], gamma: Element,
                              cap: int = 10000,
                              ceiling: int = DEFAULT_CEILING
                              ) -> List[Tuple[Element, ...]]:
    """All vectors v over the ring of integers with v^T G v = gamma, up to cap.

    Completeness: for positive definite G, any solution satisfies
    v_j^2 <= gamma * (G^-1)_jj in every embedding, so each coordinate ranges
    over a complete dominated-element list.
    """
    n = len(gram)
    ctx = gamma.ctx
    if gamma.is_zero:
        return [tuple(ctx.zero for _ in range(n))]
    if not gamma.is_totally_positive():
        return []
    det = elem_matrix_det(gram)
    if det.is_zero:
        raise DivisionByZero("Gram matrix is singular")
    adj = elem_matrix_adjugate(gram)
    candidate_lists: List[List[Element]] = []
    volume = 1
    for j in range(n):
        bound = gamma * adj[j][j] / det
        cands = dominated_elements(ctx, bound, QueryMode.SQUARE_DOMINATED, ceiling)
        candidate_lists.append(cands)
        volume *= len(cands)
        if volume > ceiling:
            raise BoxTooLarge(volume, ceiling)

    out: List[Tuple[Element, ...]] = []
    vec: List[Element] = [ctx.zero] * n

    def value_of(v: Sequence[Element]) -> Element:
        total = ctx.zero
        for i in range(n):
            if v[i].is_zero:
                continue
            for j in range(n):
                if v[j].is_zero:
                    continue
                total = total + v[i] * gram[i][j] * v[j]
        return total

    def go(j: int):
        if len(out) >= cap:
            return
        if j == n:
            if value_of(vec) == gamma:
                out.append(tuple(vec))
            return
        for c in candidate_lists[j]:
            vec[j] = c
            go(j + 1)
            if len(out) >= cap:
                return

    go(0)
    return out


# ---------------------------------------------------------------------------
# indecomposability

@dataclass(frozen=True)
class IndecompResult:
    indecomposable: bool
    reason: str                                   # norm-bound | trace-bound | exhaustive-search
    decomposition: Optional[Tuple[Element, Element]] = None

    def __bool__(self):
        return self.indecomposable


def is_indecomposable(alpha: Element, sigma_mode: bool = False,
                      units: Optional[Sequence[Element]] = None,
                      ceiling: int = DEFAULT_CEILING) -> IndecompResult:
    """Decide whether alpha is a sum of two totally positive integers.

    In sigma_mode, alpha only needs to be nonzero: it is replaced by a
    totally positive associate first (signature-indecomposability reduces to
    ordinary indecomposability when units of all signatures exist).
    """
    ctx = alpha.ctx
    if not alpha.is_integral:
        raise ValueError("indecomposability is defined for integral elements")
    if sigma_mode and not alpha.is_totally_positive():
        _, alpha = ctx.totally_positive_associate(alpha, units)
    if not alpha.is_totally_positive():
        raise ValueError("alpha must be totally positive")
    d = ctx.degree
    if abs(alpha.norm()) < 2 ** d:
        return IndecompResult(True, "norm-bound")
    if alpha.trace() < Fraction(5 * d, 2) and alpha != ctx.from_rational(2):
        return IndecompResult(True, "trace-bound")
    for beta in dominated_elements(ctx, alpha, QueryMode.INTERVAL, ceiling):
        if beta.is_zero or beta == alpha:
            continue
        return IndecompResult(False, "exhaustive-search", (beta, alpha - beta))
    return IndecompResult(True, "exhaustive-search")


def _canonical_sign(e: Element) -> Element:
    """Of the pair +-e, the one whose first nonzero coordinate is positive."""
    for c in e.coords:
        if c > 0:
            return e
        if c < 0:
            return -e
    return e


def sqrt_element(alpha: Element, ceiling: int = DEFAULT_CEILING) -> Optional[Element]:
    """An integral square root of alpha (sign-normalized so that the first
    nonzero coordinate is positive), or None when alpha is not a square."""
    ctx = alpha.ctx
    if not alpha.is_integral:
        raise ValueError("square roots are searched among integral elements")
    if alpha.is_zero:
        return ctx.zero
    if not alpha.is_totally_nonnegative():
        return None
    for beta in dominated_elements(ctx, alpha, QueryMode.SQUARE_DOMINATED, ceiling):
        if beta * beta == alpha:
            return _canonical_sign(beta)
    return None


def _divisors(n: int) -> List[int]:
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return sorted(out)


def elements_of_norm(ctx: FieldContext, n: int, house_bound: Fraction,
                     totally_positive: bool = False,
                     ceiling: int = DEFAULT_CEILING) -> List[Element]:
    """All integral elements with |norm| = n and house <= house_bound."""
    bound = ctx.from_rational(Fraction(house_bound) ** 2)
    emb = ctx.int_embeddings()
    d = ctx.degree
    scale = 1 << ctx.INT_BITS
    out = []
    for w in dominated_elements(ctx, bound, QueryMode.SQUARE_DOMINATED, ceiling):
        # fixed-point enclosure of the norm rules out most candidates
        plo = phi = 1
        for i in range(d):
            lo = hi = 0
            for j, c in enumerate(w.coords):
                if c > 0:
                    lo += c * emb[i][j][0]
                    hi += c * emb[i][j][1]
                elif c < 0:
                    lo += c * emb[i][j][1]
                    hi += c * emb[i][j][0]
            ps = (plo * lo, plo * hi, phi * lo, phi * hi)
            plo, phi = min(ps), max(ps)
        nlo = plo / scale ** d
        nhi = phi / scale ** d
        if not (nlo - 1 <= n <= nhi + 1 or nlo - 1 <= -n <= nhi + 1):
            continue
        if abs(w.norm()) != n:
            continue
        if totally_positive and not w.is_totally_positive():
            continue
        out.append(w)
    return out


def squarefree_witness(alpha: Element, pad: int = 4,
                       ceiling: int = DEFAULT_CEILING
                       ) -> Optional[Tuple[Element, Element]]:
    """A non-unit t with t^2 | alpha, together with gamma = alpha / t^2.

    Candidates are restricted by norm(t)^2 | norm(alpha) and searched inside
    house(t) <= pad * sqrt(house(alpha)); the pad absorbs unit drift between
    t and its smallest associate.  Returns None when alpha is squarefree in
    the element-divisor sense.
    """
    ctx = alpha.ctx
    if not alpha.is_integral or alpha.is_zero:
        raise ValueError("squarefree test needs a nonzero integral element")
    n = abs(alpha.norm())
    if n.denominator != 1:
        raise ValueError("norm is not an integer")
    n = int(n)
    norms = [m for m in _divisors(n) if m > 1 and n % (m * m) == 0]
    if not norms:
        return None
    hb = sqrt_upper(alpha.house(Fraction(1, 256)).hi) * pad
    for m in norms:
        cands = {_canonical_sign(t) for t in elements_of_norm(ctx, m, hb,
                                                              ceiling=ceiling)}
        for t in sorted(cands, key=lambda e: (sum(abs(c) for c in e.coords),
                                              e.key())):
            gamma = alpha / (t * t)
            if gamma.is_integral:
                return t, gamma
    return None


def unsquare(alpha: Element, units: Optional[Sequence[Element]] = None,
             ceiling: int = DEFAULT_CEILING) -> Tuple[Element, Element, int]:
    """Write alpha = mu * beta^(2^k) with mu a unit and beta totally positive
    and not a square.

    Iterates: totally positive associate, square test, square root.  The norm
    halves (in exponent) each round, so the loop terminates.
    """
    ctx = alpha.ctx
    if alpha.is_zero:
        raise ValueError("cannot unsquare zero")
    if alpha.is_unit():
        raise ValueError("cannot unsquare a unit")
    _, current = ctx.totally_positive_associate(alpha, units)
    k = 0
    while True:
        root = sqrt_element(current, ceiling)
        if root is None:
            beta = current
            break
        if root.is_zero:
            raise ValueError("unexpected zero while unsquaring")
        _, current = ctx.totally_positive_associate(root, units)
        k += 1
        if k > 64:
            raise RuntimeError("unsquare did not terminate")
    mu = alpha / beta ** (2 ** k)
    if not mu.is_unit():
        raise NoSuchUnit("unsquare produced a non-unit cofactor")
    return mu, beta, k


def sum_of_squares_test(gamma: Element, n: int,
                        ceiling: int = DEFAULT_CEILING
                        ) -> Optional[Tuple[Element, ...]]:
    """A decomposition gamma = w_1^2 + ... + w_n^2, or None (complete search).

    Solutions are normalized: each w_i is the lexicographically larger of
    +-w_i and the w_i appear in non-increasing coordinate order, which loses
    no generality.
    """
    ctx = gamma.ctx
    if not gamma.is_totally_nonnegative():
        return None

    def rec(g: Element, k: int, max_key) -> Optional[Tuple[Element, ...]]:
        if g.is_zero:
            return tuple(ctx.zero for _ in range(k))
        if k == 0:
            return None
        cands = [w for w in dominated_elements(ctx, g, QueryMode.SQUARE_DOMINATED,
                                               ceiling)
                 if w.key() >= (-w).key()]
        cands.sort(key=Element.key, reverse=True)
        for w in cands:
            if max_key is not None and w.key() > max_key:
                continue
            rest = rec(g - w * w, k - 1, w.key())
            if rest is not None:
                return (w,) + rest
        return None

    return rec(gamma, n, None)


def sqrt2_span_witnesses(ctx: FieldContext, bound: Element,
                         ceiling: int = DEFAULT_CEILING) -> List[Element]:
    """Solutions of omega^2 <= bound lying outside the span of {1, sqrt2}."""
    if ctx.sqrt2 is None:
        raise ValueError("field has no sqrt2 tag")
    gens = [ctx.one, ctx.sqrt2]
    out = []
    for w in dominated_elements(ctx, bound, QueryMode.SQUARE_DOMINATED, ceiling):
        if ctx.rational_span_coords(w, gens) is None:
            out.append(w)
    return out
