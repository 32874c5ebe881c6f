"""Exact arithmetic in totally real number fields.

A field is described by a monic integer polynomial with all roots real and
simple, together with an integral basis given in power-basis coordinates.
Elements are integer coordinate vectors over the integral basis with a
positive denominator, so integrality is exactly "denominator 1".

All order comparisons (total positivity, dominance) return exact verdicts:
rational interval arithmetic on isolated real roots serves as a fast
pre-filter, and ambiguous cases fall back to the sign pattern of the
characteristic polynomial of the multiplication map, which is decisive
because every conjugate is real.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import List, Mapping, Optional, Sequence, Tuple, Union

from . import linalg, polys
from .errors import (BadBasis, DivisionByZero, FieldDataError, NoSuchUnit,
                     NotARing, NotTotallyReal)
from .intervals import Interval

Rat = Union[int, Fraction]


@dataclass(frozen=True)
class FieldRecord:
    """Raw description of a totally real field, as ingested from disk."""

    label: str
    degree: int
    poly: Tuple[int, ...]                      # ascending, monic
    basis: Tuple[Tuple[Fraction, ...], ...]    # rows = basis elements, power coords
    disc: int
    h: int = 1
    h_plus: int = 1
    units: Optional[Tuple[Tuple[Tuple[int, ...], int], ...]] = None
    sqrt2: Optional[Tuple[int, ...]] = None
    tags: Mapping[str, str] = field(default_factory=dict)


class Dominance(Enum):
    """Outcome of comparing two elements under all real embeddings."""

    GT = "a>b"
    EQ = "a=b"
    LT = "a<b"
    GE_TIED = "a>=b with equal coordinate"
    LE_TIED = "a<=b with equal coordinate"
    INCOMPARABLE = "incomparable"


class Element:
    """Field element: integer coordinates over the integral basis / denominator."""

    __slots__ = ("ctx", "coords", "den")

    def __init__(self, ctx: "FieldContext", coords: Sequence[int], den: int = 1):
        if den == 0:
            raise DivisionByZero("zero denominator")
        coords = [int(c) for c in coords]
        if len(coords) != ctx.degree:
            raise ValueError("coordinate length does not match field degree")
        if den < 0:
            den = -den
            coords = [-c for c in coords]
        g = den
        for c in coords:
            g = gcd(g, abs(c))
        if g > 1:
            den //= g
            coords = [c // g for c in coords]
        self.ctx = ctx
        self.coords = tuple(coords)
        self.den = den

    # -- basic structure ---------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    @property
    def is_integral(self) -> bool:
        return self.den == 1

    def _same_field(self, other: "Element") -> bool:
        return self.ctx is other.ctx or self.ctx.record == other.ctx.record

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return (self._same_field(other) and self.coords == other.coords
                and self.den == other.den)

    def __hash__(self):
        return hash((self.coords, self.den))

    def __repr__(self) -> str:
        return self.ctx.format_element(self)

    def key(self) -> tuple:
        """Deterministic sort key (lexicographic coordinates, then denominator)."""
        return (self.coords, self.den)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> Optional["Element"]:
        if isinstance(other, Element):
            return other if self._same_field(other) else None
        if isinstance(other, (int, Fraction)):
            return self.ctx.from_rational(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        da, db = self.den, o.den
        return Element(self.ctx, [a * db + b * da for a, b in
                                  zip(self.coords, o.coords)], da * db)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        da, db = self.den, o.den
        return Element(self.ctx, [a * db - b * da for a, b in
                                  zip(self.coords, o.coords)], da * db)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        e = Element.__new__(Element)
        e.ctx, e.coords, e.den = self.ctx, tuple(-c for c in self.coords), self.den
        return e

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        table = self.ctx.mult_table
        d = self.ctx.degree
        out = [0] * d
        for i, a in enumerate(self.coords):
            if a == 0:
                continue
            row = table[i]
            for j, b in enumerate(o.coords):
                if b == 0:
                    continue
                c = a * b
                tij = row[j]
                for k in range(d):
                    out[k] += c * tij[k]
        return Element(self.ctx, out, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ctx.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "Element":
        if self.is_zero:
            raise DivisionByZero("division by zero")
        m = self.mult_matrix()
        try:
            x = linalg.solve(m, self.ctx.one_coords_q)
        except ValueError as exc:
            raise DivisionByZero("element is a zero divisor") from exc
        return self.ctx.from_rational_coords(x)

    def mult_matrix(self) -> List[List[Fraction]]:
        """Matrix of multiplication by self on the integral basis (columns)."""
        d = self.ctx.degree
        table = self.ctx.mult_table
        m = [[Fraction(0)] * d for _ in range(d)]
        for j in range(d):
            for s, a in enumerate(self.coords):
                if a == 0:
                    continue
                tsj = table[s][j]
                for i in range(d):
                    if tsj[i]:
                        m[i][j] += a * tsj[i]
        if self.den != 1:
            m = [[x / self.den for x in row] for row in m]
        return m

    def mult_matrix_scaled(self) -> List[List[int]]:
        """den * mult_matrix, which is integral."""
        d = self.ctx.degree
        table = self.ctx.mult_table
        m = [[0] * d for _ in range(d)]
        for j in range(d):
            for s, a in enumerate(self.coords):
                if a == 0:
                    continue
                tsj = table[s][j]
                for i in range(d):
                    if tsj[i]:
                        m[i][j] += a * tsj[i]
        return m

    # -- invariants ----------------------------------------------------------

    def norm(self) -> Fraction:
        if self.den == 1:
            return Fraction(linalg.det_int(self.mult_matrix_scaled()))
        return Fraction(linalg.det_int(self.mult_matrix_scaled()),
                        self.den ** self.ctx.degree)

    def trace(self) -> Fraction:
        m = self.mult_matrix()
        return sum((m[i][i] for i in range(self.ctx.degree)), Fraction(0))

    def norm_trace(self) -> Tuple[Fraction, Fraction]:
        return self.norm(), self.trace()

    def embeddings(self, max_width: Rat = Fraction(1, 64)) -> List[Interval]:
        return self.ctx.embeddings(self, max_width)

    def house(self, max_width: Rat = Fraction(1, 64)) -> Interval:
        """Enclosure of max_i |sigma_i(self)|; shrinks as max_width does."""
        ivs = [iv.abs() for iv in self.embeddings(max_width)]
        return Interval(max(iv.lo for iv in ivs), max(iv.hi for iv in ivs))

    def compare(self, other) -> Dominance:
        return self.ctx.compare(self, self._coerce(other))

    def __ge__(self, other):  # weak dominance
        return self.compare(other) in (Dominance.GT, Dominance.EQ, Dominance.GE_TIED)

    def __gt__(self, other):  # strict dominance
        return self.compare(other) is Dominance.GT

    def __le__(self, other):
        return self.compare(other) in (Dominance.LT, Dominance.EQ, Dominance.LE_TIED)

    def __lt__(self, other):
        return self.compare(other) is Dominance.LT

    def is_totally_positive(self) -> bool:
        return self.compare(self.ctx.zero) is Dominance.GT

    def is_totally_nonnegative(self) -> bool:
        return self.compare(self.ctx.zero) in (Dominance.GT, Dominance.EQ,
                                               Dominance.GE_TIED)

    def signature(self) -> Tuple[int, ...]:
        """Signs of all real embeddings, ordered by ascending root."""
        if self.is_zero:
            raise ValueError("signature of zero is undefined")
        width = Fraction(1, 16)
        for attempt in range(64):
            ivs = self.embeddings(width)
            if all(not iv.contains_zero() for iv in ivs):
                return tuple(1 if iv.lo > 0 else -1 for iv in ivs)
            if attempt == 1:
                # an embedding can be exactly zero only for a zero divisor
                # (reducible defining polynomial); detect it instead of
                # refining forever
                from . import polys as _p
                pw = self.ctx.power_coords(self)
                if _p.degree(_p.gcd_poly(pw, self.ctx.poly)) > 0:
                    raise ValueError(
                        "element has an exactly-zero embedding (zero divisor)")
            width /= 16
        raise ValueError("embedding signs did not stabilize")

    def is_unit(self) -> bool:
        return self.is_integral and abs(self.norm()) == 1

    def as_rational(self) -> Optional[Fraction]:
        """The element as a rational number, if it is one."""
        q = Fraction(self.coords[0], self.den)
        probe = self.ctx.from_rational(q)
        return q if probe == self else None


class FieldContext:
    """Validated field: multiplication table, isolated roots, named elements.

    Immutable for all observable purposes.  Root intervals refine monotonically
    in place (a benign cache); every public result depends only on the inputs
    and the requested precision.
    """

    def __init__(self, record: FieldRecord, mult_table, roots: List[Interval],
                 basis_pow, pow_to_basis):
        self.record = record
        self.degree = record.degree
        self.poly = list(record.poly)
        self.mult_table = mult_table
        self.basis_pow = basis_pow
        self.pow_to_basis = pow_to_basis
        self._roots = list(roots)
        self._emb_lock = threading.Lock()
        self._emb_generation = 0
        self._emb_cache: Optional[List[List[Interval]]] = None
        self._int_cache: Optional[Tuple[int, List[List[Tuple[int, int]]]]] = None
        one_q = linalg.mat_vec(linalg.transpose(pow_to_basis),
                               [Fraction(1)] + [Fraction(0)] * (self.degree - 1))
        self.one_coords_q = one_q
        self.one = self.from_rational_coords(one_q)
        if not self.one.is_integral:
            raise NotARing(f"{record.label}: 1 is not in the span of the basis")
        self.zero = Element(self, [0] * self.degree)
        gen_q = linalg.mat_vec(linalg.transpose(pow_to_basis),
                               [Fraction(0), Fraction(1)] +
                               [Fraction(0)] * (self.degree - 2)) \
            if self.degree > 1 else [Fraction(record.poly[0]) * -1]
        self.gen = self.from_rational_coords(gen_q)
        self.sqrt2: Optional[Element] = None
        if record.sqrt2 is not None:
            s = Element(self, record.sqrt2)
            if s * s != self.from_rational(2):
                raise FieldDataError(f"{record.label}: sqrt2 tag does not square to 2")
            self.sqrt2 = s
        self.units: Optional[Tuple[Element, ...]] = None
        if record.units is not None:
            us = []
            for coords, den in record.units:
                u = Element(self, coords, den)
                if not u.is_unit():
                    raise FieldDataError(
                        f"{record.label}: listed unit has norm != +-1")
                us.append(u)
            self.units = tuple(us)

    # -- element constructors ----------------------------------------------

    def element(self, coords: Sequence[int], den: int = 1) -> Element:
        return Element(self, coords, den)

    def from_rational(self, q: Rat) -> Element:
        q = Fraction(q)
        num = [c * q.numerator for c in self.one.coords]
        return Element(self, num, self.one.den * q.denominator)

    def from_rational_coords(self, coords: Sequence[Rat]) -> Element:
        den = 1
        fr = [Fraction(c) for c in coords]
        for c in fr:
            den = den * c.denominator // gcd(den, c.denominator)
        return Element(self, [int(c * den) for c in fr], den)

    def from_power_coords(self, coords: Sequence[Rat]) -> Element:
        """Element from coordinates over the power basis 1, t, t^2, ..."""
        p = [Fraction(c) for c in coords]
        p += [Fraction(0)] * (self.degree - len(p))
        v = linalg.mat_vec(linalg.transpose(self.pow_to_basis), p)
        return self.from_rational_coords(v)

    def power_coords(self, a: Element) -> List[Fraction]:
        v = linalg.mat_vec(linalg.transpose(self.basis_pow),
                           [Fraction(c, a.den) for c in a.coords])
        return v

    # -- embeddings ----------------------------------------------------------

    def roots(self) -> List[Interval]:
        return list(self._roots)

    def refine_roots(self, max_width: Rat) -> None:
        max_width = Fraction(max_width)
        with self._emb_lock:
            changed = False
            for i, iv in enumerate(self._roots):
                if iv.width > max_width:
                    self._roots[i] = polys.refine_root(self.poly, iv, max_width)
                    changed = True
            if changed:
                self._emb_generation += 1
                self._emb_cache = None
                self._int_cache = None

    def basis_embeddings(self) -> List[List[Interval]]:
        """Matrix E with E[i][j] enclosing sigma_i(basis_j), at current precision."""
        with self._emb_lock:
            if self._emb_cache is None:
                self._emb_cache = [
                    [polys.eval_interval(self.basis_pow[j], root)
                     for j in range(self.degree)]
                    for root in self._roots]
            return self._emb_cache

    INT_BITS = 24

    def int_embeddings(self) -> List[List[Tuple[int, int]]]:
        """Outward fixed-point enclosures of the basis embeddings, in units
        of 2^-INT_BITS.  Sound but coarse; used by fast pre-filters."""
        if self._int_cache is not None:
            return self._int_cache[1]
        self.refine_roots(Fraction(1, 1 << (self.INT_BITS + 8)))
        emb = self.basis_embeddings()
        scale = 1 << self.INT_BITS
        out = []
        for row in emb:
            srow = []
            for iv in row:
                lo = (iv.lo.numerator * scale) // iv.lo.denominator
                hi = -((-iv.hi.numerator * scale) // iv.hi.denominator)
                srow.append((lo, hi))
            out.append(srow)
        with self._emb_lock:
            self._int_cache = (self._emb_generation, out)
        return out

    def _fast_signs(self, a: Element) -> Optional[Tuple[int, ...]]:
        """Signs of all embeddings from the fixed-point enclosures, or None
        when some enclosure straddles zero."""
        emb = self.int_embeddings()
        signs = []
        for i in range(self.degree):
            lo = hi = 0
            row = emb[i]
            for j, c in enumerate(a.coords):
                if c > 0:
                    lo += c * row[j][0]
                    hi += c * row[j][1]
                elif c < 0:
                    lo += c * row[j][1]
                    hi += c * row[j][0]
            if lo > 0:
                signs.append(1)
            elif hi < 0:
                signs.append(-1)
            else:
                return None
        return tuple(signs)

    def embeddings(self, a: Element, max_width: Rat = Fraction(1, 64)) -> List[Interval]:
        max_width = Fraction(max_width)
        width = min((iv.width for iv in self._roots), default=Fraction(0))
        for _ in range(256):
            emb = self.basis_embeddings()
            out = []
            for i in range(self.degree):
                acc = Interval.point(0)
                for j, c in enumerate(a.coords):
                    if c:
                        acc = acc + emb[i][j].scale(Fraction(c, a.den))
                out.append(acc)
            if all(iv.width <= max_width for iv in out):
                return out
            width = max(width / 4, Fraction(1, 1 << 300))
            self.refine_roots(width)
        raise RuntimeError("embedding refinement did not converge")

    # -- comparisons ---------------------------------------------------------

    def compare(self, a: Element, b: Element) -> Dominance:
        c = a - b
        if c.is_zero:
            return Dominance.EQ
        # fixed-point pre-filter (sound: falls through when indecisive)
        signs = self._fast_signs(c)
        if signs is not None:
            if all(s > 0 for s in signs):
                return Dominance.GT
            if all(s < 0 for s in signs):
                return Dominance.LT
            return Dominance.INCOMPARABLE
        # exact: sign pattern of the characteristic polynomial of mult-by-c
        p = linalg.charpoly(c.mult_matrix_scaled())
        d = self.degree
        all_nonneg_roots = all((-1) ** (d - k) * p[k] >= 0 for k in range(d + 1))
        all_nonpos_roots = all(p[k] >= 0 for k in range(d + 1))
        has_zero_root = p[0] == 0
        if all_nonneg_roots:
            return Dominance.GE_TIED if has_zero_root else Dominance.GT
        if all_nonpos_roots:
            return Dominance.LE_TIED if has_zero_root else Dominance.LT
        return Dominance.INCOMPARABLE

    # -- units ---------------------------------------------------------------

    def require_units(self) -> Tuple[Element, ...]:
        if not self.units:
            raise NoSuchUnit(f"{self.record.label}: no unit generators supplied")
        return self.units

    def totally_positive_associate(self, a: Element,
                                   units: Optional[Sequence[Element]] = None
                                   ) -> Tuple[Element, Element]:
        """Unit eta (a product of supplied generators) with eta*a totally positive.

        Searches the exponent space {0,1}^k over the signature group; raises
        NoSuchUnit when the signature of a is not realized, which signals
        either an incomplete generator list or a field with nonsquare totally
        positive units.
        """
        if a.is_zero:
            raise ValueError("no totally positive associate of zero")
        units = tuple(units) if units is not None else self.require_units()
        target = a.signature()
        d = self.degree
        # F2 system: sum of chosen unit sign-vectors == sign vector of a
        cols = [u.signature() for u in units]
        rows = []
        for i in range(d):
            row = [(1 if cols[j][i] < 0 else 0) for j in range(len(units))]
            row.append(1 if target[i] < 0 else 0)
            rows.append(row)
        # Gaussian elimination over F2
        k = len(units)
        pivots = []
        r = 0
        for c in range(k):
            piv = next((i for i in range(r, d) if rows[i][c]), None)
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            for i in range(d):
                if i != r and rows[i][c]:
                    rows[i] = [x ^ y for x, y in zip(rows[i], rows[r])]
            pivots.append((r, c))
            r += 1
        for i in range(r, d):
            if rows[i][k]:
                raise NoSuchUnit(
                    f"{self.record.label}: signature {target} not realized "
                    "by supplied units")
        exps = [0] * k
        for row_i, col in pivots:
            exps[col] = rows[row_i][k]
        eta = self.one
        for u, e in zip(units, exps):
            if e:
                eta = eta * u
        result = eta * a
        if not result.is_totally_positive():
            raise NoSuchUnit("associate search produced a non-positive result")
        return eta, result

    # -- misc ----------------------------------------------------------------

    def rational_span_coords(self, a: Element,
                             gens: Sequence[Element]) -> Optional[List[Fraction]]:
        """Exact rational coordinates of a over span(gens), or None."""
        d = self.degree
        cols = [[Fraction(g.coords[i], g.den) for g in gens] for i in range(d)]
        rhs = [Fraction(a.coords[i], a.den) for i in range(d)]
        m = [cols[i] + [rhs[i]] for i in range(d)]
        k = len(gens)
        r = 0
        where = []
        for c in range(k):
            piv = next((i for i in range(r, d) if m[i][c] != 0), None)
            if piv is None:
                continue
            m[r], m[piv] = m[piv], m[r]
            pk = m[r][c]
            m[r] = [x / pk for x in m[r]]
            for i in range(d):
                if i != r and m[i][c] != 0:
                    f = m[i][c]
                    m[i] = [x - f * y for x, y in zip(m[i], m[r])]
            where.append((r, c))
            r += 1
        for i in range(r, d):
            if m[i][k] != 0:
                return None
        sol = [Fraction(0)] * k
        for row_i, col in where:
            sol[col] = m[row_i][k]
        return sol

    def format_element(self, a: Element) -> str:
        if self.sqrt2 is not None:
            span = self.rational_span_coords(a, [self.one, self.sqrt2])
            if span is not None:
                x, y = span
                if y == 0:
                    return str(x)
                sy = f"{y}*sqrt2" if abs(y) != 1 else ("sqrt2" if y > 0 else "-sqrt2")
                if x == 0:
                    return sy
                return f"{x}+{sy}" if y > 0 else f"{x}{sy}"
        q = a.as_rational()
        if q is not None:
            return str(q)
        body = ",".join(str(c) for c in a.coords)
        return f"[{body}]" if a.den == 1 else f"[{body}]/{a.den}"

    def __repr__(self):
        return f"FieldContext({self.record.label}, degree {self.degree})"


def sqrt2_context() -> FieldContext:
    """The standard degree-2 field containing sqrt2, with units of all
    signatures and the sqrt2 tag set."""
    rec = FieldRecord(
        label="Q(sqrt2)", degree=2, poly=(-2, 0, 1),
        basis=((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))),
        disc=8, h=1, h_plus=1,
        units=(((-1, 0), 1), ((1, 1), 1)), sqrt2=(0, 1))
    return load_field(rec)


def load_field(record: FieldRecord) -> FieldContext:
    """Validate a field record and build its context.

    Checks: monic integer defining polynomial with d simple real roots
    (Sturm count), invertible basis matrix, multiplicative closure of the
    basis over Z, and the class-number divisibility constraints.
    """
    d = record.degree
    poly = list(record.poly)
    if len(poly) != d + 1 or poly[-1] != 1:
        raise NotTotallyReal(f"{record.label}: polynomial is not monic of degree {d}")
    if any(not isinstance(c, int) for c in poly):
        raise NotTotallyReal(f"{record.label}: polynomial has non-integer coefficients")
    if not polys.is_squarefree(poly):
        raise NotTotallyReal(f"{record.label}: repeated roots")
    if polys.count_real_roots(poly) != d:
        raise NotTotallyReal(f"{record.label}: fewer than {d} real roots")
    basis = [[Fraction(x) for x in row] for row in record.basis]
    if len(basis) != d or any(len(row) != d for row in basis):
        raise BadBasis(f"{record.label}: basis is not a {d}x{d} matrix")
    inv = linalg.inverse(basis)
    if inv is None:
        raise BadBasis(f"{record.label}: basis matrix is singular")
    # multiplication table over the integral basis must be integral
    table = [[None] * d for _ in range(d)]
    is_power_basis = all(basis[i][j] == (1 if i == j else 0)
                         for i in range(d) for j in range(d))
    if is_power_basis:
        # x^m mod poly with integer arithmetic
        xpow = [[0] * d for _ in range(2 * d - 1)]
        for m in range(d):
            xpow[m][m] = 1
        cur = [0] * d
        if d > 0:
            cur[d - 1] = 1
        for m in range(d, 2 * d - 1):
            shifted = [0] + cur[:-1]
            lead = cur[-1]
            cur = [shifted[t] - lead * poly[t] for t in range(d)]
            # cur currently holds x^m mod poly
            xpow[m] = cur[:]
        for i in range(d):
            for j in range(i, d):
                entry = tuple(xpow[i + j])
                table[i][j] = entry
                table[j][i] = entry
    else:
        inv_t = linalg.transpose(inv)
        for i in range(d):
            for j in range(i, d):
                prod_pow = polys.mul(basis[i], basis[j])
                _, rem = polys.divmod_poly(prod_pow, poly)
                rem = list(rem) + [Fraction(0)] * (d - len(rem))
                coords = linalg.mat_vec(inv_t, rem[:d])
                if any(c.denominator != 1 for c in coords):
                    raise NotARing(
                        f"{record.label}: product of basis elements {i},{j} "
                        "is not in the span")
                entry = tuple(int(c) for c in coords)
                table[i][j] = entry
                table[j][i] = entry
    table = tuple(tuple(row) for row in table)
    if record.h <= 0 or record.h_plus <= 0 or record.h_plus % record.h != 0:
        raise FieldDataError(f"{record.label}: h must divide h_plus")
    q = record.h_plus // record.h
    if q & (q - 1):
        raise FieldDataError(f"{record.label}: h_plus/h must be a power of 2")
    roots = polys.isolate_real_roots(poly)
    if len(roots) != d:
        raise NotTotallyReal(f"{record.label}: isolated {len(roots)} real roots")
    return FieldContext(record, table, roots, basis, inv)


# Convenience wrappers matching the operation-level surface.

def arith(a: Element, b: Element, op: str) -> Element:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def norm_trace(a: Element) -> Tuple[Fraction, Fraction]:
    return a.norm_trace()


def embed(a: Element, precision: Rat) -> List[Interval]:
    return a.embeddings(precision)


def house(a: Element, precision: Rat = Fraction(1, 64)) -> Interval:
    return a.house(precision)


def compare_dominance(a: Element, b: Element) -> Dominance:
    return a.compare(b)


def signature(a: Element) -> Tuple[int, ...]:
    return a.signature()


def is_unit(a: Element) -> bool:
    return a.is_unit()


def totally_positive_associate(a: Element,
                               units: Optional[Sequence[Element]] = None
                               ) -> Tuple[Element, Element]:
    return a.ctx.totally_positive_associate(a, units)


def unit_square_canonical(a: Element, units: Sequence[Element]) -> Element:
    """Deterministic representative of a modulo squares of the given units.

    Greedily minimizes (trace, negated coordinates); only meaningful for
    totally positive elements, where the trace is proper on the orbit.
    Non-positive inputs are returned unchanged.
    """
    if a.is_zero or not a.is_totally_positive():
        return a

    def key(e: Element):
        return (e.trace(), tuple(-c for c in e.coords), e.den)

    best = a
    for _ in range(1000):
        improved = False
        for u in units:
            for e in (2, -2):
                cand = best * u ** e
                if key(cand) < key(best):
                    best = cand
                    improved = True
        if not improved:
            return best
    return best
