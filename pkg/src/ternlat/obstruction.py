"""Non-universality certificates for ternary classical lattices.

Two machine-checkable obstruction ingredients are produced here: forced
orthogonality (all admissible Gram off-diagonals between prescribed values
are zero) and non-representation of a target by the dual of a diagonal
lattice.  Together they show that no ternary classical lattice represents
all four chosen elements.  The module also carries the two 4x4 determinant
case analyses over the sqrt2 field and their symbolic analogue over the
relation ring gamma * t^2 = 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .enumeration import (DEFAULT_CEILING, QueryMode, dominated_elements,
                          enumerate_representations, is_indecomposable,
                          sqrt_element, squarefree_witness)
from .errors import NoSuchUnit, UnclassifiedCase
from .numberfield import (Element, FieldContext, sqrt2_context,
                          unit_square_canonical)
from .quadlattice import (GramMatrix, LatticeClass, generated_module_gram,
                          isometry_search, offdiag_candidates, standard_lattice)


def _element_dict(e: Element) -> dict:
    return {"coords": list(e.coords), "den": e.den}


def _element_from(ctx: FieldContext, d: dict) -> Element:
    return ctx.element(d["coords"], d["den"])


# ---------------------------------------------------------------------------
# orthogonality forcing

@dataclass(frozen=True)
class PairForcing:
    i: int
    j: int
    admissible: Tuple[Element, ...]   # complete list of possible off-diagonals

    @property
    def forced_zero(self) -> bool:
        return len(self.admissible) == 1 and self.admissible[0].is_zero


@dataclass(frozen=True)
class OrthogonalityCertificate:
    field_label: str
    elements: Tuple[Element, ...]
    pairs: Tuple[PairForcing, ...]

    @property
    def is_valid(self) -> bool:
        return all(p.forced_zero for p in self.pairs)

    def to_dict(self) -> dict:
        return {
            "kind": "orthogonality",
            "field": self.field_label,
            "elements": [_element_dict(e) for e in self.elements],
            "pairs": [{"i": p.i, "j": p.j,
                       "admissible": [_element_dict(a) for a in p.admissible]}
                      for p in self.pairs],
            "valid": self.is_valid,
        }


def orthogonality_forcing(ctx: FieldContext, elements: Sequence[Element],
                          ceiling: int = DEFAULT_CEILING
                          ) -> OrthogonalityCertificate:
    """For each pair, the complete list of admissible Gram off-diagonals.

    Valid when every pair forces zero: vectors representing the elements in
    any classical lattice are then necessarily orthogonal.
    """
    elements = tuple(elements)
    for e in elements:
        if not e.is_integral or not e.is_totally_positive():
            raise ValueError("orthogonality forcing needs totally positive "
                             "integral elements")
    pairs = []
    for i, j in combinations(range(len(elements)), 2):
        adm = offdiag_candidates(elements[i], elements[j], ceiling)
        pairs.append(PairForcing(i, j, tuple(adm)))
    return OrthogonalityCertificate(ctx.record.label, elements, tuple(pairs))


# ---------------------------------------------------------------------------
# dual non-representation

@dataclass(frozen=True)
class DualTranscript:
    field_label: str
    diag: Tuple[Element, Element, Element]
    gamma: Element
    candidate_counts: Tuple[int, ...]      # per-coordinate complete list sizes
    counterexample: Optional[Tuple[Element, ...]]

    @property
    def is_valid(self) -> bool:
        return self.counterexample is None

    def to_dict(self) -> dict:
        return {
            "kind": "dual-nonrepresentation",
            "field": self.field_label,
            "diag": [_element_dict(e) for e in self.diag],
            "gamma": _element_dict(self.gamma),
            "candidate_counts": list(self.candidate_counts),
            "counterexample": None if self.counterexample is None else
                [_element_dict(e) for e in self.counterexample],
        }


def dual_nonrepresentation(ctx: FieldContext,
                           diag: Sequence[Element], gamma: Element,
                           ceiling: int = DEFAULT_CEILING) -> DualTranscript:
    """Exhaustive test of x^2 a2 a3 + y^2 a1 a3 + z^2 a1 a2 = gamma a1 a2 a3,
    the cleared-denominator form of representing gamma by the dual of the
    diagonal lattice <a1, a2, a3>."""
    a1, a2, a3 = diag
    for e in diag:
        if not e.is_totally_positive():
            raise ValueError("diagonal entries must be totally positive")
    if not gamma.is_totally_positive():
        raise ValueError("gamma must be totally positive")
    gram = GramMatrix.diagonal([a2 * a3, a1 * a3, a1 * a2])
    target = gamma * a1 * a2 * a3
    # complete candidate lists, as in the representation search
    counts = []
    from .enumeration import elem_matrix_adjugate, elem_matrix_det
    det = elem_matrix_det(gram.entries)
    adj = elem_matrix_adjugate(gram.entries)
    for j in range(3):
        bound = target * adj[j][j] / det
        counts.append(len(dominated_elements(ctx, bound,
                                             QueryMode.SQUARE_DOMINATED,
                                             ceiling)))
    reps = enumerate_representations(gram.entries, target, cap=1,
                                     ceiling=ceiling)
    ce = tuple(reps[0]) if reps else None
    return DualTranscript(ctx.record.label, (a1, a2, a3), gamma,
                          tuple(counts), ce)


# ---------------------------------------------------------------------------
# combined certificate

@dataclass(frozen=True)
class ObstructionCertificate:
    field_label: str
    quadruple: Tuple[Element, Element, Element, Element]   # (a1, a2, a3, gamma)
    orthogonality: OrthogonalityCertificate
    nonrepresentation: DualTranscript

    @property
    def is_valid(self) -> bool:
        return self.orthogonality.is_valid and self.nonrepresentation.is_valid

    def to_dict(self) -> dict:
        return {
            "kind": "obstruction",
            "field": self.field_label,
            "quadruple": [_element_dict(e) for e in self.quadruple],
            "orthogonality": self.orthogonality.to_dict(),
            "nonrepresentation": self.nonrepresentation.to_dict(),
            "valid": self.is_valid,
        }


def revalidate_certificate(ctx: FieldContext, data: dict,
                           ceiling: int = DEFAULT_CEILING) -> bool:
    """Re-run both sub-searches of a serialized certificate and compare."""
    if data.get("kind") != "obstruction":
        raise ValueError("not an obstruction certificate")
    quad = [_element_from(ctx, d) for d in data["quadruple"]]
    cert = obstruction_certificate(ctx, quad[:3], quad[3], ceiling)
    if cert.to_dict() != data:
        return False
    return cert.is_valid == data["valid"]


def obstruction_certificate(ctx: FieldContext, triple: Sequence[Element],
                            gamma: Element,
                            ceiling: int = DEFAULT_CEILING
                            ) -> ObstructionCertificate:
    orth = orthogonality_forcing(ctx, triple, ceiling)
    dual = dual_nonrepresentation(ctx, triple, gamma, ceiling)
    return ObstructionCertificate(ctx.record.label,
                                  (*tuple(triple), gamma), orth, dual)


def candidate_pool(ctx: FieldContext, pool_size: int = 40,
                   house_bound: int = 6, norm_bound: int = 64,
                   ceiling: int = DEFAULT_CEILING) -> List[Element]:
    """Totally positive candidates of small norm, ordered by
    (norm, trace, coordinates).

    Enumeration covers all sign patterns with house up to the bound; each
    element is then moved to its totally positive associate and normalized
    modulo squares of the supplied units, so candidates whose positive
    representatives are large (but whose classes contain small elements) are
    still reached.
    """
    bound = ctx.from_rational(house_bound * house_bound)
    pool = {}
    for w in dominated_elements(ctx, bound, QueryMode.SQUARE_DOMINATED,
                                ceiling):
        if w.is_zero:
            continue
        n = abs(w.norm())
        if n > norm_bound:
            continue
        if ctx.units:
            _, w = ctx.totally_positive_associate(w)
            w = unit_square_canonical(w, ctx.units)
        elif not w.is_totally_positive():
            continue
        pool[w.coords] = w
    ordered = sorted(pool.values(),
                     key=lambda e: (abs(e.norm()), e.trace(), e.key()))
    return ordered[:pool_size]


def obstruction_search(ctx: FieldContext, pool_size: int = 40,
                       ceiling: int = DEFAULT_CEILING
                       ) -> Optional[ObstructionCertificate]:
    """First valid certificate over the candidate pool, in deterministic
    order, or None when the pool is exhausted.

    Requires units of all signatures (narrow class number equal to the class
    number), which is a necessary condition for the field to be a candidate
    at all.
    """
    if ctx.record.h_plus != ctx.record.h:
        raise ValueError(f"{ctx.record.label}: search requires h+ = h")
    pool = candidate_pool(ctx, pool_size, ceiling=ceiling)
    pair_cache: Dict[Tuple[int, int], bool] = {}

    def forced(i: int, j: int) -> bool:
        key = (min(i, j), max(i, j))
        if key not in pair_cache:
            adm = offdiag_candidates(pool[key[0]], pool[key[1]], ceiling)
            pair_cache[key] = len(adm) == 1 and adm[0].is_zero
        return pair_cache[key]

    n = len(pool)
    for i in range(n):
        for j in range(i + 1, n):
            if not forced(i, j):
                continue
            for k in range(j + 1, n):
                if not (forced(i, k) and forced(j, k)):
                    continue
                triple = (pool[i], pool[j], pool[k])
                for g in range(n):
                    if g in (i, j, k):
                        continue
                    dual = dual_nonrepresentation(ctx, triple, pool[g],
                                                  ceiling)
                    if dual.is_valid:
                        orth = orthogonality_forcing(ctx, triple, ceiling)
                        return ObstructionCertificate(
                            ctx.record.label, (*triple, pool[g]), orth, dual)
    return None


# ---------------------------------------------------------------------------
# square-class reduction over Z[sqrt2]

def square_class_reduce(x: Element) -> Tuple[Element, Element]:
    """Write x = r * s^2 with r a canonical square-class representative.

    Divides out squares of sqrt2 and of small rational primes, then walks the
    orbit under unit squares (3 +- 2 sqrt2) to the representative of minimal
    trace, preferring the lexicographically larger coordinates on ties.
    """
    ctx = x.ctx
    if ctx.sqrt2 is None or ctx.degree != 2:
        raise ValueError("square-class reduction lives in the sqrt2 field")
    if not x.is_totally_positive():
        raise ValueError("reduction expects a totally positive element")
    s = ctx.one
    u = ctx.one + ctx.sqrt2                      # fundamental-signature unit
    divisors = [ctx.sqrt2, ctx.from_rational(3), ctx.from_rational(5),
                ctx.from_rational(7)]
    changed = True
    while changed:
        changed = False
        for dvs in divisors:
            while True:
                cand = x / (dvs * dvs)
                if cand.is_integral:
                    x, s = cand, s * dvs
                    changed = True
                else:
                    break
        # orbit walk under multiplication by u^(+-2)

        def keyof(e: Element):
            return (e.trace(), tuple(-c for c in e.coords))

        while True:
            up, down = x * u * u, x / (u * u)
            if keyof(up) < keyof(x):
                x, s = up, s / u
                changed = True
            elif keyof(down) < keyof(x):
                x, s = down, s * u
                changed = True
            else:
                break
    return x, s


# ---------------------------------------------------------------------------
# 4x4 determinant case analyses

# polynomials in one variable x with Element coefficients (ascending)

def _xp_add(a, b):
    n = max(len(a), len(b))
    ctx = (a or b)[0].ctx
    z = ctx.zero
    return [(a[i] if i < len(a) else z) + (b[i] if i < len(b) else z)
            for i in range(n)]


def _xp_neg(a):
    return [-c for c in a]


def _xp_mul(a, b):
    ctx = a[0].ctx
    out = [ctx.zero] * (len(a) + len(b) - 1)
    for i, c in enumerate(a):
        if c.is_zero:
            continue
        for j, d in enumerate(b):
            if not d.is_zero:
                out[i + j] = out[i + j] + c * d
    return out


def _xp_det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    total = None
    for j in range(n):
        minor = [[m[i][k] for k in range(n) if k != j] for i in range(1, n)]
        term = _xp_mul(m[0][j], _xp_det(minor))
        if j % 2 == 1:
            term = _xp_neg(term)
        total = term if total is None else _xp_add(total, term)
    return total


def _xp_eval_even(p, x2: Element) -> Element:
    """Evaluate a polynomial with only even-degree terms at x with x^2 = x2."""
    total = x2.ctx.zero
    for i, c in enumerate(p):
        if not c.is_zero:
            if i % 2 == 1:
                raise ValueError("odd power survived in an even polynomial")
            total = total + c * x2 ** (i // 2)
    return total


@dataclass(frozen=True)
class ExtensionCase:
    alpha: Element
    beta: Element
    status: str        # admissible | not-totally-positive | not-integral |
    #                    reconstructs-base-lattice
    x_squared: Optional[Element] = None
    x_in_base: Optional[Element] = None
    residual: Optional[Element] = None
    scale: Optional[Element] = None
    reconstruction_class: Optional[LatticeClass] = None


@dataclass(frozen=True)
class SymbolicBranch:
    beta24: int
    determinant: str
    identity_lhs: str
    identity_rhs: str


@dataclass(frozen=True)
class CaseAnalysisReport:
    mode: str
    det_formula_verified: bool
    cases: Tuple[ExtensionCase, ...] = ()
    x_squared_values: Tuple[Element, ...] = ()
    residuals: Tuple[Element, ...] = ()
    branches: Tuple[SymbolicBranch, ...] = ()


def _case_gram_polys(ctx, alpha, beta, third, corner):
    zero, one = ctx.zero, ctx.one
    lam = 2 + ctx.sqrt2
    c = lambda e: [e]           # constant polynomial
    x = [zero, one]             # the symbolic variable
    return [
        [c(one), c(zero), c(zero), c(alpha)],
        [c(zero), c(lam), c(zero), c(beta)],
        [c(zero), c(zero), c(third), x],
        [c(alpha), c(beta), x, c(corner)],
    ]


def _psd_rank3_check(ctx, alpha, beta, third, corner, x2: Element) -> bool:
    """All principal minors of the 4x4 Gram are totally nonnegative and the
    full determinant vanishes, after substituting the exact x^2 value."""
    m = _case_gram_polys(ctx, alpha, beta, third, corner)
    n = 4
    for k in range(1, n + 1):
        for idx in combinations(range(n), k):
            sub = [[m[i][j] for j in idx] for i in idx]
            val = _xp_eval_even(_xp_det(sub), x2)
            if k == n:
                if not val.is_zero:
                    return False
            elif not val.is_totally_nonnegative():
                return False
    return True


def quartic_case_analysis(mode: str,
                          ceiling: int = DEFAULT_CEILING) -> CaseAnalysisReport:
    """Case analysis of the rank-3 condition det G = 0 for the 4x4 Gram of
    a ternary lattice representing a fourth prescribed value.

    Modes: 'L1_extension' (diagonal 1, lam, 2 against 3(2-sqrt2)),
    'L3_extension' (diagonal 1, lam, 3, with the integrality filter), and
    'nonsquarefree_two' (symbolic, over the relation gamma t^2 = 2).
    """
    if mode == "nonsquarefree_two":
        return _symbolic_two_analysis()
    if mode not in ("L1_extension", "L3_extension"):
        raise ValueError(f"unknown mode {mode!r}")
    ctx = sqrt2_context()
    s = ctx.sqrt2
    one, zero = ctx.one, ctx.zero
    lam = 2 + s
    third = ctx.from_rational(2) if mode == "L1_extension" else ctx.from_rational(3)
    corner = 3 * (2 - s)
    alphas = [zero, one, one - s]
    betas = [zero, one, ctx.from_rational(2), s, one + s, one - s]

    # hard-coded determinant shape: -lam x^2 + third*(6 - lam a^2 - b^2)
    formula_ok = True
    for a in alphas:
        for b in betas:
            det_poly = _xp_det(_case_gram_polys(ctx, a, b, third, corner))
            expect = [third * (6 - lam * a * a - b * b), zero, -lam]
            got = det_poly + [zero] * (3 - len(det_poly))
            if [c for c in got[:3]] != expect or any(
                    not c.is_zero for c in got[3:]):
                formula_ok = False

    cases: List[ExtensionCase] = []
    x2_values: List[Element] = []
    residuals: List[Element] = []
    for a in alphas:
        for b in betas:
            x2 = third * (6 - lam * a * a - b * b) / lam
            if not x2.is_totally_positive():
                cases.append(ExtensionCase(a, b, "not-totally-positive", x2))
                continue
            if mode == "L3_extension" and not x2.is_integral:
                cases.append(ExtensionCase(a, b, "not-integral", x2))
                continue
            root = sqrt_element(x2, ceiling)
            if root is not None:
                if not _psd_rank3_check(ctx, a, b, third, corner, x2):
                    raise UnclassifiedCase(
                        f"degenerate reconstruction case a={a}, b={b}")
                cls = _reconstruction_class(ctx, a, b, third, corner, root,
                                            ceiling)
                cases.append(ExtensionCase(a, b, "reconstructs-base-lattice",
                                           x2, root,
                                           reconstruction_class=cls))
                continue
            if not _psd_rank3_check(ctx, a, b, third, corner, x2):
                raise UnclassifiedCase(f"case a={a}, b={b} is not psd rank 3")
            residual, scale = square_class_reduce(x2)
            if residual * scale * scale != x2:
                raise UnclassifiedCase("square-class reduction is inconsistent")
            cases.append(ExtensionCase(a, b, "admissible", x2,
                                       residual=residual, scale=scale))
            x2_values.append(x2)
            if residual not in residuals:
                residuals.append(residual)
    return CaseAnalysisReport(mode, formula_ok, tuple(cases),
                              tuple(x2_values), tuple(residuals))


def _reconstruction_class(ctx, a, b, third, corner, x: Element,
                          ceiling: int) -> LatticeClass:
    g4 = GramMatrix([
        [ctx.one, ctx.zero, ctx.zero, a],
        [ctx.zero, 2 + ctx.sqrt2, ctx.zero, b],
        [ctx.zero, ctx.zero, third, x],
        [a, b, x, corner],
    ])
    g3 = generated_module_gram(g4)
    for cls in LatticeClass:
        if isometry_search(g3, standard_lattice(ctx, cls), ceiling) is not None:
            return cls
    raise UnclassifiedCase("reconstructed lattice matches no known class")


# ---------------------------------------------------------------------------
# symbolic branch analysis over Z[gamma, t, beta] / (gamma t^2 = 2)

class _Poly3:
    """Integer polynomials in (gamma, t, beta) with the relation
    gamma * t^2 -> 2 applied on demand."""

    __slots__ = ("terms",)
    NAMES = ("gamma", "t", "beta")

    def __init__(self, terms=None):
        self.terms = dict(terms or {})

    @staticmethod
    def var(idx, power=1):
        key = tuple(power if i == idx else 0 for i in range(3))
        return _Poly3({key: 1})

    @staticmethod
    def const(c):
        return _Poly3({(0, 0, 0): c} if c else {})

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
            if out[k] == 0:
                del out[k]
        return _Poly3(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return _Poly3({k: v * c for k, v in self.terms.items()} if c else {})

    def __mul__(self, other):
        out = {}
        for (i1, j1, k1), v1 in self.terms.items():
            for (i2, j2, k2), v2 in other.terms.items():
                key = (i1 + i2, j1 + j2, k1 + k2)
                out[key] = out.get(key, 0) + v1 * v2
        return _Poly3({k: v for k, v in out.items() if v})

    def reduced(self):
        out = {}
        for (i, j, k), v in self.terms.items():
            c = v
            while i >= 1 and j >= 2:
                i -= 1
                j -= 2
                c *= 2
            key = (i, j, k)
            out[key] = out.get(key, 0) + c
            if out[key] == 0:
                del out[key]
        return _Poly3(out)

    def divide_var(self, idx):
        out = {}
        for key, v in self.terms.items():
            if key[idx] < 1:
                raise ValueError("not divisible")
            nk = list(key)
            nk[idx] -= 1
            out[tuple(nk)] = v
        return _Poly3(out)

    def split_identity(self):
        """p = 0 presented as lhs = rhs with positive coefficients."""
        lhs, rhs = {}, {}
        for k, v in sorted(self.terms.items(), reverse=True):
            (lhs if v > 0 else rhs)[k] = abs(v)
        return _Poly3(lhs), _Poly3(rhs)

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for key, v in sorted(self.terms.items(), reverse=True):
            mono = "*".join(
                (n if e == 1 else f"{n}^{e}")
                for n, e in zip(self.NAMES, key) if e)
            if not mono:
                bits.append(str(v))
            elif v == 1:
                bits.append(mono)
            elif v == -1:
                bits.append(f"-{mono}")
            else:
                bits.append(f"{v}*{mono}")
        return " + ".join(bits).replace("+ -", "- ")


def _p3_det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    total = _Poly3()
    for j in range(n):
        minor = [[m[i][k] for k in range(n) if k != j] for i in range(1, n)]
        term = m[0][j] * _p3_det(minor)
        total = total + (term if j % 2 == 0 else term.scale(-1))
    return total


def _symbolic_two_analysis() -> CaseAnalysisReport:
    g = _Poly3.var(0)
    t = _Poly3.var(1)
    b = _Poly3.var(2)
    one = _Poly3.const(1)
    zero = _Poly3()
    branches = []
    for beta24 in (0, 1):
        e24 = _Poly3.const(beta24)
        m = [
            [one, zero, zero, zero],
            [zero, t, zero, e24],
            [zero, zero, g, b],
            [zero, e24, b, g * t],
        ]
        det = _p3_det(m)
        if beta24 == 0:
            # det = t (gamma^2 t - beta^2); the second factor must vanish
            core = det.divide_var(1)
            lhs, rhs = core.split_identity()
        else:
            core = det.reduced()
            lhs, rhs = core.split_identity()
        branches.append(SymbolicBranch(beta24, str(det), str(lhs), str(rhs)))
    return CaseAnalysisReport("nonsquarefree_two", True, branches=tuple(branches))


# ---------------------------------------------------------------------------
# indecomposables and the shape of 2

@dataclass(frozen=True)
class IndecomposableEntry:
    element: Element
    classification: str        # square | lambda-square | other
    root: Optional[Element]


@dataclass(frozen=True)
class IndecomposablesReport:
    field_label: str
    trace_bound: int
    entries: Tuple[IndecomposableEntry, ...]

    @property
    def others(self) -> Tuple[Element, ...]:
        return tuple(e.element for e in self.entries
                     if e.classification == "other")


def classify_square_shape(w: Element,
                          ceiling: int = DEFAULT_CEILING) -> IndecomposableEntry:
    """Is w a square, 2+sqrt2 times a square, or neither?  The answer is a
    square-class property, so it is stable under multiplication by squares
    of units."""
    ctx = w.ctx
    root = sqrt_element(w, ceiling)
    if root is not None:
        return IndecomposableEntry(w, "square", root)
    quot = w / (2 + ctx.sqrt2)
    if quot.is_integral:
        root = sqrt_element(quot, ceiling)
        if root is not None:
            return IndecomposableEntry(w, "lambda-square", root)
    return IndecomposableEntry(w, "other", None)


def indecomposables_classify(ctx: FieldContext, trace_bound: int,
                             ceiling: int = DEFAULT_CEILING
                             ) -> IndecomposablesReport:
    """Classify all indecomposables of trace up to the bound as unit squares,
    lambda times squares, or genuinely other (witnesses against lifting)."""
    if ctx.sqrt2 is None:
        raise ValueError("classification needs the sqrt2 tag")
    d = ctx.degree
    if 2 * trace_bound < 5 * d:
        raise ValueError("trace bound below the indecomposability threshold")
    entries = []
    for w in dominated_elements(ctx, ctx.from_rational(trace_bound),
                                QueryMode.INTERVAL, ceiling):
        if w.is_zero or w.trace() > trace_bound:
            continue
        if not is_indecomposable(w, ceiling=ceiling):
            continue
        entries.append(classify_square_shape(w, ceiling))
    return IndecomposablesReport(ctx.record.label, trace_bound, tuple(entries))


@dataclass(frozen=True)
class TwoDecomposition:
    found: bool
    t: Optional[Element] = None
    gamma: Optional[Element] = None
    norm_exponent: Optional[int] = None       # |N(t)| = 2^j
    descent_exponents: Optional[Tuple[Fraction, Fraction]] = None
    note: str = ""


def two_decomposition_search(ctx: FieldContext,
                             ceiling: int = DEFAULT_CEILING) -> TwoDecomposition:
    """Totally positive gamma, t with gamma t^2 = 2 and t not a unit, if any.

    A square-divisor witness may exist whose signature is not realized by
    units; in that case no totally positive decomposition exists and the
    transcript says so.
    """
    if ctx.sqrt2 is not None:
        raise ValueError("the field must not contain sqrt2")
    two = ctx.from_rational(2)
    w = squarefree_witness(two, ceiling=ceiling)
    if w is None:
        return TwoDecomposition(False, note="2 is squarefree")
    t, gamma = w
    try:
        _, t_pos = ctx.totally_positive_associate(t)
    except NoSuchUnit:
        return TwoDecomposition(
            False, note=f"2 = ({t})^2 * ({gamma}) but the signature of t is "
            "not realized by units; no totally positive decomposition")
    gamma_pos = two / (t_pos * t_pos)
    if not gamma_pos.is_totally_positive():
        return TwoDecomposition(False, note="cofactor is not totally positive")
    n = abs(t_pos.norm())
    j = n.numerator.bit_length() - 1
    if n != 2 ** j:
        return TwoDecomposition(False, note=f"|N(t)| = {n} is not a 2-power")
    d = ctx.degree
    return TwoDecomposition(True, t_pos, gamma_pos, j,
                            (Fraction(j, 2), Fraction(d - j, 2)))
