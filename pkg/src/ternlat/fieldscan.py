"""Field-table ingestion, batch scans, and closed-form identity checks.

The on-disk table format is one JSON object per line with keys `label`,
`degree`, `poly` (ascending integer coefficients), `basis` (rows of "p/q"
strings over the power basis), `disc`, `h`, `h_plus`, and optionally
`units` (pairs [coords, den]) and `sqrt2` (integer coordinates).  Reports
are plain dictionaries so they serialize to JSON unchanged.
"""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Tuple

from . import __version__
from .enumeration import (DEFAULT_CEILING, DominanceQuery, solution_box,
                          sqrt2_span_witnesses)
from .errors import (IdentityMismatch, ParseError, TernlatError,
                     ValidationError)
from .intervals import sqrt_lower, sqrt_upper
from .numberfield import Element, FieldContext, FieldRecord, load_field
from .obstruction import obstruction_search


# ---------------------------------------------------------------------------
# ingestion

def parse_record(obj: dict) -> FieldRecord:
    try:
        label = str(obj["label"])
        degree = int(obj["degree"])
        poly = tuple(int(c) for c in obj["poly"])
        basis = tuple(tuple(Fraction(x) for x in row) for row in obj["basis"])
        disc = int(obj["disc"])
        h = int(obj.get("h", 1))
        h_plus = int(obj.get("h_plus", h))
        units = None
        if obj.get("units") is not None:
            units = tuple((tuple(int(c) for c in coords), int(den))
                          for coords, den in obj["units"])
        sqrt2 = None
        if obj.get("sqrt2") is not None:
            sqrt2 = tuple(int(c) for c in obj["sqrt2"])
        tags = {k: str(v) for k, v in obj.get("tags", {}).items()}
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(str(obj.get("label", "?")),
                              f"malformed record: {exc}")
    if len(poly) != degree + 1 or poly[-1] != 1:
        raise ValidationError(label, "polynomial must be monic of the "
                                     "declared degree")
    if disc <= 0:
        raise ValidationError(label, "discriminant must be positive")
    return FieldRecord(label=label, degree=degree, poly=poly, basis=basis,
                       disc=disc, h=h, h_plus=h_plus, units=units,
                       sqrt2=sqrt2, tags=tags)


@dataclass
class FieldTable:
    records: Tuple[FieldRecord, ...]
    _contexts: Dict[str, FieldContext] = field(default_factory=dict)

    def __post_init__(self):
        labels = [r.label for r in self.records]
        if len(set(labels)) != len(labels):
            raise ValidationError("table", "duplicate labels")

    def __iter__(self):
        return iter(self.records)

    def __len__(self):
        return len(self.records)

    def by_label(self, label: str) -> FieldRecord:
        for r in self.records:
            if r.label == label:
                return r
        raise KeyError(label)

    def context(self, label: str) -> FieldContext:
        if label not in self._contexts:
            self._contexts[label] = load_field(self.by_label(label))
        return self._contexts[label]


def ingest_fields(path) -> FieldTable:
    """Parse and validate a line-oriented field table."""
    records = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(lineno, f"invalid JSON: {exc}")
            try:
                records.append(parse_record(obj))
            except TernlatError as exc:
                raise ParseError(lineno, str(exc))
    return FieldTable(tuple(records))


def load_field_file(path) -> FieldContext:
    """Load a field from a single-object JSON file, or from a table with
    the `table.jsonl#LABEL` syntax."""
    path = str(path)
    if "#" in path:
        table_path, label = path.rsplit("#", 1)
        return ingest_fields(table_path).context(label)
    with open(path, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    return load_field(parse_record(obj))


# ---------------------------------------------------------------------------
# scans

def _scan(table: FieldTable, disc_cap: int, worker, threads: int,
          metadata: dict) -> dict:
    t0 = time.time()
    rows = sorted((r for r in table if r.disc <= disc_cap),
                  key=lambda r: (r.disc, r.label))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            verdicts = list(pool.map(worker, rows))
    else:
        verdicts = [worker(r) for r in rows]
    verdicts.sort(key=lambda v: (v["disc"], v["label"]))
    report = {
        "metadata": dict(metadata, max_disc=disc_cap, threads=threads,
                         fields_scanned=len(rows),
                         elapsed_seconds=round(time.time() - t0, 3),
                         version=__version__),
        "verdicts": verdicts,
    }
    return report


def scan_small_condition(table: FieldTable, disc_cap: int,
                         unit_filter: bool = True,
                         ceiling: int = DEFAULT_CEILING,
                         threads: int = 1) -> dict:
    """Per field: do any solutions of w^2 <= 3*lambda or w^2 <= 6 leave the
    span of {1, sqrt2}?  Exceptional fields are reported with witnesses."""

    def worker(rec: FieldRecord) -> dict:
        out = {"label": rec.label, "disc": rec.disc}
        if rec.sqrt2 is None:
            out["status"] = "not-applicable"
            return out
        if unit_filter and rec.h_plus != rec.h:
            out["status"] = "filtered"
            out["h_plus_over_h"] = rec.h_plus // rec.h
            return out
        try:
            ctx = table.context(rec.label)
            lam = 2 + ctx.sqrt2
            t0 = time.time()
            w3 = sqrt2_span_witnesses(ctx, 3 * lam, ceiling)
            w6 = sqrt2_span_witnesses(ctx, ctx.from_rational(6), ceiling)
            box3 = solution_box(DominanceQuery(ctx, 3 * lam), ceiling)
            box6 = solution_box(DominanceQuery(ctx, ctx.from_rational(6)),
                                ceiling)
            out.update({
                "status": "ok",
                "exceptional_3lambda": bool(w3),
                "witnesses_3lambda": [list(w.coords) for w in w3],
                "exceptional_6": bool(w6),
                "witnesses_6": [list(w.coords) for w in w6],
                "box_3lambda": box3.to_dict(),
                "box_6": box6.to_dict(),
                "seconds": round(time.time() - t0, 3),
            })
        except TernlatError as exc:
            out["status"] = "error"
            out["error"] = f"{type(exc).__name__}: {exc}"
        return out

    return _scan(table, disc_cap, worker, threads,
                 {"command": "small-condition", "unit_filter": unit_filter,
                  "bounds": ["3*(2+sqrt2)", "6"], "ceiling": ceiling})


def exceptional_sets(report: dict) -> Dict[str, List[str]]:
    """Labels of exceptional fields per bound, from a small-condition report."""
    out = {"3lambda": [], "6": []}
    for v in report["verdicts"]:
        if v.get("status") != "ok":
            continue
        if v["exceptional_3lambda"]:
            out["3lambda"].append(v["label"])
        if v["exceptional_6"]:
            out["6"].append(v["label"])
    return out


def scan_obstructions(table: FieldTable, disc_cap: int, pool_size: int = 40,
                      ceiling: int = DEFAULT_CEILING,
                      threads: int = 1) -> dict:
    """Per quartic field: route by narrow-class structure and class number,
    and search an obstruction certificate in the remaining case."""

    def worker(rec: FieldRecord) -> dict:
        out = {"label": rec.label, "disc": rec.disc, "h": rec.h,
               "h_plus": rec.h_plus}
        if rec.h_plus != rec.h:
            out["status"] = "excluded-by-narrow-class-structure"
            return out
        if rec.h == 1:
            out["status"] = "covered-by-free-lattice-theorem"
            return out
        try:
            ctx = table.context(rec.label)
            t0 = time.time()
            cert = obstruction_search(ctx, pool_size, ceiling)
            out["seconds"] = round(time.time() - t0, 3)
            if cert is None:
                out["status"] = "pool-exhausted"
            else:
                out["status"] = "certificate"
                out["certificate"] = cert.to_dict()
        except TernlatError as exc:
            out["status"] = "error"
            out["error"] = f"{type(exc).__name__}: {exc}"
        return out

    return _scan(table, disc_cap, worker, threads,
                 {"command": "obstruct", "pool_size": pool_size,
                  "ceiling": ceiling})


def write_report(report: dict, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=1, sort_keys=True)
        fh.write("\n")


# ---------------------------------------------------------------------------
# closed-form identity checks

# trivariate polynomials with Element coefficients, keyed by exponents

def _tri_add(a, b):
    out = dict(a)
    for k, v in b.items():
        out[k] = out[k] + v if k in out else v
    return {k: v for k, v in out.items() if not v.is_zero}


def _tri_square_of_linear(coeffs):
    """(c0 x + c1 y + c2 z)^2 as a trivariate polynomial."""
    out = {}
    for i in range(3):
        for j in range(3):
            if coeffs[i].is_zero or coeffs[j].is_zero:
                continue
            key = tuple(int(i == t) + int(j == t) for t in range(3))
            term = coeffs[i] * coeffs[j]
            out[key] = out[key] + term if key in out else term
    return {k: v for k, v in out.items() if not v.is_zero}


def _tri_scale(a, c):
    return {k: v * c for k, v in a.items()}


def sum_of_squares_identities(ctx: FieldContext) -> List[dict]:
    """The four exact identities expressing twice each base-field universal
    ternary form as a sum of at most four squares of linear forms."""
    s = ctx.sqrt2
    one, zero = ctx.one, ctx.zero
    two = ctx.from_rational(2)
    lam, lam_bar = 2 + s, 2 - s
    three = ctx.from_rational(3)

    def form(xx, yy, zz, yz):
        out = {(2, 0, 0): xx, (0, 2, 0): yy, (0, 0, 2): zz}
        if not yz.is_zero:
            out[(0, 1, 1)] = yz
        return {k: v for k, v in out.items() if not v.is_zero}

    specs = [
        ("Q1", form(one, one, lam, zero),
         [(s, zero, zero), (zero, s, zero), (zero, zero, one + s),
          (zero, zero, one)]),
        ("Q2", form(one, lam, lam_bar, two),
         [(s, zero, zero), (zero, one + s, s - one), (zero, one, one)]),
        ("Q3", form(one, lam, three, two),
         [(s, zero, zero), (zero, one + s, zero), (zero, one, two),
          (zero, zero, s)]),
        ("Q3p", form(one, lam_bar, three, two),
         [(s, zero, zero), (zero, one - s, zero), (zero, one, two),
          (zero, zero, s)]),
    ]
    results = []
    for name, q, linear_forms in specs:
        doubled = _tri_scale(q, two)
        total = {}
        for lf in linear_forms:
            total = _tri_add(total, _tri_square_of_linear(lf))
        ok = total == doubled
        results.append({"form": name, "squares": len(linear_forms),
                        "exact": ok})
        if not ok:
            raise IdentityMismatch(f"sum-of-squares identity fails for {name}")
    return results


def _gap_product(xs) -> float:
    total = 1.0
    n = len(xs)
    for i in range(n):
        for j in range(i + 1, n):
            total *= abs(xs[i] - xs[j])
    return total


def quartic_gap_maximum(grid: int = 13, refinements: int = 40) -> dict:
    """Maximize the product of pairwise gaps over [-1,1]^4.

    A refining grid search plus the analytic critical point; the closed-form
    value is 2^6 * 5^(-5/2).
    """
    closed = 64 / (25 * math.sqrt(5))
    pts = [-1 + 2 * i / (grid - 1) for i in range(grid)]
    best, argbest = -1.0, None
    for a in pts:
        for b in pts:
            for c in pts:
                for d in pts:
                    v = _gap_product((a, b, c, d))
                    if v > best:
                        best, argbest = v, (a, b, c, d)
    step = 2 / (grid - 1)
    for _ in range(refinements):
        step *= 0.7
        improved = False
        base = argbest
        for dim in range(4):
            for delta in (-step, step):
                cand = list(base)
                cand[dim] = min(1.0, max(-1.0, cand[dim] + delta))
                v = _gap_product(cand)
                if v > best:
                    best, argbest = v, tuple(cand)
                    improved = True
        if not improved and step < 1e-12:
            break
    crit = (-1.0, -1 / math.sqrt(5), 1 / math.sqrt(5), 1.0)
    vcrit = _gap_product(crit)
    if vcrit > best:
        best, argbest = vcrit, crit
    return {"maximum": best, "closed_form": closed,
            "error": abs(best - closed), "argmax": argbest}


def discriminant_bound_value() -> dict:
    """(2^12/5^5) * (6 + 3 sqrt2)^6 with certified rational bounds."""
    a, b = 577368, 408240            # (6 + 3 sqrt2)^6 = a + b sqrt2
    factor = Fraction(2 ** 12, 5 ** 5)
    lo = factor * (a + b * sqrt_lower(2))
    hi = factor * (a + b * sqrt_upper(2))
    return {"lower": float(lo), "upper": float(hi),
            "value": float((lo + hi) / 2)}


def verify_identities() -> dict:
    """All closed-form checks: the four sum-of-squares identities, the
    pairwise-gap maximum, and the quartic discriminant bound constant."""
    from .numberfield import sqrt2_context
    ctx = sqrt2_context()
    identities = sum_of_squares_identities(ctx)
    gap = quartic_gap_maximum()
    if gap["error"] > 1e-9:
        raise IdentityMismatch(
            f"gap maximum off by {gap['error']}")
    shape = sorted(abs(x) for x in gap["argmax"])
    target = [1 / math.sqrt(5)] * 2 + [1.0, 1.0]
    if any(abs(x - y) > 1e-6 for x, y in zip(shape, target)):
        raise IdentityMismatch(f"gap maximizer {gap['argmax']} has wrong shape")
    bound = discriminant_bound_value()
    if not (abs(bound["lower"] - 1513496.96) <= 0.01
            and abs(bound["upper"] - 1513496.96) <= 0.01):
        raise IdentityMismatch(f"discriminant bound {bound} out of tolerance")
    return {"sum_of_squares": identities, "gap_maximum": gap,
            "disc_bound": bound, "ok": True}
