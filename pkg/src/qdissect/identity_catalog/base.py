"""Catalog plumbing: side expressions, identity cases, verification."""

from __future__ import annotations

import fnmatch
import time
from dataclasses import dataclass, field
from typing import Callable

from ..exact_coefficients import QQ, CyclotomicField
from ..product_algebra import (
    ProductExpr,
    QMonomial,
    SingularFactor,
    eval_product_expr,
    factor_zero_index,
    infer_ring,
)
from ..qseries_core import InsufficientPrecision, SeriesError, TruncatedSeries, ts_equal_to_order
from ..vanishing import HypothesisError

__all__ = [
    "Expr",
    "Prod",
    "Sum",
    "Mul",
    "SeriesFn",
    "eval_expr",
    "zero_expr",
    "component_expr",
    "class_parts",
    "IdentityCase",
    "CatalogRow",
    "VerificationResult",
    "PartResult",
    "REGISTRY",
    "register",
    "verify_identity",
    "verify_all",
    "expand_cases",
    "require",
    "require_nonsingular",
    "require_nondegenerate",
    "require_base",
    "BaseHypothesis",
    "auto_base",
    "lambert_ok",
    "HypothesisError",
]

MAX_RETRIES = 8


# ---------------------------------------------------------------------------
# side expressions


class Expr:
    def series(self, W: int, ring) -> TruncatedSeries:
        raise NotImplementedError

    def numeric(self, q, ctx):
        raise NotImplementedError(f"{type(self).__name__} has no numeric form")

    def products(self):
        return iter(())

    def ring(self):
        return infer_ring(m for p in self.products() for m in p.monomials())

    def __add__(self, other):
        return Sum([self, other])

    def __mul__(self, other):
        return Mul([self, other])

    def __neg__(self):
        return Mul([Prod(ProductExpr(QMonomial(-1, 0))), self])


class Prod(Expr):
    def __init__(self, p: ProductExpr):
        self.p = p

    def series(self, W, ring):
        return eval_product_expr(self.p, W, ring)

    def numeric(self, q, ctx):
        from ..lambert_numeric import num_product_expr

        return num_product_expr(self.p, q, ctx=ctx)

    def products(self):
        yield self.p

    def __repr__(self):
        return f"Prod({self.p})"


class Sum(Expr):
    def __init__(self, terms):
        self.terms = list(terms)

    def series(self, W, ring):
        total = TruncatedSeries.zero(W, ring)
        for t in self.terms:
            total = total + t.series(W, ring)
        return total

    def numeric(self, q, ctx):
        return ctx.fsum(t.numeric(q, ctx) for t in self.terms)

    def products(self):
        for t in self.terms:
            yield from t.products()


class Mul(Expr):
    def __init__(self, factors):
        self.factors = list(factors)

    def series(self, W, ring):
        out = self.factors[0].series(W, ring)
        for f in self.factors[1:]:
            out = out * f.series(W, ring)
        return out

    def numeric(self, q, ctx):
        v = ctx.mpf(1)
        for f in self.factors:
            v *= f.numeric(q, ctx)
        return v

    def products(self):
        for f in self.factors:
            yield from f.products()


class SeriesFn(Expr):
    """Wrap ``fn(W, ring) -> TruncatedSeries`` with an optional numeric twin."""

    def __init__(self, fn, numeric_fn=None, prods=()):
        self.fn = fn
        self.numeric_fn = numeric_fn
        self.prods = list(prods)

    def series(self, W, ring):
        return self.fn(W, ring)

    def numeric(self, q, ctx):
        if self.numeric_fn is None:
            return super().numeric(q, ctx)
        return self.numeric_fn(q, ctx)

    def products(self):
        return iter(self.prods)


def zero_expr() -> SeriesFn:
    return SeriesFn(lambda W, ring: TruncatedSeries.zero(W, ring), numeric_fn=lambda q, ctx: ctx.mpf(0))


def component_expr(e: Expr, m: int, r: int) -> SeriesFn:
    """Exponents of ``e`` congruent to r mod m."""
    return SeriesFn(lambda W, ring: e.series(W, ring).component(m, r % m))


def class_parts(lhs: Expr, terms, m: int, residues, label="q-class"):
    """One (label, class component, term) triple per term."""
    return [(f"{label} {r % m} mod {m}", component_expr(lhs, m, r), term) for term, r in zip(terms, residues)]


def eval_expr(e, N: int, ring=None, max_retries: int = MAX_RETRIES) -> TruncatedSeries:
    """Evaluate to an exact order >= N, raising the working order as needed."""
    if isinstance(e, TruncatedSeries):
        return e.truncate(N)
    if not isinstance(e, Expr):
        e = SeriesFn(e)
    if ring is None:
        ring = e.ring()
    W = N
    for _ in range(max_retries):
        s = e.series(W, ring)
        if s.trunc_order >= N:
            return s.truncate(N)
        W += max(N - s.trunc_order, 1)
    raise InsufficientPrecision(f"could not reach order {N}")


# ---------------------------------------------------------------------------
# hypotheses


def require(cond: bool, hypothesis: str):
    if not cond:
        raise HypothesisError(hypothesis)


def _denominators(e: Expr):
    for p in e.products():
        for f in p.factors:
            if f.power < 0:
                yield f


class BaseHypothesis(HypothesisError):
    """A hypothesis whose truth depends on the base exponent t (q -> q^t)."""


MAX_BASE = 48


def require_base(cond: bool, hypothesis: str):
    if not cond:
        raise BaseHypothesis(hypothesis)


def require_nonsingular(*exprs):
    """Every denominator Pochhammer factor must be free of 1 - 1."""
    for e in exprs:
        for f in _denominators(e):
            if factor_zero_index(f.arg, f.base, f.length) is not None:
                from ..spec_parser import print_factor

                raise BaseHypothesis(f"nonsingular specialization (denominator {print_factor(f)} vanishes)")


def require_nondegenerate(*exprs):
    """A product side must not vanish through a numerator factor (1 - 1)."""
    for e in exprs:
        for p in e.products():
            for f in p.factors:
                if f.power > 0 and factor_zero_index(f.arg, f.base, f.length) is not None:
                    from ..spec_parser import print_factor

                    raise BaseHypothesis(f"non-degenerate specialization (numerator {print_factor(f)} vanishes)")


def lambert_ok(x: QMonomial, t: int, start: int = 1) -> bool:
    """No term x Q^n / (1 - x Q^n), n >= start, has a zero denominator."""
    if x.c != 1 or x.e % t:
        return True
    return -x.e // t < start


def auto_base(params: dict, build_t):
    """Call ``build_t(t)`` with the given t, or the smallest t that passes."""
    if params.get("t") is not None:
        return build_t(int(params["t"]))
    last = None
    for t in range(1, MAX_BASE + 1):
        try:
            return build_t(t)
        except BaseHypothesis as exc:
            last = exc
    raise last


# ---------------------------------------------------------------------------
# cases and rows


@dataclass
class IdentityCase:
    id: str
    group: str
    params: dict
    lhs: object  # Expr or callable(W, ring)
    rhs: object
    parts: Callable | None = None  # N -> list of (label, left, right)
    description: str = ""
    ring: object = None

    @property
    def key(self) -> str:
        return f"{self.group}:{self.id}"

    def build_lhs(self, N: int):
        return eval_expr(self.lhs, N, self.ring)

    def build_rhs(self, N: int):
        return eval_expr(self.rhs, N, self.ring)

    def has_numeric(self) -> bool:
        try:
            return all(isinstance(s, Expr) and _numeric_ok(s) for s in (self.lhs, self.rhs))
        except Exception:
            return False


def _numeric_ok(e: Expr) -> bool:
    if isinstance(e, Prod):
        return True
    if isinstance(e, (Sum, Mul)):
        return all(_numeric_ok(x) for x in (e.terms if isinstance(e, Sum) else e.factors))
    if isinstance(e, SeriesFn):
        return e.numeric_fn is not None
    return False


@dataclass
class CatalogRow:
    id: str
    group: str
    description: str
    schema: dict
    defaults: list
    build: Callable  # params -> IdentityCase

    @property
    def key(self):
        return f"{self.group}:{self.id}"

    def case(self, params: dict | None = None) -> IdentityCase:
        merged = dict(self.defaults[0]) if self.defaults else {}
        if params:
            merged.update(params)
        return self.build(merged)


REGISTRY: dict[str, CatalogRow] = {}


def register(id: str, group: str, description: str, schema: dict, defaults: list):
    def deco(fn):
        REGISTRY[id] = CatalogRow(id, group, description, schema, defaults, fn)
        return fn

    return deco


# ---------------------------------------------------------------------------
# verification


@dataclass
class PartResult:
    label: str
    equal: bool
    first_mismatch: tuple | None = None

    def to_json(self, ring=QQ):
        d = {"label": self.label, "equal": self.equal}
        if self.first_mismatch:
            e, a, b = self.first_mismatch
            d["first_mismatch"] = {"exponent": e, "lhs": str(a), "rhs": str(b)}
        return d


@dataclass
class VerificationResult:
    id: str
    params: dict
    N: int
    equal: bool
    status: str  # pass | fail | skipped | error
    first_mismatch: tuple | None = None
    elapsed: float = 0.0
    parts: list = field(default_factory=list)
    message: str | None = None
    group: str = ""

    def to_json(self):
        d = {
            "id": self.id,
            "group": self.group,
            "params": {k: _param_text(v) for k, v in self.params.items()},
            "N": self.N,
            "status": self.status,
            "equal": self.equal,
            "elapsed": round(self.elapsed, 4),
        }
        if self.first_mismatch:
            e, a, b = self.first_mismatch
            d["first_mismatch"] = {"exponent": e, "lhs": str(a), "rhs": str(b)}
        if self.parts:
            d["parts"] = [p.to_json() for p in self.parts]
        if self.message:
            d["message"] = self.message
        return d


def _param_text(v):
    if isinstance(v, QMonomial):
        from ..product_algebra import format_monomial

        try:
            return format_monomial(v)
        except ValueError:
            return str(v.to_json())
    return v


def verify_identity(case: IdentityCase, N: int) -> VerificationResult:
    t0 = time.perf_counter()
    base = dict(id=case.id, params=case.params, N=N, group=case.group)
    try:
        try:
            lhs = case.build_lhs(N)
        except (SeriesError, ZeroDivisionError) as exc:
            raise _Side("lhs", exc) from None
        try:
            rhs = case.build_rhs(N)
        except (SeriesError, ZeroDivisionError) as exc:
            raise _Side("rhs", exc) from None
        cmp = ts_equal_to_order(lhs, rhs, N)
        parts = []
        if case.parts is not None:
            for label, left, right in case.parts(N):
                pc = ts_equal_to_order(eval_expr(left, N, case.ring), eval_expr(right, N, case.ring), N)
                parts.append(PartResult(label, pc.equal, None if pc.equal else (pc.exponent, pc.left, pc.right)))
    except _Side as exc:
        return VerificationResult(
            **base, equal=False, status="error", elapsed=time.perf_counter() - t0, message=f"{exc.side}: {exc.exc}"
        )
    equal = cmp.equal and all(p.equal for p in parts)
    mismatch = None if cmp.equal else (cmp.exponent, cmp.left, cmp.right)
    return VerificationResult(
        **base,
        equal=equal,
        status="pass" if equal else "fail",
        first_mismatch=mismatch,
        elapsed=time.perf_counter() - t0,
        parts=parts,
    )


class _Side(Exception):
    def __init__(self, side, exc):
        super().__init__(f"{side}: {exc}")
        self.side, self.exc = side, exc


def _matches(row: CatalogRow, pattern: str | None) -> bool:
    if not pattern:
        return True
    return any(fnmatch.fnmatchcase(x, pattern) for x in (row.key, row.id))


def expand_cases(registry=None, pattern: str | None = None):
    """(row, params) pairs for every default binding of every matching row."""
    registry = REGISTRY if registry is None else registry
    out = []
    for key in sorted(registry):
        row = registry[key]
        if _matches(row, pattern):
            for params in row.defaults or [{}]:
                out.append((row, dict(params)))
    return out


def run_row(row: CatalogRow, params: dict, N: int) -> VerificationResult:
    try:
        case = row.build(params)
    except HypothesisError as exc:
        return VerificationResult(
            row.id, params, N, False, "skipped", group=row.group, message=f"hypothesis violated: {exc.hypothesis}"
        )
    return verify_identity(case, N)


def _job(args):
    from . import REGISTRY as reg

    rid, params, N = args
    return run_row(reg[rid], params, N)


def verify_all(registry=None, N: int = 100, pattern: str | None = None, jobs: int = 1) -> list[VerificationResult]:
    """Run every matching row at its default bindings; never aborts on one failure."""
    cases = expand_cases(registry, pattern)
    if jobs > 1 and len(cases) > 1 and registry in (None, REGISTRY):
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(_job, [(r.id, p, N) for r, p in cases]))
    out = []
    for row, params in cases:
        try:
            out.append(run_row(row, params, N))
        except Exception as exc:  # keep the batch going
            out.append(VerificationResult(row.id, params, N, False, "error", group=row.group, message=repr(exc)))
    return out


# ring helper for cyclotomic rows
def cyclotomic_ring(m: int):
    return QQ if m <= 2 else CyclotomicField(m)


__all__ += ["cyclotomic_ring", "run_row"]
