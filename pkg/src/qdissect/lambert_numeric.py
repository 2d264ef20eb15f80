"""High-precision numeric evaluation of bilateral sums and products.

Bilateral sums are not formal power series once the parameters are
monomials in q, so the identities built on them are checked here at
interior points of their convergence regions instead.  Every sum is split
at n = 0 and each tail is summed until a geometric bound on the rest
drops below the tolerance.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import mpmath

from .product_algebra import ProductExpr, QMonomial
from .qseries_core import _to_mp

__all__ = [
    "RegionError",
    "PrecisionExhausted",
    "NumericPoint",
    "Residual",
    "num_pochhammer_inf",
    "num_pochhammer_fin",
    "num_monomial",
    "num_product_expr",
    "num_1psi1_check",
    "num_lambert_bilateral",
    "num_lambert_sectioned",
    "num_6psi6_check",
    "num_6psi6_general",
    "NUMERIC_CHECKS",
    "run_numeric",
    "consistency_check",
]

MAX_TERMS = 200_000


class RegionError(ValueError):
    """The point lies outside the region where the identity holds."""

    def __init__(self, constraint: str):
        super().__init__(f"region violation: {constraint}")
        self.constraint = constraint


class PrecisionExhausted(ArithmeticError):
    pass


@dataclass
class NumericPoint:
    q: object
    params: dict = field(default_factory=dict)
    prec: int = 128
    eps: object = None

    def __post_init__(self):
        if abs(mpmath.mpmathify(self.q)) >= 1:
            raise RegionError("|q| < 1")

    def tol(self):
        return self.eps if self.eps is not None else mpmath.mpf(2) ** (-self.prec)

    def __getitem__(self, key):
        return self.params[key]

    def to_json(self):
        return {"q": _num_text(self.q), "params": {k: _num_text(v) for k, v in self.params.items()}, "prec": self.prec}

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        with mpmath.workprec(int(data.get("prec", 128))):
            q = _parse_num(data["q"])
            params = {k: _parse_num(v) for k, v in data.get("params", {}).items()}
        return cls(q, params, int(data.get("prec", 128)))


def _parse_num(v):
    if isinstance(v, (list, tuple)):
        return mpmath.mpc(_parse_num(v[0]), _parse_num(v[1]))
    if isinstance(v, str) and ("j" in v or "i" in v):
        return mpmath.mpc(complex(v.replace("i", "j")))
    if isinstance(v, str) and "/" in v:
        a, b = v.split("/")
        return mpmath.mpf(int(a)) / int(b)
    return mpmath.mpmathify(v)


def _num_text(v):
    v = mpmath.mpmathify(v)
    if isinstance(v, mpmath.mpc):
        return [mpmath.nstr(v.real, 25), mpmath.nstr(v.imag, 25)]
    return mpmath.nstr(v, 25)


@dataclass
class Residual:
    name: str
    point: NumericPoint
    lhs: object
    rhs: object
    residual: object
    bound: object

    @property
    def ok(self) -> bool:
        return self.residual <= max(self.bound, mpmath.mpf(10) ** -12)

    def to_json(self):
        return {
            "check": self.name,
            "point": self.point.to_json(),
            "lhs": _num_text(self.lhs),
            "rhs": _num_text(self.rhs),
            "residual": mpmath.nstr(self.residual, 6),
            "tail_bound": mpmath.nstr(self.bound, 6),
        }


# ---------------------------------------------------------------------------
# products


def num_pochhammer_inf(x, Q, eps=None):
    """(x;Q)_inf and a bound on the relative error of the truncated product.

    Stops once |x Q^n| < eps (1 - |Q|); the neglected factors then change
    the value by a relative amount below about 2 |x Q^n| / (1 - |Q|).
    """
    x, Q = mpmath.mpmathify(x), mpmath.mpmathify(Q)
    aQ = abs(Q)
    if aQ >= 1:
        raise RegionError("|Q| < 1 for an infinite product")
    eps = eps if eps is not None else mpmath.eps
    val = mpmath.mpf(1)
    term = x
    for _ in range(MAX_TERMS):
        if abs(term) < eps * (1 - aQ):
            return val, 2 * abs(term) / (1 - aQ)
        val *= 1 - term
        term *= Q
    raise PrecisionExhausted("infinite product did not settle")


def num_pochhammer_fin(x, Q, n: int):
    val = mpmath.mpf(1)
    term = mpmath.mpmathify(x)
    for _ in range(n):
        val *= 1 - term
        term *= Q
    return val


def num_monomial(m: QMonomial, q, ctx=mpmath.mp):
    return _to_mp(m.c, ctx) * ctx.mpmathify(q) ** m.e


def num_product_expr(p: ProductExpr, q, ctx=mpmath.mp):
    """Numeric value of a product expression at q (finite lengths honoured)."""
    q = ctx.mpmathify(q)
    val = num_monomial(p.prefactor, q, ctx)
    for f in p.factors:
        x = num_monomial(f.arg, q, ctx)
        Q = q**f.base
        if f.length is None:
            v, _ = num_pochhammer_inf(x, Q)
        else:
            v = num_pochhammer_fin(x, Q, f.length)
        val *= v**f.power
    return val


# ---------------------------------------------------------------------------
# bilateral sums


def _tail(first, ratio_bound, eps, step):
    """Sum terms from ``step`` until the geometric remainder is below eps.

    ``step(n, prev)`` returns term n; ``ratio_bound(n)`` bounds
    |term(k+1)/term(k)| for all k >= n and must be < 1 eventually.
    """
    total = first
    term = first
    n = 0
    for _ in range(MAX_TERMS):
        n += 1
        term = step(n, term)
        total += term
        rho = ratio_bound(n)
        if rho < 1 and abs(term) * rho / (1 - rho) < eps * max(1, abs(total)):
            return total, abs(term) * rho / (1 - rho)
    raise PrecisionExhausted("bilateral tail did not settle")


def num_1psi1_check(point: NumericPoint) -> Residual:
    """sum_(n in Z) (a;q)_n z^n/(b;q)_n against (b/a, q, az, q/(az); q)/(q/a, b, z, b/(az); q)."""
    with mpmath.workprec(point.prec):
        q, a, b, z = (mpmath.mpmathify(v) for v in (point.q, point["a"], point["b"], point["z"]))
        if not abs(b / a) < abs(z) < 1:
            raise RegionError("|b/a| < |z| < 1")
        eps = point.tol()
        aq = abs(q)
        # n >= 0: term ratio (1 - a q^n)/(1 - b q^n) z
        pos, e1 = _tail(
            mpmath.mpf(1),
            lambda n: abs(z) * (1 + abs(a) * aq**n) / max(1 - abs(b) * aq**n, mpmath.mpf(10) ** -30),
            eps,
            lambda n, prev: prev * (1 - a * q ** (n - 1)) / (1 - b * q ** (n - 1)) * z,
        )
        # n < 0: term_(-n) = (q/b;q)_n/(q/a;q)_n (b/(az))^n
        w = b / (a * z)
        neg, e2 = _tail(
            mpmath.mpf(0),
            lambda n: abs(w) * (1 + aq ** (n + 1) / abs(b)) / max(1 - aq ** (n + 1) / abs(a), mpmath.mpf(10) ** -30),
            eps,
            lambda n, prev: (w * (1 - q / b) / (1 - q / a)) if n == 1 else prev * (1 - q**n / b) / (1 - q**n / a) * w,
        )
        lhs = pos + neg
        rhs = _ratio([b / a, q, a * z, q / (a * z)], [q / a, b, z, b / (a * z)], q)
        return Residual("RAM_1PSI1", point, lhs, rhs, _rel(lhs, rhs), e1 + e2)


def _ratio(num, den, Q):
    v = mpmath.mpf(1)
    for x in num:
        v *= num_pochhammer_inf(x, Q)[0]
    for x in den:
        v /= num_pochhammer_inf(x, Q)[0]
    return v


def _rel(x, y):
    # relative when |y| >= 1, absolute below that (some points make both sides vanish)
    return abs(x - y) / max(abs(y), 1)


def _lambert_bilateral_sum(a, z, q, eps):
    """sum_(n in Z) z^n/(1 - a q^n); the n < 0 part uses 1/(1 - a q^-k) = -(q^k/a)/(1 - q^k/a)."""
    aq = abs(q)
    pos, e1 = _tail(
        1 / (1 - a),
        lambda n: abs(z) * (1 + abs(a) * aq**n) / max(1 - abs(a) * aq ** (n + 1), mpmath.mpf(10) ** -30),
        eps,
        lambda n, prev: z**n / (1 - a * q**n),
    )
    neg, e2 = _tail(
        mpmath.mpf(0),
        lambda n: aq / abs(z) * (1 + aq ** (n + 1) / abs(a)) / max(1 - aq ** (n + 1) / abs(a), mpmath.mpf(10) ** -30),
        eps,
        lambda n, prev: -(q**n / a) * z ** (-n) / (1 - q**n / a),
    )
    return pos + neg, e1 + e2


def num_lambert_bilateral(point: NumericPoint) -> Residual:
    """sum_(n in Z) z^n/(1 - a q^n) against (q, q, az, q/(az); q)/(a, q/a, z, q/z; q)."""
    with mpmath.workprec(point.prec):
        q, a, z = (mpmath.mpmathify(v) for v in (point.q, point["a"], point["z"]))
        if not abs(q) < abs(z) < 1:
            raise RegionError("|q| < |z| < 1")
        lhs, err = _lambert_bilateral_sum(a, z, q, point.tol())
        rhs = _ratio([q, q, a * z, q / (a * z)], [a, q / a, z, q / z], q)
        return Residual("LAMBERT_BILATERAL", point, lhs, rhs, _rel(lhs, rhs), err)


def num_lambert_sectioned(point: NumericPoint, m: int = 3) -> Residual:
    """The bilateral Lambert sum regrouped by n mod m, each group summed as its own bilateral sum."""
    with mpmath.workprec(point.prec):
        q, a, z = (mpmath.mpmathify(v) for v in (point.q, point["a"], point["z"]))
        if not abs(q) < abs(z) < 1:
            raise RegionError("|q| < |z| < 1")
        eps = point.tol()
        lhs, err = _lambert_bilateral_sum(a, z, q, eps)
        rhs = mpmath.mpf(0)
        for j in range(m):
            s, e = _lambert_bilateral_sum(a * q**j, z**m, q**m, eps)
            rhs += z**j * s
            err += abs(z) ** j * e
        return Residual(f"LAMBERT_SECTIONED_m{m}", point, lhs, rhs, _rel(lhs, rhs), err)


def _settled(limit, q, params):
    """Ratio bound for very-well-poised tails.

    Once |q|^n times the largest of |x|, 1/|x| over the parameters is
    below 1/100, every factor (1 - x q^n) is within 1% of 1 and the term
    ratio stays within 20% of its limit.  Before that no bound is claimed.
    """
    scale = max(max(abs(x), 1 / abs(x)) for x in params)
    aq = abs(q)
    return lambda n: 1.2 * limit if scale * aq**n < mpmath.mpf("0.01") else mpmath.mpf(2)


def _sixpsi_term(n, q, a, b, d):
    qn = q**n
    return (1 - a * qn * qn) * qn / ((1 - b * qn) * (1 - d * qn) * (1 - a * qn / b) * (1 - a * qn / d))


def num_6psi6_check(point: NumericPoint) -> Residual:
    """The specialised 6psi6 sum (c = a/b, e = a/d, times its normalising factor) against its product."""
    with mpmath.workprec(point.prec):
        q, a, b, d = (mpmath.mpmathify(v) for v in (point.q, point["a"], point["b"], point["d"]))
        eps = point.tol()
        # both tails decay like |q|^|n|
        rho = _settled(abs(q), q, (a, b, d, a / b, a / d))
        pos, e1 = _tail(_sixpsi_term(0, q, a, b, d), rho, eps, lambda n, prev: _sixpsi_term(n, q, a, b, d))
        neg, e2 = _tail(mpmath.mpf(0), rho, eps, lambda n, prev: _sixpsi_term(-n, q, a, b, d))
        lhs = pos + neg
        rhs = _ratio(
            [q, q, a, q / a, b * q / d, d * q / b, a * q / (b * d), b * d * q / a],
            [b, q / b, d, q / d, a / b, b * q / a, a / d, d * q / a],
            q,
        )
        return Residual("BAILEY_6PSI6", point, lhs, rhs, _rel(lhs, rhs), e1 + e2)


def num_6psi6_general(point: NumericPoint) -> Residual:
    """Bailey's 6psi6 sum with free b, c, d, e; needs |q a^2/(bcde)| < 1."""
    with mpmath.workprec(point.prec):
        q, a, b, c, d, e = (mpmath.mpmathify(v) for v in (point.q, point["a"], point["b"], point["c"], point["d"], point["e"]))
        w = q * a * a / (b * c * d * e)
        if not abs(w) < 1:
            raise RegionError("|q a^2/(bcde)| < 1")
        eps = point.tol()
        params = (b, c, d, e)

        def step_pos(n, prev):
            k = n - 1
            r = (1 - a * q ** (2 * k + 2)) / (1 - a * q ** (2 * k)) * w
            for x in params:
                r *= (1 - x * q**k) / (1 - a * q ** (k + 1) / x)
            return prev * r

        def step_neg(n, prev):
            # term(-n)/term(-n+1), using (x;q)_(-n) = 1/(x q^-n;q)_n
            k = -n
            r = (1 - a * q ** (2 * k)) / (1 - a * q ** (2 * k + 2)) / w
            for x in params:
                r *= (1 - a * q ** (k + 1) / x) / (1 - x * q**k)
            return (prev if n > 1 else mpmath.mpf(1)) * r

        # both tail ratios tend to |w|
        rho = _settled(abs(w), q, (a,) + params + tuple(a / x for x in params))
        pos, e1 = _tail(mpmath.mpf(1), rho, eps, step_pos)
        neg, e2 = _tail(mpmath.mpf(0), rho, eps, step_neg)
        lhs = pos + neg
        aq = a * q
        rhs = _ratio(
            [aq, aq / (b * c), aq / (b * d), aq / (b * e), aq / (c * d), aq / (c * e), aq / (d * e), q, q / a],
            [aq / b, aq / c, aq / d, aq / e, q / b, q / c, q / d, q / e, q * a * a / (b * c * d * e)],
            q,
        )
        return Residual("BAILEY_6PSI6_GENERAL", point, lhs, rhs, _rel(lhs, rhs), e1 + e2)


# ---------------------------------------------------------------------------
# registry of numeric checks with default points


def _pt(q, **params):
    return {"q": q, "params": params}


NUMERIC_CHECKS = {
    "RAM_1PSI1": (num_1psi1_check, [_pt("0.1", a="2", b="0.3", z="0.5"), _pt("0.3", a="1.5", b="0.2", z="0.4"),
                                    _pt("-0.2", a="-3", b="0.5", z="0.6"), _pt("0.05", a="0.7", b="0.1", z="-0.3"),
                                    _pt("0.4", a="2.5", b="-0.6", z="0.7")]),
    "LAMBERT_BILATERAL": (num_lambert_bilateral, [_pt("0.05", a="0.7", z="0.4"), _pt("0.2", a="1.7", z="0.5"),
                                                  _pt("-0.3", a="0.45", z="0.6"), _pt("0.1", a="-2", z="-0.35"),
                                                  _pt("0.5", a="0.3", z="0.8")]),
    "LAMBERT_SECTIONED": (num_lambert_sectioned, [_pt("0.05", a="0.7", z="0.4"), _pt("0.2", a="1.7", z="0.5"),
                                                  _pt("-0.3", a="0.45", z="0.6")]),
    "BAILEY_6PSI6": (num_6psi6_check, [_pt("0.1", a="0.9", b="0.35", d="0.4"), _pt("0.2", a="1.3", b="0.6", d="-0.5"),
                                       _pt("-0.15", a="0.5", b="0.7", d="0.3"), _pt("0.3", a="2.2", b="1.4", d="0.8"),
                                       _pt("0.05", a="-0.4", b="0.25", d="1.9")]),
    "BAILEY_6PSI6_GENERAL": (num_6psi6_general, [_pt("0.1", a="0.5", b="2", c="3", d="1.5", e="2.5"),
                                                 _pt("0.2", a="0.3", b="-2", c="1.7", d="2.2", e="4")]),
}


def run_numeric(name: str, point=None, prec: int = 128, **kw) -> list[Residual]:
    """Run a named check at one JSON point, or at all of its default points."""
    fn, defaults = NUMERIC_CHECKS[name]
    pts = [point] if point is not None else defaults
    out = []
    need = set(defaults[0]["params"])
    for p in pts:
        if not isinstance(p, NumericPoint):
            p = json.loads(p) if isinstance(p, str) else p
            if not isinstance(p, dict) or "q" not in p or set(p.get("params", {})) != need:
                raise ValueError(f'{name} needs a point {{"q": ..., "params": {{{", ".join(sorted(need))}}}}}')
            p = NumericPoint.from_json({**p, "prec": prec})
        out.append(fn(p, **kw))
    return out


def consistency_check(case, N: int = 60, q="0.1", prec: int = 128, const=1000):
    """Compare truncated exact sides at q with direct numeric evaluation of the same expressions.

    The allowed gap is const * |q|^(N+1)/(1 - |q|) times the largest
    coefficient seen, plus a rounding allowance.
    """
    with mpmath.workprec(prec):
        qv = _parse_num(q)
        out = {}
        for side, expr, build in (("lhs", case.lhs, case.build_lhs), ("rhs", case.rhs, case.build_rhs)):
            s = build(N)
            approx = s.evaluate(qv)
            exact = expr.numeric(qv, mpmath.mp)
            big = max([abs(_to_mp(c, mpmath.mp)) for _, c in s.items()] + [mpmath.mpf(1)])
            tail = const * big * abs(qv) ** (N + 1) / (1 - abs(qv)) + mpmath.mpf(2) ** (-prec + 20) * max(1, abs(exact))
            out[side] = {"series": approx, "numeric": exact, "gap": abs(approx - exact), "bound": tail}
        out["ok"] = all(out[s]["gap"] <= out[s]["bound"] for s in ("lhs", "rhs"))
        return out
