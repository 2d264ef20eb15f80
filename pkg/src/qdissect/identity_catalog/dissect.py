"""Explicit m-dissections and the continued fractions behind them (group ``dissect``)."""

from __future__ import annotations

from math import gcd

from ..exact_coefficients import QQ
from ..product_algebra import ProductExpr, QMonomial, borwein_a, cf_convergent, mono, poch, product
from ..qseries_core import TruncatedSeries
from .base import (
    IdentityCase,
    Mul,
    Prod,
    SeriesFn,
    Sum,
    class_parts,
    component_expr,
    register,
    require,
    require_nonsingular,
    zero_expr,
)
from .vanish import c2eq1_lhs, c2eq1_term


def P(num, den=(), base=1, pre=None) -> Prod:
    """Shorthand: exponent lists instead of monomials."""
    return Prod(product([mono(1, e) for e in num], [mono(1, e) for e in den], base=base, prefactor=pre))


def _q(e: int) -> QMonomial:
    return mono(1, e)


# ---------------------------------------------------------------------------
# 4-dissection of (q^3,q^5;q^8)/(q,q^7;q^8)


def mod8_product() -> Prod:
    return P([3, 5], [1, 7], base=8)


def hirsch_terms() -> list:
    return [
        P([12, 12, 20, 20], [8, 16, 16, 24], base=32),
        P([4, 12, 20, 28], [8, 8, 24, 24], base=32, pre=_q(1)),
        P([4, 12, 20, 28], [8, 16, 16, 24], base=32, pre=_q(2)),
    ]


@register("HIRSCH_4DISS", "dissect", "4-dissection of (q^3,q^5;q^8)/(q,q^7;q^8); the class 3 mod 4 is empty", {}, [{}])
def hirsch_4diss(params):
    lhs = mod8_product()
    terms = hirsch_terms()
    # the same dissection read off the vanishing-class identity with k=4, m=2, r=7, s=3
    lift = P([4, 4], [8, 8], base=8)
    raw_lhs = Mul([Prod(c2eq1_lhs(4, 2, 7, 3)), lift])
    raw_terms = [Mul([Prod(c2eq1_term(4, 2, 7, 3, j)), lift]) for j in range(4)]

    def parts(N):
        out = class_parts(lhs, terms, 4, range(3))
        out.append(("q-class 3 mod 4 vanishes", component_expr(lhs, 4, 3), zero_expr()))
        out.append(("lifted left side is the product", raw_lhs, lhs))
        out.append(("lifted right side is the stated sum", Sum(raw_terms), Sum(terms)))
        return out

    return IdentityCase("HIRSCH_4DISS", "dissect", params, lhs, Sum(terms), parts=parts)


# ---------------------------------------------------------------------------
# q -> q^t, z = q^r, a = q^s


def midt_lhs(t, s, r) -> Prod:
    return P([t, t, r + s, t - r - s], [s, t - s, r, t - r], base=t)


def midt_term(t, s, r, p, j) -> Prod:
    pt = p * t
    return P([pt, pt, p * r + s + j * t, (p - j) * t - p * r - s], [j * t + s, (p - j) * t - s, p * r, (t - r) * p], base=pt, pre=_q(j * r))


def is_dissection(t, s, r, p) -> bool:
    return t % p == 0 and s % p == 0 and gcd(r, p) == 1


@register(
    "MIDT_GEN",
    "dissect",
    "theta quotient at a = q^s, z = q^r in base q^t, split into p terms; a p-dissection when p | s, p | t, gcd(r, p) = 1",
    {"t": "posint", "s": "posint", "r": "posint", "p": "posint"},
    [
        {"t": 12, "s": 6, "r": 1, "p": 2},
        {"t": 12, "s": 6, "r": 1, "p": 3},
        {"t": 6, "s": 2, "r": 3, "p": 2},
        {"t": 6, "s": 2, "r": 1, "p": 2},
        {"t": 8, "s": 4, "r": 3, "p": 4},
        {"t": 7, "s": 2, "r": 3, "p": 3},
    ],
)
def midt_gen(params):
    t, s, r, p = params["t"], params["s"], params["r"], params["p"]
    require(1 <= r < t and 1 <= s < t, "1 <= r, s < t")
    require(p >= 1, "p >= 1")
    lhs = midt_lhs(t, s, r)
    terms = [midt_term(t, s, r, p, j) for j in range(p)]
    require_nonsingular(lhs, *terms)
    parts = None
    if is_dissection(t, s, r, p):
        parts = lambda N: class_parts(lhs, terms, p, [j * r for j in range(p)])  # noqa: E731
    return IdentityCase("MIDT_GEN", "dissect", params, lhs, Sum(terms), parts=parts)


# ---------------------------------------------------------------------------
# (q^7,q^5;q^12)/(q,q^11;q^12) and its reciprocal


def mod12_product() -> Prod:
    return P([7, 5], [1, 11], base=12)


def mod12_lift() -> Prod:
    """(q^6,q^6;q^12)/(q^12,q^12;q^12): turns the t=12, s=6 quotient into the mod-12 product."""
    return P([6, 6], [12, 12], base=12)


def lin_term(p, j) -> Prod:
    return P([12 * p, 12 * p, 12 * j + p + 6, 12 * (p - j) - p - 6], [12 * j + 6, 12 * (p - j) - 6, p, 11 * p], base=12 * p, pre=_q(j))


P_SCHEMA = {"p": "posint"}
P_DEFAULTS = [{"p": 2}, {"p": 3}, {"p": 6}]


@register("LIN_P_DISS", "dissect", "p-dissection of (q^12,q^12,q^7,q^5;q^12)/(q^6,q^6,q,q^11;q^12)", P_SCHEMA, P_DEFAULTS)
def lin_p_diss(params):
    p = params["p"]
    require(p in (1, 2, 3, 6), "p | 6 (so p | s and p | t)")
    lhs = P([12, 12, 7, 5], [6, 6, 1, 11], base=12)
    terms = [lin_term(p, j) for j in range(p)]
    lift = mod12_lift()

    def parts(N):
        out = class_parts(lhs, terms, p, range(p))
        out.append(("lifted left side is the mod-12 product", Mul([lhs, lift]), mod12_product()))
        out += class_parts(mod12_product(), [Mul([x, lift]) for x in terms], p, range(p), label="mod-12 product, q-class")
        return out

    return IdentityCase("LIN_P_DISS", "dissect", params, lhs, Sum(terms), parts=parts)


@register("RECIP_DISS", "dissect", "p-dissection of the reciprocal mod-12 product via t=12, s=6, r=5", P_SCHEMA, P_DEFAULTS)
def recip_diss(params):
    p = params["p"]
    require(p in (1, 2, 3, 6), "p | 6 (so p | s and p | t)")
    lhs = midt_lhs(12, 6, 5)
    terms = [midt_term(12, 6, 5, p, j) for j in range(p)]
    lift = mod12_lift()
    recip = P([1, 11], [7, 5], base=12)

    def parts(N):
        out = class_parts(lhs, terms, p, [5 * j for j in range(p)])
        out.append(("lifted left side is the reciprocal", Mul([lhs, lift]), recip))
        out += class_parts(recip, [Mul([x, lift]) for x in terms], p, [5 * j for j in range(p)], label="reciprocal, q-class")
        return out

    return IdentityCase("RECIP_DISS", "dissect", params, lhs, Sum(terms), parts=parts)


def lin3_terms() -> list:
    front = [6, 30], [12, 12, 24, 24]

    def term(num, den, e):
        return P(front[0] + num, front[1] + den, base=36, pre=_q(e))

    return [term([9, 18, 18, 27], [3, 33], 0), term([6, 15, 21, 30], [3, 33], 1), term([18, 18], [], 2)]


@register("LIN_3DISS", "dissect", "closed 3-dissection of (q^7,q^5;q^12)/(q,q^11;q^12)", {}, [{}])
def lin_3diss(params):
    lhs = mod12_product()
    terms = lin3_terms()
    return IdentityCase("LIN_3DISS", "dissect", params, lhs, Sum(terms), parts=lambda N: class_parts(lhs, terms, 3, range(3)))


# ---------------------------------------------------------------------------
# cubic continued fraction


def rc_product() -> Prod:
    return P([1, 5], [3, 3], base=6)


def rc_terms() -> list:
    """Right side for RC(q).  The printed source pairs this with 1/RC; the q-expansion says otherwise."""
    return [
        P([4, 8, 4, 8], [6, 6, 6, 6], base=12),
        P([2, 10, 2, 10], [6, 6, 6, 6], base=12, pre=mono(-1, 1)),
    ]


def rcinv_terms() -> list:
    return [
        P([4, 8, 4, 8], [6, 6, 2, 10], base=12),
        P([4, 8, 2, 10], [6, 6, 4, 8], base=12, pre=_q(1)),
    ]


def _rc_case(rid, lhs, terms, r):
    lift = P([2, 4], [6, 6], base=6)
    general = [Mul([midt_term(6, 2, r, 2, j), lift]) for j in range(2)]

    def parts(N):
        out = class_parts(lhs, terms, 2, range(2))
        out.append(("lifted t=6, s=2 quotient", Mul([midt_lhs(6, 2, r), lift]), lhs))
        out += [(f"general formula, j={j}", g, x) for j, (g, x) in enumerate(zip(general, terms))]
        return out

    return IdentityCase(rid, "dissect", {}, lhs, Sum(terms), parts=parts)


@register("RC_2DISS", "dissect", "2-dissection of the cubic continued fraction product", {}, [{}])
def rc_2diss(params):
    return _rc_case("RC_2DISS", rc_product(), rc_terms(), 3)


@register("RCINV_2DISS", "dissect", "2-dissection of its reciprocal", {}, [{}])
def rcinv_2diss(params):
    return _rc_case("RCINV_2DISS", P([3, 3], [1, 5], base=6), rcinv_terms(), 1)


def borwein_difference(W: int, ring=QQ) -> TruncatedSeries:
    a1 = borwein_a(W)
    a2 = borwein_a(W // 2).scale_exponents(2).truncate(W)
    return a1 - a2


@register("BORWEIN", "dissect", "a(q) - a(q^2) as 6q times the t=6, s=2, r=3 quotient", {}, [{}])
def borwein(params):
    lhs = SeriesFn(borwein_difference)
    rhs = P([1, 5, 6, 6], [2, 3, 3, 4], base=6, pre=mono(6, 1))
    return IdentityCase("BORWEIN", "dissect", params, lhs, rhs)


def rc_partials():
    def num(i):
        return 1 if i == 1 else {i - 1: 1, 2 * (i - 1): 1}

    return num, (lambda i: 0 if i == 0 else 1)


def rc_depth(N: int) -> int:
    """Smallest K with K(K+1)/2 > N: the tail after level K starts at that order."""
    K = 1
    while K * (K + 1) // 2 <= N:
        K += 1
    return K


def rc_convergent(K: int, N: int) -> TruncatedSeries:
    num, den = rc_partials()
    return cf_convergent(num, den, K, N)


@register("RC_CF", "dissect", "cubic continued fraction convergent against (q,q^5;q^6)/(q^3,q^3;q^6)", {}, [{}])
def rc_cf(params):
    lhs = SeriesFn(lambda W, ring: rc_convergent(rc_depth(W), W))
    return IdentityCase("RC_CF", "dissect", params, lhs, rc_product())


# ---------------------------------------------------------------------------
# 1/(1-ab) + (a-bQ)(b-aQ)/((1-ab)(1+Q^2)) + ...


def _poly(*binomials) -> dict:
    """Expand a product of sums of monomials into {exponent: coeff}."""
    out = {0: 1}
    for terms in binomials:
        nxt = {}
        for e0, c0 in out.items():
            for m in terms:
                nxt[e0 + m.e] = nxt.get(e0 + m.e, 0) + c0 * m.c
        out = {e: c for e, c in nxt.items() if c}
    return out


def entry12_partials(a: QMonomial, b: QMonomial, t: int):
    ab = a * b

    def num(i):
        if i == 1:
            return 1
        n = i - 1
        Qe = mono(1, t * (2 * n - 1))
        return _poly([a, -(b * Qe)], [b, -(a * Qe)])

    def den(i):
        if i == 0:
            return 0
        return _poly([mono(1, 0), -ab], [mono(1, 0), mono(1, 2 * t * (i - 1))] if i > 1 else [mono(1, 0)])

    return num, den


def entry12_order(a: QMonomial, b: QMonomial, t: int, i: int) -> int:
    """Lower bound for the order of the i-th partial numerator, i >= 2."""
    s = t * (2 * (i - 1) - 1)
    return min(a.e, b.e + s) + min(b.e, a.e + s)


def entry12_depth(a, b, t, N: int) -> int:
    K, acc = 1, 0
    while True:
        acc += entry12_order(a, b, t, K + 1)
        if acc > N:
            return K
        K += 1


def entry12_convergent(a, b, t, K: int, N: int, ring=QQ) -> TruncatedSeries:
    num, den = entry12_partials(a, b, t)
    return cf_convergent(num, den, K, N, ring)


def entry12_product(a, b, t) -> Prod:
    Q = mono(1, t)
    return Prod(product([a * a * Q**3, b * b * Q**3], [a * a * Q, b * b * Q], base=4 * t))


@register(
    "CF_ENTRY12",
    "dissect",
    "two-parameter continued fraction against (a^2Q^3,b^2Q^3;Q^4)/(a^2Q,b^2Q;Q^4), Q = q^t",
    {"a": "monomial", "b": "monomial", "t": "posint"},
    [
        {"a": mono(1, 2), "b": mono(1, 1), "t": 3},
        {"a": mono(2, 1), "b": mono(1, 1), "t": 1},
        {"a": mono(-1, 1), "b": mono(1, 2), "t": 1},
        {"a": mono(1, 1), "b": mono(-3, 1), "t": 2},
    ],
)
def cf_entry12(params):
    a, b, t = params["a"], params["b"], params.get("t") or 1
    require(a.e >= 1 and b.e >= 1, "a, b of positive order (|a|, |b| < 1)")
    lhs = SeriesFn(lambda W, ring: entry12_convergent(a, b, t, entry12_depth(a, b, t, W), W, ring))
    rhs = entry12_product(a, b, t)
    parts = None
    if (a, b, t) == (mono(1, 2), mono(1, 1), 3):
        one_minus_q = Prod(ProductExpr(QMonomial(1, 0), (poch(mono(1, 1), 1, 1, length=1),)))

        def parts(N):
            return [("(1-q) times the fraction is the reciprocal mod-12 product", Mul([one_minus_q, lhs]), P([1, 11], [5, 7], base=12))]

    return IdentityCase("CF_ENTRY12", "dissect", {**params, "t": t}, lhs, rhs, parts=parts)
