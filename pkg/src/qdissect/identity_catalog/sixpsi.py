"""Consequences of the bilateral 6psi6 sum (group ``sixpsi``)."""

from __future__ import annotations

from ..product_algebra import mono, product
from .base import IdentityCase, Prod, Sum, auto_base, register, require, require_nondegenerate, require_nonsingular, zero_expr
from .prop import Qj


def t61_lhs(a, b, d, t) -> Prod:
    Q = Qj(t)
    return Prod(
        product(
            [Q, Q, a, Q / a, (b * Q) / d, (d * Q) / b, (a * Q) / (b * d), (b * d * Q) / a],
            [b, Q / b, d, Q / d, a / b, (b * Q) / a, a / d, (d * Q) / a],
            base=t,
        )
    )


def t61_term(a, b, d, m, r, t) -> Prod:
    Qm, Qr = Qj(t, m), Qj(t, r)
    Qmr = Qj(t, m - r)
    return Prod(
        product(
            [Qm, Qm, a * Qj(t, 2 * r), Qj(t, m - 2 * r) / a, (b * Qm) / d, (d * Qm) / b, (a * Qm) / (b * d), (b * d * Qm) / a],
            [b * Qr, Qmr / b, d * Qr, Qmr / d, (a * Qr) / b, (b * Qmr) / a, (a * Qr) / d, (d * Qmr) / a],
            base=t * m,
            prefactor=Qr,
        )
    )


def _t61_defaults():
    out = []
    for a, b, d in ((mono(1, 5), mono(1, 1), mono(1, 2)), (mono(1, 4), mono(2, 1), mono(1, 2))):
        for m in (1, 2, 3):
            out.append({"a": a, "b": b, "d": d, "m": m})
    out.append({"a": mono(1, 3), "b": mono(-1, 1), "d": mono(3, 1), "m": 2})
    out.append({"a": mono(-2, 2), "b": mono(1, 1), "d": mono(1, 3), "m": 4})
    return out


@register(
    "T61_DISSECT",
    "sixpsi",
    "product from the 6psi6 sum with c = a/b, e = a/d, split over n = mk + r",
    {"a": "monomial", "b": "monomial", "d": "monomial", "m": "posint", "t": "posint"},
    _t61_defaults(),
)
def t61_dissect(params):
    a, b, d, m = params["a"], params["b"], params["d"], params["m"]
    require(m >= 1, "m >= 1")
    require(bool(a.c and b.c and d.c), "a, b, d != 0")

    def build(t):
        lhs = t61_lhs(a, b, d, t)
        terms = [t61_term(a, b, d, m, r, t) for r in range(m)]
        require_nonsingular(lhs, *terms)
        require_nondegenerate(lhs)
        return IdentityCase("T61_DISSECT", "sixpsi", {**params, "t": t}, lhs, Sum(terms))

    return auto_base(params, build)


def c62_term(a, d, m, r, t) -> Prod:
    Qm = Qj(t, m)
    ad = a * d
    return Prod(
        product(
            [ad * Qj(t, 2 * r), Qm / (ad * Qj(t, 2 * r))],
            [
                a * Qj(t, r), Qm / (a * Qj(t, r)),
                a * Qj(t, r - 1), Qm / (a * Qj(t, r - 1)),
                d * Qj(t, r), Qm / (d * Qj(t, r)),
                d * Qj(t, r + 1), Qm / (d * Qj(t, r + 1)),
            ],
            base=t * m,
            prefactor=Qj(t, r),
        )
    )


def c62_sum(a, d, m, t, upper=None) -> Sum:
    """Terms r = 0..upper; the zero sum needs upper = m - 1."""
    upper = m - 1 if upper is None else upper
    return Sum([c62_term(a, d, m, r, t) for r in range(upper + 1)])


@register(
    "C62_ZEROSUM",
    "sixpsi",
    "b = dq, a -> ad: the m-term sum vanishes identically",
    {"a": "monomial", "d": "monomial", "m": "posint", "t": "posint", "upper": "nonneg"},
    [
        {"a": mono(2, 1), "d": mono(-1, 1), "m": 2},
        {"a": mono(1, 1), "d": mono(2, 2), "m": 3},
        {"a": mono(-3, 1), "d": mono(1, 3), "m": 4},
        {"a": mono(1, 2), "d": mono(1, 1), "m": 3},
    ],
)
def c62_zerosum(params):
    a, d, m = params["a"], params["d"], params["m"]
    require(m >= 2, "m >= 2 (for m = 1 the cancelled factor (q^(m-1);q^m) is zero)")
    require(bool(a.c and d.c), "a, d != 0")
    upper = params.get("upper")

    def build(t):
        lhs = c62_sum(a, d, m, t, upper)
        require_nonsingular(lhs)
        p = {**params, "t": t}
        return IdentityCase("C62_ZEROSUM", "sixpsi", p, lhs, zero_expr())

    return auto_base(params, build)

