"""Fine's function and the Rogers-Fine identity (group ``fine``)."""

from __future__ import annotations

from gmpy2 import mpq

from .. import qsums as S
from ..product_algebra import mono, product
from .base import IdentityCase, Mul, Prod, SeriesFn, Sum, auto_base, lambert_ok, register, require, require_base


def fn(f) -> SeriesFn:
    return SeriesFn(lambda W, ring: f(W, ring))


RF_SCHEMA = {"alpha": "monomial", "beta": "monomial", "tau": "monomial", "t": "posint"}
RF_DEFAULTS = [
    {"alpha": mono(1, 1), "beta": mono(1, 2), "tau": mono(1, 1)},
    {"alpha": mono(2, 1), "beta": mono(1, 1), "tau": mono(1, 1)},
    {"alpha": mono(-1, 1), "beta": mono(3, 2), "tau": mono(1, 2)},
    {"alpha": mono(1, 2), "beta": mono(mpq(1, 2), 0), "tau": mono(-2, 1)},
]


def _rf_case(rid, params, rhs_fn):
    al, be, tau = params["alpha"], params["beta"], params["tau"]
    require(tau.e > 0, "|tau| < 1")

    def build(t):
        require_base(lambert_ok(be, t, start=0), "beta q^n != 1 for n >= 0")
        lhs = fn(lambda W, ring: S.rf_lhs(al, be, tau, W, t, ring))
        rhs = fn(lambda W, ring: rhs_fn(al, be, tau, W, t, ring))
        return IdentityCase(rid, "fine", {**params, "t": t}, lhs, rhs)

    return auto_base(params, build)


@register("RF1", "fine", "sum (alpha;q)_n/(beta;q)_n tau^n in Rogers' form", RF_SCHEMA, RF_DEFAULTS)
def rf1(params):
    return _rf_case("RF1", params, S.rf1_rhs)


@register("RF2", "fine", "the same series in Fine's second form", RF_SCHEMA, RF_DEFAULTS)
def rf2(params):
    return _rf_case("RF2", params, S.rf2_rhs)


FINE_SCHEMA = {"alpha": "monomial", "tau": "monomial", "t": "posint"}
FINE_PAIRS = [
    {"alpha": mono(1, 1), "tau": mono(1, 1)},
    {"alpha": mono(2, 1), "tau": mono(1, 2)},
    {"alpha": mono(-1, 1), "tau": mono(3, 1)},
    {"alpha": mono(mpq(1, 2), 0), "tau": mono(-1, 1)},
]


def F_funcs(al, tau, t):
    return {
        1: lambda W, ring: S.fine_F1(al, tau, W, t, ring),
        2: lambda W, ring: S.fine_F2(al, tau, W, t, ring),
        3: lambda W, ring: S.fine_F3(al, tau, W, t, ring),
    }


def _fine_hyp(al, tau, t):
    require(tau.e > 0, "|tau| < 1")
    require_base(lambert_ok(al, t, start=0), "alpha q^n != 1 for n >= 0")


@register("FINE_F123", "fine", "F_1 = F_2 = F_3 (beta = alpha q, divided by 1 - alpha)", FINE_SCHEMA, FINE_PAIRS)
def fine_f123(params):
    al, tau = params["alpha"], params["tau"]

    def build(t):
        _fine_hyp(al, tau, t)
        F = F_funcs(al, tau, t)
        return IdentityCase(
            "FINE_F123", "fine", {**params, "t": t}, fn(F[1]), fn(F[2]), parts=lambda N: [("F_3 = F_1", fn(F[3]), fn(F[1]))]
        )

    return auto_base(params, build)


@register(
    "FINE_SECTION",
    "fine",
    "F_i(alpha, tau, q) = sum_r tau^r F_i(alpha q^r, tau^m, q^m), each summand checked against its index class",
    {**FINE_SCHEMA, "m": "posint"},
    [{**p, "m": m} for m in (2, 3, 4) for p in FINE_PAIRS[:3]],
)
def fine_section(params):
    al, tau, m = params["alpha"], params["tau"], params["m"]
    require(m >= 1, "m >= 1")

    def build(t):
        _fine_hyp(al, tau, t)
        shifted = [F_funcs(al.shift(t * r), tau**m, t * m) for r in range(m)]

        def summand(i, r):
            return Mul([Prod(product(prefactor=tau**r)), fn(shifted[r][i])])

        def cls(r):
            return fn(lambda W, ring: S.fine_F1(al, tau, W, t, ring, m=m, cls=r))

        def parts(N):
            return [(f"tau^{r} F_{i}(alpha q^{r}, tau^m, q^m) is index class {r}", summand(i, r), cls(r)) for i in (1, 2, 3) for r in range(m)]

        lhs = fn(F_funcs(al, tau, t)[1])
        return IdentityCase("FINE_SECTION", "fine", {**params, "t": t}, lhs, Sum([summand(2, r) for r in range(m)]), parts=parts)

    return auto_base(params, build)
