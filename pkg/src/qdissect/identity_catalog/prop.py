"""z-dissection of the theta quotient and its iterates (group ``prop``)."""

from __future__ import annotations

from ..product_algebra import ProductExpr, QMonomial, mono, poch, product
from .base import Mul, Prod, SeriesFn, Sum, IdentityCase, auto_base, register, require, require_nondegenerate, require_nonsingular

ONE = QMonomial(1, 0)


def Qj(t: int, j: int = 1) -> QMonomial:
    return mono(1, t * j)


def theta_quotient(a: QMonomial, z: QMonomial, t: int) -> ProductExpr:
    """(Q, Q, az, Q/(az); Q) / (a, Q/a, z, Q/z; Q) with Q = q^t."""
    Q = Qj(t)
    return product([Q, Q, a * z, Q / (a * z)], [a, Q / a, z, Q / z], base=t)


def prop1_term(a, z, p: int, j: int, t: int) -> ProductExpr:
    Qp = Qj(t, p)
    zp = z**p
    aj = a.shift(t * j)
    return product(
        [Qp, Qp, aj * zp, Qj(t, p - j) / (a * zp)],
        [aj, Qj(t, p - j) / a, zp, Qp / zp],
        base=t * p,
        prefactor=z**j,
    )


def prop1_rhs(a, z, p: int, t: int) -> Sum:
    return Sum([Prod(prop1_term(a, z, p, j, t)) for j in range(p)])


PROP1_SCHEMA = {"a": "monomial", "z": "monomial", "p": "posint", "t": "posint"}


def _prop1_defaults():
    out = []
    for a, z in ((mono(1, 2), mono(1, 1)), (mono(1, 3), mono(2, 1)), (mono(1, 1), mono(-1, 1))):
        for p in (1, 2, 3, 5):
            out.append({"a": a, "z": z, "p": p})
    return out


@register("PROP1_DISSECT", "prop", "theta quotient as a sum of p products, one per class of z-powers", PROP1_SCHEMA, _prop1_defaults())
def prop1_dissect(params):
    a, z, p = params["a"], params["z"], params["p"]
    require(p >= 1, "p >= 1")
    require(bool(a.c) and bool(z.c), "a, z != 0")

    def build(t):
        lhs, rhs = Prod(theta_quotient(a, z, t)), prop1_rhs(a, z, p, t)
        require_nonsingular(lhs, rhs)
        require_nondegenerate(lhs)
        return IdentityCase("PROP1_DISSECT", "prop", {**params, "t": t}, lhs, rhs)

    return auto_base(params, build)


def prop1_iter_rhs(a, z, p: int, m: int, t: int) -> Mul:
    P = p**m
    zP = z**P
    QP = Qj(t, P)
    lead = product([QP, QP, a * zP, QP / (a * zP)], [a, QP / a, zP, QP / zP], base=t * P)
    factors = [Prod(lead)]
    for k in range(1, m + 1):
        pk, pk1 = p**k, p ** (k - 1)
        zk = z**pk
        Qk = Qj(t, pk)
        terms = [Prod(ProductExpr(ONE))]
        for j in range(1, p):
            shift = Qj(t, pk - j * pk1)
            terms.append(
                Prod(
                    product(
                        [a, Qk / a, a.shift(t * j * pk1) * zk, shift / (a * zk)],
                        [a.shift(t * j * pk1), shift / a, a * zk, Qk / (a * zk)],
                        base=t * pk,
                        prefactor=z ** (j * pk1),
                    )
                )
            )
        factors.append(Sum(terms))
    return Mul(factors)


@register(
    "PROP1_ITER",
    "prop",
    "m-fold iterate of the z-dissection",
    {**PROP1_SCHEMA, "m": "posint"},
    [
        {"a": mono(1, 2), "z": mono(1, 1), "p": 2, "m": 2},
        {"a": mono(1, 3), "z": mono(2, 1), "p": 2, "m": 3},
        {"a": mono(1, 1), "z": mono(-1, 1), "p": 3, "m": 2},
        {"a": mono(1, 2), "z": mono(1, 1), "p": 3, "m": 1},
    ],
)
def prop1_iter(params):
    a, z, p, m = params["a"], params["z"], params["p"], params["m"]
    require(p >= 1 and m >= 1, "m, p >= 1")

    def build(t):
        lhs, rhs = Prod(theta_quotient(a, z, t)), prop1_iter_rhs(a, z, p, m, t)
        require_nonsingular(lhs, rhs)
        require_nondegenerate(lhs)
        return IdentityCase("PROP1_ITER", "prop", {**params, "t": t}, lhs, rhs)

    return auto_base(params, build)


# ---------------------------------------------------------------------------
# q -> q^5, z -> q, a -> q^2, p = 2


def ex23_lhs() -> ProductExpr:
    return product([mono(1, 5), mono(1, 5)], [mono(1, 1), mono(1, 4)], base=5)


def ex23_factor(k: int) -> Sum:
    h, f = 2 ** (k - 1), 2**k
    ratio = product(
        [mono(1, 2), mono(1, 5 * f - 2), mono(1, 7 * h + 2), mono(1, 3 * h - 2)],
        [mono(1, 5 * h + 2), mono(1, 5 * h - 2), mono(1, f + 2), mono(1, 4 * f - 2)],
        base=5 * f,
        prefactor=mono(1, h),
    )
    return Sum([Prod(ProductExpr(ONE)), Prod(ratio)])


def ex23_finite_rhs(m: int) -> Mul:
    M = 2**m
    lead = product(
        [mono(1, 5 * M), mono(1, 5 * M), mono(1, M + 2), mono(1, 4 * M - 2)],
        [mono(1, 2), mono(1, 5 * M - 2), mono(1, M), mono(1, 4 * M)],
        base=5 * M,
    )
    return Mul([Prod(lead)] + [ex23_factor(k) for k in range(1, m + 1)])


@register(
    "EX23_FINITE",
    "prop",
    "finite-m product expansion of (q^5,q^5;q^5)/(q,q^4;q^5)",
    {"m": "posint"},
    [{"m": 1}, {"m": 2}, {"m": 3}, {"m": 4}],
)
def ex23_finite(params):
    m = params["m"]
    require(m >= 1, "m >= 1")
    return IdentityCase("EX23_FINITE", "prop", params, Prod(ex23_lhs()), ex23_finite_rhs(m))


def ex23_inf_expr(K: int) -> Mul:
    pre = ProductExpr(ONE, (poch(mono(1, 2), 1, -1, length=1),))
    return Mul([Prod(pre)] + [ex23_factor(k) for k in range(1, K + 1)])


def ex23_inf_terms(N: int) -> int:
    """Factors whose correction q^(2^(k-1)) * (power series) can reach q^N."""
    K = 0
    while 2**K <= N:
        K += 1
    return K


@register("EX23_INF", "prop", "the m -> infinity limit, truncated where 2^(k-1) > N", {}, [{}])
def ex23_inf(params):
    rhs = SeriesFn(
        lambda W, ring: ex23_inf_expr(ex23_inf_terms(W)).series(W, ring),
        numeric_fn=lambda q, ctx: ex23_inf_expr(ex23_inf_terms(4 * ctx.prec)).numeric(q, ctx),
    )
    return IdentityCase("EX23_INF", "prop", params, Prod(ex23_lhs()), rhs)
