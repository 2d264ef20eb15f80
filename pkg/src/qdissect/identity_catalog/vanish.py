"""Vanishing arithmetic progressions (group ``vanish``)."""

from __future__ import annotations

from math import gcd

from ..product_algebra import eval_product_expr, mono, product
from ..vanishing import family_instance
from .base import (
    IdentityCase,
    Prod,
    SeriesFn,
    Sum,
    auto_base,
    component_expr,
    register,
    require,
    require_base,
    require_nondegenerate,
    require_nonsingular,
    zero_expr,
)
from .prop import Qj


# ---------------------------------------------------------------------------
# a = Q^(p-s) z^(-p): one z-class drops out


def c41_lhs(p, s, z, t):
    Q = Qj(t)
    return product(
        [Q, Q, Qj(t, p - s) * z ** (1 - p), Qj(t, s + 1 - p) * z ** (p - 1)],
        [Qj(t, p - s) * z ** (-p), Qj(t, s + 1 - p) * z**p, z, Q / z],
        base=t,
    )


def c41_term(p, s, z, j, t):
    Qp = Qj(t, p)
    zp = z**p
    return product(
        [Qp, Qp, Qj(t, p - s + j), Qj(t, s - j)],
        [Qj(t, p - s + j) / zp, Qj(t, s - j) * zp, zp, Qp / zp],
        base=t * p,
        prefactor=z**j,
    )


@register(
    "C41_VANISH",
    "vanish",
    "z-class s of the specialised theta quotient is zero; with z = c q^e the classes are q-classes",
    {"p": "posint", "s": "nonneg", "z": "monomial", "t": "posint"},
    [
        {"p": 2, "s": 1, "z": mono(1, 1)},
        {"p": 3, "s": 1, "z": mono(2, 1)},
        {"p": 4, "s": 3, "z": mono(-1, 1)},
        {"p": 5, "s": 2, "z": mono(1, 2)},
        {"p": 3, "s": 0, "z": mono(-1, 2)},
    ],
)
def c41_vanish(params):
    p, s, z = params["p"], params["s"], params["z"]
    require(0 <= s <= p - 1, "0 <= s <= p-1")
    require(bool(z.c), "z != 0")
    require(gcd(z.e, p) == 1, "gcd(exponent of z, p) = 1")

    def build(t):
        require_base(t % p == 0, "p | t, so every product is a series in q^p")
        lhs = Prod(c41_lhs(p, s, z, t))
        terms = [Prod(c41_term(p, s, z, j, t)) for j in range(p)]
        rhs = Sum(terms)
        require_nonsingular(lhs, rhs)
        require_nondegenerate(lhs)

        def parts(N):
            out = [(f"q-class {(j * z.e) % p} is the j={j} term", component_expr(lhs, p, j * z.e), terms[j]) for j in range(p)]
            out.append((f"q-class {(s * z.e) % p} vanishes", component_expr(lhs, p, s * z.e), zero_expr()))
            return out

        return IdentityCase("C41_VANISH", "vanish", {**params, "t": t}, lhs, rhs, parts=parts)

    return auto_base(params, build)


# ---------------------------------------------------------------------------
# q -> q^(mk), p = k, z = q^(mk-r)


def c2eq1_lhs(k, m, r, s):
    km = k * m
    u = r - k * (r - m * s)
    return product(
        [mono(1, km), mono(1, km), mono(1, u), mono(1, km - u)],
        [mono(1, k * (r - m * s)), mono(1, km - k * (r - m * s)), mono(1, r), mono(1, km - r)],
        base=km,
    )


def c2eq1_term(k, m, r, s, j):
    B = k * k * m
    return product(
        [mono(1, B), mono(1, B), mono(1, k * m * (j + k - s)), mono(1, k * m * (s - j))],
        [mono(1, k * (k * m - r)), mono(1, k * r), mono(1, k * (j * m - s * m + r)), mono(1, k * (-j * m + k * m + s * m - r))],
        base=B,
        prefactor=mono(1, j * (k * m - r)),
    )


@register(
    "C2EQ1_DISSECT",
    "vanish",
    "k-dissection whose j = s term is identically zero",
    {"k": "posint", "m": "posint", "r": "posint", "s": "nonneg"},
    [
        {"k": 4, "m": 2, "r": 7, "s": 3},
        {"k": 3, "m": 2, "r": 5, "s": 2},
        {"k": 5, "m": 3, "r": 7, "s": 2},
        {"k": 2, "m": 3, "r": 5, "s": 1},
    ],
)
def c2eq1_dissect(params):
    k, m, r, s = params["k"], params["m"], params["r"], params["s"]
    require(k > 1 and m > 1, "k > 1, m > 1")
    require(1 <= r < m * k, "1 <= r < mk")
    require(gcd(r, k) == 1, "gcd(r, k) = 1")
    require(0 <= s < k and 1 <= r - m * s < m, "r = sm + t with 0 <= s < k, 1 <= t < m")
    lhs = Prod(c2eq1_lhs(k, m, r, s))
    terms = [Prod(c2eq1_term(k, m, r, s, j)) for j in range(k)]
    rhs = Sum(terms)
    require_nonsingular(lhs, rhs)

    def parts(N):
        out = [
            (f"q-class {(j * (k * m - r)) % k} is the j={j} term", component_expr(lhs, k, j * (k * m - r)), terms[j])
            for j in range(k)
        ]
        out.append(("j = s term is zero", terms[s], zero_expr()))
        return out

    return IdentityCase("C2EQ1_DISSECT", "vanish", params, lhs, rhs, parts=parts)


# ---------------------------------------------------------------------------
# product families: the claimed class compared against zero


def _family_row(rid, family, names, defaults, description):
    schema = {n: ("str" if n == "which" else "posint") for n in names}

    @register(rid, "vanish", description, schema, defaults)
    def build(params):
        p, k, rho = family_instance(family, params)
        lhs = SeriesFn(lambda W, ring: eval_product_expr(p, W, ring).component(k, rho), prods=[p])
        return IdentityCase(rid, "vanish", dict(params), lhs, zero_expr(), description=f"{p}: class {rho} mod {k}")

    return build


_family_row(
    "T2N_VANISH", "T2N", ("k", "m", "r"),
    [{"k": 2, "m": 2, "r": 1}, {"k": 3, "m": 2, "r": 5}, {"k": 4, "m": 3, "r": 7}, {"k": 5, "m": 4, "r": 9}],
    "c_(kn - rs) = 0 for the quotient with q^r, q^(mk-r) below",
)
_family_row(
    "T3N_VANISH", "T3N", ("k", "m", "r"),
    [{"k": 3, "m": 2, "r": 5}, {"k": 5, "m": 3, "r": 7}, {"k": 3, "m": 4, "r": 5}, {"k": 5, "m": 2, "r": 3}],
    "d_(kn - rs) = 0 with -q^r, -q^(mk-r) below (k odd)",
)
_family_row(
    "AB_T1", "AB_T1", ("k", "r"),
    [{"k": 4, "r": 3}, {"k": 4, "r": 1}, {"k": 6, "r": 5}, {"k": 6, "r": 1}, {"k": 9, "r": 2}],
    "phi_(kn + r(k-r+1)/2) = 0",
)
_family_row(
    "AG_T1", "AG_T1", ("k", "m", "s"),
    [{"k": 3, "m": 2, "s": 1}, {"k": 5, "m": 2, "s": 3}, {"k": 7, "m": 3, "s": 2}, {"k": 4, "m": 3, "s": 5}],
    "a_n = 0 for n = r r' mod k",
)
_family_row(
    "AG_T2", "AG_T2", ("k", "m", "s"),
    [{"k": 3, "m": 2, "s": 1}, {"k": 5, "m": 2, "s": 3}, {"k": 7, "m": 3, "s": 2}, {"k": 5, "m": 4, "s": 7}],
    "a'_n = 0 for n = r r' mod k, -q^s below (k odd)",
)
for _w, _d in (("F", "c_(4n+3)"), ("FINV", "d_(4n+2)"), ("G", "a_(6n+5)"), ("GINV", "b_(6n+3)")):
    _family_row(f"RS_{_w}", "RS", ("which",), [{"which": _w}], f"{_d} = 0")
