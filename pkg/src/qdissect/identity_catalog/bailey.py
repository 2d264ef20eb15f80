"""Lambert series with Bailey-pair companions and their m-fold sections (group ``bailey``).

Sections split the Lambert index n into classes mod m.  A class is
compared against the shifted function directly, so every summand of a
sectioned identity is checked on its own.
"""

from __future__ import annotations

from gmpy2 import mpq

from .. import qsums as S
from ..product_algebra import QMonomial, mono
from .base import IdentityCase, SeriesFn, Sum, auto_base, lambert_ok, register, require, require_base


def fn(f) -> SeriesFn:
    return SeriesFn(lambda W, ring: f(W, ring))


def _not_one(x: QMonomial) -> bool:
    return not (x.c == 1 and x.e == 0)


# ---------------------------------------------------------------------------
# h family: sum a q^n / (1 - a q^n)


def h_funcs(a, t):
    return {
        1: lambda W, ring: S.h1(a, W, t, ring),
        2: lambda W, ring: S.h2(a, W, t, ring),
        3: lambda W, ring: S.h3(a, W, None, t, ring),
        4: lambda W, ring: S.h4(a, W, t, ring),
        5: lambda W, ring: S.h5(a, W, t, ring),
        6: lambda W, ring: S.h6(a, W, t, ring),
    }


def _h_hyp(a, t, m=1):
    require(bool(a.c), "a != 0")
    require_base(lambert_ok(a, t), "a q^n != 1 for n >= 1")
    require_base(a.e + t > 0, "|aq| < 1")
    require_base(all(_not_one(a.shift(-t * r)) for r in range(m)), "a q^(-r) != 1 (unit Bailey pair)")


H_SCHEMA = {"a": "monomial", "t": "posint"}
H_DEFAULTS = [{"a": mono(1, 1)}, {"a": mono(2, 1)}, {"a": mono(-1, 1)}, {"a": mono(1, 2)}, {"a": mono(mpq(1, 2), 0)}]


@register("H_EQ", "bailey", "h_1 = h_2 = h_3 (unit pair) = h_4 = h_5 = h_6", H_SCHEMA, H_DEFAULTS)
def h_eq(params):
    a = params["a"]

    def build(t):
        _h_hyp(a, t)
        h = h_funcs(a, t)

        def parts(N):
            lab = {3: "h_3 (unit Bailey pair)"}
            return [(f"{lab.get(i, f'h_{i}')} = h_1", fn(h[i]), fn(h[1])) for i in (3, 4, 5, 6)]

        return IdentityCase("H_EQ", "bailey", {**params, "t": t}, fn(h[1]), fn(h[2]), parts=parts)

    return auto_base(params, build)


def _section_defaults(pairs):
    return [{**p, "m": m} for m in (2, 3, 4) for p in pairs]


@register(
    "H_SECTION",
    "bailey",
    "h_i(a, q) = sum_r h_i(a q^-r, q^m), each summand checked against its index class",
    {**H_SCHEMA, "m": "posint"},
    _section_defaults([{"a": mono(1, 1)}, {"a": mono(2, 1)}, {"a": mono(-1, 1)}]),
)
def h_section(params):
    a, m = params["a"], params["m"]
    require(m >= 1, "m >= 1")

    def build(t):
        _h_hyp(a, t, m)
        shifted = [h_funcs(a.shift(-t * r), t * m) for r in range(m)]

        def cls(r):
            return fn(lambda W, ring: S.lambert_class(a, W, t, m, -r % m, ring))

        def parts(N):
            return [
                (f"h_{i}(a q^-{r}, q^m) is index class {-r % m}", fn(shifted[r][i]), cls(r))
                for i in range(1, 7)
                for r in range(m)
            ]

        rhs = Sum([fn(shifted[r][2]) for r in range(m)])
        return IdentityCase("H_SECTION", "bailey", {**params, "t": t}, fn(h_funcs(a, t)[1]), rhs, parts=parts)

    return auto_base(params, build)


def _hk_section(rid, params, summand, sign):
    a, m = params["a"], params["m"]
    require(m >= 1, "m >= 1")

    def build(t):
        _h_hyp(a, t)
        terms = [fn(lambda W, ring, r=r: summand(a, W, m, r, t, ring)) for r in range(1, m + 1)]

        def parts(N):
            out = []
            for r, term in zip(range(1, m + 1), terms):
                c = fn(lambda W, ring, r=r: sign * S.lambert_class(a, W, t, m, r % m, ring))
                out.append((f"summand r={r} is index class {r % m}", term, c))
            return out

        lhs = fn(lambda W, ring: summand(a, W, 1, 1, t, ring))
        return IdentityCase(rid, "bailey", {**params, "t": t}, lhs, Sum(terms), parts=parts)

    return auto_base(params, build)


HK_DEFAULTS = _section_defaults([{"a": mono(1, 1)}, {"a": mono(2, 1)}, {"a": mono(-1, 1)}])


@register("H5_SECTION", "bailey", "m-fold split of the h_5 series after r -> m - r", {**H_SCHEMA, "m": "posint"}, HK_DEFAULTS)
def h5_section(params):
    return _hk_section("H5_SECTION", params, S.h5eq_summand, -1)


@register("H6_SECTION", "bailey", "m-fold split of the h_6 series after r -> m - r", {**H_SCHEMA, "m": "posint"}, HK_DEFAULTS)
def h6_section(params):
    return _hk_section("H6_SECTION", params, S.h6eq_summand, 1)


# ---------------------------------------------------------------------------
# g family: sum a q^n/z / (1 - a q^n/z) - a q^n / (1 - a q^n)


def g_funcs(a, z, t):
    return {
        1: lambda W, ring: S.g1(a, z, W, t, ring),
        2: lambda W, ring: S.g2(a, z, W, t, ring),
        3: lambda W, ring: S.g3(a, z, W, None, t, ring),
        4: lambda W, ring: S.g4(a, z, W, t, ring),
    }


def _g_hyp(a, z, t, m=1):
    require(bool(a.c and z.c), "a, z != 0")
    require_base(t + a.e - z.e > 0, "|qa/z| < 1")
    require_base(lambert_ok(a, t) and lambert_ok(a / z, t), "a q^n, a q^n/z != 1 for n >= 1")
    require_base(all(_not_one(a.shift(-t * r)) for r in range(m)), "a q^(-r) != 1 (unit Bailey pair)")


G_SCHEMA = {"a": "monomial", "z": "monomial", "t": "posint"}
G_PAIRS = [
    {"a": mono(1, 1), "z": mono(1, 2)},
    {"a": mono(2, 1), "z": mono(1, 1)},
    {"a": mono(-1, 1), "z": mono(3, 1)},
    {"a": mono(1, 2), "z": mono(-2, 0)},
]


@register("G_EQ", "bailey", "g_1 = g_2 = g_4, and g_3 with the unit pair equals g_4", G_SCHEMA, G_PAIRS)
def g_eq(params):
    a, z = params["a"], params["z"]

    def build(t):
        _g_hyp(a, z, t)
        g = g_funcs(a, z, t)

        def parts(N):
            return [("g_4 = g_1", fn(g[4]), fn(g[1])), ("g_3 (unit Bailey pair) = g_4", fn(g[3]), fn(g[4]))]

        return IdentityCase("G_EQ", "bailey", {**params, "t": t}, fn(g[1]), fn(g[2]), parts=parts)

    return auto_base(params, build)


@register(
    "G_SECTION",
    "bailey",
    "g_i(a, z, q) = sum_r g_i(a q^-r, z, q^m), each summand checked against its index class",
    {**G_SCHEMA, "m": "posint"},
    _section_defaults(G_PAIRS[:3]),
)
def g_section(params):
    a, z, m = params["a"], params["z"], params["m"]
    require(m >= 1, "m >= 1")

    def build(t):
        _g_hyp(a, z, t, m)
        shifted = [g_funcs(a.shift(-t * r), z, t * m) for r in range(m)]

        def cls(r):
            return fn(lambda W, ring: S.lambert_combo([(1, a / z), (-1, a)], W, t, m, -r % m, ring))

        def parts(N):
            return [
                (f"g_{i}(a q^-{r}, z, q^m) is index class {-r % m}", fn(shifted[r][i]), cls(r))
                for i in range(1, 5)
                for r in range(m)
            ]

        rhs = Sum([fn(shifted[r][2]) for r in range(m)])
        return IdentityCase("G_SECTION", "bailey", {**params, "t": t}, fn(g_funcs(a, z, t)[1]), rhs, parts=parts)

    return auto_base(params, build)


# ---------------------------------------------------------------------------
# f family (WP-Bailey)


def f_terms(a, k, z):
    return [(1, k), (1, a / z), (-1, a), (-1, k / z)]


def _f_hyp(a, k, z, t):
    require(bool(a.c and k.c and z.c), "a, k, z != 0")
    require_base(t + a.e - z.e > 0, "|qa/z| < 1")
    require_base(all(lambert_ok(x, t) for _, x in f_terms(a, k, z)), "k q^n, a q^n/z, a q^n, k q^n/z != 1 for n >= 1")


F_SCHEMA = {"a": "monomial", "k": "monomial", "z": "monomial", "t": "posint"}
F_TRIPLES = [
    {"a": mono(1, 1), "k": mono(1, 2), "z": mono(1, 1)},
    {"a": mono(2, 1), "k": mono(1, 3), "z": mono(1, 1)},
    {"a": mono(-1, 1), "k": mono(2, 2), "z": mono(1, 2)},
    {"a": mono(1, 2), "k": mono(-1, 1), "z": mono(3, 0)},
]


@register("F12_EQ", "bailey", "f_1 = f_2 for the four-term Lambert series", F_SCHEMA, F_TRIPLES)
def f12_eq(params):
    a, k, z = params["a"], params["k"], params["z"]

    def build(t):
        _f_hyp(a, k, z, t)
        lhs = fn(lambda W, ring: S.f1(a, k, z, W, t, ring))
        rhs = fn(lambda W, ring: S.f2(a, k, z, W, t, ring))
        return IdentityCase("F12_EQ", "bailey", {**params, "t": t}, lhs, rhs)

    return auto_base(params, build)


@register("F3_WP", "bailey", "f_3 with the unit WP-Bailey pair equals f_1", F_SCHEMA, F_TRIPLES)
def f3_wp(params):
    a, k, z = params["a"], params["k"], params["z"]

    def build(t):
        _f_hyp(a, k, z, t)
        require_base(_not_one(k), "k != 1")
        lhs = fn(lambda W, ring: S.f1(a, k, z, W, t, ring))
        rhs = fn(lambda W, ring: S.f3(a, k, z, W, S.unit_wp_pair(), t, ring))
        return IdentityCase("F3_WP", "bailey", {**params, "t": t}, lhs, rhs)

    return auto_base(params, build)


@register(
    "F1_SECTION",
    "bailey",
    "f_i(a, k, z, q) = sum_r f_i(a q^-r, k q^-r, z, q^m), i = 1, 2, per index class",
    {**F_SCHEMA, "m": "posint"},
    _section_defaults(F_TRIPLES[:3]),
)
def f1_section(params):
    a, k, z, m = params["a"], params["k"], params["z"], params["m"]
    require(m >= 1, "m >= 1")

    def build(t):
        _f_hyp(a, k, z, t)
        sh = [(a.shift(-t * r), k.shift(-t * r)) for r in range(m)]

        def f_i(i, r):
            ar, kr = sh[r]
            f = S.f1 if i == 1 else S.f2
            return fn(lambda W, ring: f(ar, kr, z, W, t * m, ring))

        def cls(r):
            return fn(lambda W, ring: S.lambert_combo(f_terms(a, k, z), W, t, m, -r % m, ring))

        def parts(N):
            return [
                (f"f_{i}(a q^-{r}, k q^-{r}, z, q^m) is index class {-r % m}", f_i(i, r), cls(r))
                for i in (1, 2)
                for r in range(m)
            ]

        lhs = fn(lambda W, ring: S.f1(a, k, z, W, t, ring))
        return IdentityCase("F1_SECTION", "bailey", {**params, "t": t}, lhs, Sum([f_i(1, r) for r in range(m)]), parts=parts)

    return auto_base(params, build)


@register(
    "F2_SECTION",
    "bailey",
    "the f_2 series as m inner sums after r -> m - r",
    {**F_SCHEMA, "m": "posint"},
    _section_defaults(F_TRIPLES[:3]),
)
def f2_section(params):
    a, k, z, m = params["a"], params["k"], params["z"], params["m"]
    require(m >= 1, "m >= 1")

    def build(t):
        _f_hyp(a, k, z, t)
        terms = [fn(lambda W, ring, r=r: S.f2eq_summand(a, k, z, W, m, r, t, ring)) for r in range(1, m + 1)]

        def parts(N):
            return [
                (
                    f"summand r={r} is index class {r % m}",
                    terms[r - 1],
                    fn(lambda W, ring, r=r: S.lambert_combo(f_terms(a, k, z), W, t, m, r % m, ring)),
                )
                for r in range(1, m + 1)
            ]

        lhs = fn(lambda W, ring: S.f2(a, k, z, W, t, ring))
        return IdentityCase("F2_SECTION", "bailey", {**params, "t": t}, lhs, Sum(terms), parts=parts)

    return auto_base(params, build)

