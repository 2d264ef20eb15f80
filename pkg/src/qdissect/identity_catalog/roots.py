"""Sums over m-th roots of unity and their m = 2 shadows (group ``roots``)."""

from __future__ import annotations

from gmpy2 import mpq

from ..exact_coefficients import cyc_root
from ..product_algebra import QMonomial, mono, product
from .base import Mul, Prod, Sum, IdentityCase, auto_base, cyclotomic_ring, register, require, require_nonsingular
from .prop import Qj


def omega(m: int, j: int):
    """omega_m^j, kept rational for m <= 2."""
    if m == 1 or j % m == 0:
        return 1
    if m == 2:
        return -1
    return cyc_root(m, j % m)


def _w(m, j, x: QMonomial) -> QMonomial:
    return x * omega(m, j)


def roots_a_lhs(a, z, m, t) -> Sum:
    Q = Qj(t)
    terms = []
    for j in range(m):
        az, zj = _w(m, j, a * z), _w(m, j, z)
        terms.append(Prod(product([Q, Q, az, Q / az], [a, Q / a, zj, Q / zj], base=t)))
    return Sum(terms)


def roots_a_rhs(a, z, m, t) -> Prod:
    Qm = Qj(t, m)
    zm = z**m
    return Prod(product([Qm, Qm, a * zm, Qm / (a * zm)], [a, Qm / a, zm, Qm / zm], base=t * m, prefactor=mono(m, 0)))


def roots_b_lhs(a, z, m, t) -> Sum:
    Q = Qj(t)
    terms = []
    for j in range(m):
        az, aj = _w(m, j, a * z), _w(m, j, a)
        terms.append(
            Prod(product([Q, Q, az, Q / az], [aj, Q / aj, z, Q / z], base=t, prefactor=QMonomial(omega(m, j), 0)))
        )
    return Sum(terms)


def roots_b_rhs(a, z, m, t) -> Prod:
    Qm = Qj(t, m)
    am = a**m
    zq = z.shift(t * (m - 1))
    Q = Qj(t)
    return Prod(
        product(
            [Qm, Qm, am * zq, Q / (am * z)],
            [am, Qm / am, zq, Q / z],
            base=t * m,
            prefactor=a ** (m - 1) * m,
        )
    )


ROOTS_SCHEMA = {"a": "monomial", "z": "monomial", "m": "posint", "t": "posint"}
ROOTS_DEFAULTS = [
    {"a": mono(1, 1), "z": mono(1, 2), "m": 2},
    {"a": mono(1, 1), "z": mono(2, 1), "m": 3},
    {"a": mono(1, 2), "z": mono(-1, 1), "m": 4},
    {"a": mono(-1, 1), "z": mono(1, 2), "m": 5},
    {"a": mono(3, 1), "z": mono(1, 1), "m": 6},
]


def _roots_case(rid, lhs_fn, rhs_fn, params):
    a, z, m = params["a"], params["z"], params["m"]
    require(m >= 1, "m >= 1")
    require(bool(a.c) and bool(z.c), "a, z != 0")

    def build(t):
        lhs, rhs = lhs_fn(a, z, m, t), rhs_fn(a, z, m, t)
        require_nonsingular(lhs, rhs)
        return IdentityCase(rid, "roots", {**params, "t": t}, lhs, rhs, ring=cyclotomic_ring(m))

    return auto_base(params, build)


@register("ROOTS_SUM_A", "roots", "sum over z -> omega^j z collapses to base q^m", ROOTS_SCHEMA, ROOTS_DEFAULTS)
def roots_sum_a(params):
    return _roots_case("ROOTS_SUM_A", roots_a_lhs, roots_a_rhs, params)


@register("ROOTS_SUM_B", "roots", "omega^j-weighted sum over a -> omega^j a", ROOTS_SCHEMA, ROOTS_DEFAULTS)
def roots_sum_b(params):
    return _roots_case("ROOTS_SUM_B", roots_b_lhs, roots_b_rhs, params)


# ---------------------------------------------------------------------------
# m = 2, written as sums and differences of two theta products


def e29_left(a, z, t, sign: int) -> Sum:
    Q = Qj(t)
    first = product([z, Q / z, -a, -(Q / a), Q, Q], base=t)
    second = product([-z, -(Q / z), a, Q / a, Q, Q], base=t, prefactor=mono(sign, 0))
    return Sum([Prod(first), Prod(second)])


def e29_sum_rhs(a, z, t) -> Prod:
    Q, Q2 = Qj(t), Qj(t, 2)
    return Prod(product([(z * Q) / a, (a * Q) / z, a * z, Q2 / (a * z), Q2, Q2], base=2 * t, prefactor=mono(2, 0)))


def e29_diff_rhs(a, z, t) -> Prod:
    Q, Q2 = Qj(t), Qj(t, 2)
    return Prod(product([z / a, (a * Q2) / z, (a * z) * Q, Q / (a * z), Q2, Q2], base=2 * t, prefactor=a * 2))


E29_SCHEMA = {"a": "monomial", "z": "monomial", "t": "posint"}
E29_DEFAULTS = [
    {"a": mono(2, 1), "z": mono(1, 3)},
    {"a": mono(-1, 1), "z": mono(3, 2)},
    {"a": mono(1, 2), "z": mono(mpq(1, 2), 1)},
    {"a": mono(1, 1), "z": mono(1, 2), "t": 2},
]


@register("ENTRY29_SUM", "roots", "sum of the two theta products", E29_SCHEMA, E29_DEFAULTS)
def entry29_sum(params):
    t = params.get("t") or 1
    a, z = params["a"], params["z"]
    require(bool(a.c) and bool(z.c), "a, z != 0")
    return IdentityCase("ENTRY29_SUM", "roots", {**params, "t": t}, e29_left(a, z, t, 1), e29_sum_rhs(a, z, t))


@register("ENTRY29_DIFF", "roots", "difference of the two theta products", E29_SCHEMA, E29_DEFAULTS)
def entry29_diff(params):
    t = params.get("t") or 1
    a, z = params["a"], params["z"]
    require(bool(a.c) and bool(z.c), "a, z != 0")
    return IdentityCase("ENTRY29_DIFF", "roots", {**params, "t": t}, e29_left(a, z, t, -1), e29_diff_rhs(a, z, t))


def _link_case(rid, params, sum_kind: bool):
    """Multiply the m = 2 root sum through by its denominators and match the two-product form."""
    a, z = params["a"], params["z"]
    require(bool(a.c) and bool(z.c), "a, z != 0")

    def build(t):
        Q = Qj(t)
        if sum_kind:
            ar, zr = z / a, a
            lhs_r, rhs_r = roots_a_lhs(ar, zr, 2, t), roots_a_rhs(ar, zr, 2, t)
            clear = product([ar, Q / ar, zr, Q / zr, -zr, -(Q / zr)], base=t)
            e_lhs, e_rhs = e29_left(a, z, t, 1), e29_sum_rhs(a, z, t)
        else:
            ar, zr = a, z / a
            lhs_r, rhs_r = roots_b_lhs(ar, zr, 2, t), roots_b_rhs(ar, zr, 2, t)
            clear = product([a, Q / a, -a, -(Q / a), z / a, (Q * a) / z], base=t)
            e_lhs, e_rhs = e29_left(a, z, t, -1), e29_diff_rhs(a, z, t)
        require_nonsingular(lhs_r, rhs_r)
        lhs = Mul([lhs_r, Prod(clear)])
        rhs = Mul([rhs_r, Prod(clear)])

        def parts(N):
            return [
                ("root-sum side matches the two-product side", lhs, e_lhs),
                ("product side matches", rhs, e_rhs),
            ]

        return IdentityCase(rid, "roots", {**params, "t": t}, lhs, rhs, parts=parts)

    return auto_base(params, build)


@register("ENTRY29_LINK_SUM", "roots", "m = 2 root sum after z -> z/a equals the two-product sum", E29_SCHEMA, E29_DEFAULTS)
def entry29_link_sum(params):
    return _link_case("ENTRY29_LINK_SUM", params, True)


@register("ENTRY29_LINK_DIFF", "roots", "m = 2 weighted root sum after z -> z/a equals the difference", E29_SCHEMA, E29_DEFAULTS)
def entry29_link_diff(params):
    return _link_case("ENTRY29_LINK_DIFF", params, False)
