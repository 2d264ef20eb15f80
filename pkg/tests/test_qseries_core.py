import pytest
from gmpy2 import mpq
from hypothesis import assume, given
from hypothesis import strategies as st

from qdissect.exact_coefficients import QQ, CyclotomicField, cyc_root
from qdissect.product_algebra import eval_pochhammer_inf, mono
from qdissect.qseries_core import (
    InsufficientPrecision,
    RingMismatch,
    SingularSeries,
    TruncatedSeries,
    ts_add,
    ts_component,
    ts_equal_to_order,
    ts_invert,
    ts_mul,
    ts_scale_exponents,
)
from oracles import eta_series

coef = st.integers(-5, 5) | st.fractions(max_denominator=6).map(lambda f: mpq(f.numerator, f.denominator))


@st.composite
def series(draw, lo=-3, hi=4, unit=False):
    m = draw(st.integers(lo, hi))
    N = draw(st.integers(m, m + 25))
    cs = draw(st.lists(coef, min_size=0, max_size=N - m + 1))
    if unit:
        cs = [draw(st.sampled_from([1, -1, 2, mpq(1, 3)]))] + cs[1:]
    return TruncatedSeries.from_coeffs(cs, N, QQ, m)


def S(cs, N=None, m=0):
    return TruncatedSeries.from_coeffs(cs, N, QQ, m)


def test_geometric_product():
    x = S([1, -1], 10)
    y = S([1] * 11, 10)
    z = x * y
    assert z == TruncatedSeries.one(10)


def test_additive_identity():
    x = S([1, 2, 3], 5, -1)
    assert x + TruncatedSeries.zero(5) == x


def test_precision_rule_laurent():
    x = S([1, 1], 5, -1)
    y = S([1], 5, 1)
    z = x * y
    # min(5 + 1, 5 - 1): the unknown q^6 term of y meets q^-1 at q^5
    assert z.trunc_order == 4
    assert z.window(0, 4) == [1, 1, 0, 0, 0]
    exact_q = TruncatedSeries.monomial(1, 1, 7)
    assert (x * exact_q).trunc_order == 6


def test_add_precision():
    assert (S([1], 3) + S([1], 7)).trunc_order == 3


def test_invert_geometric():
    assert ts_invert(S([1, -1], 8)).window(0, 8) == [1] * 9


def test_invert_monomial_lead():
    c, d = mpq(3), 2
    x = S([-c, 0, 1], 6, -d)  # -c q^-2 (1 - c^-1 q^2)
    y = ts_invert(x)
    assert y.min_exp == d
    assert (x * y).window(0, y.trunc_order + x.min_exp) == [1] + [0] * (y.trunc_order + x.min_exp)


def test_invert_eta():
    eta = S(eta_series(12), 12)
    assert eta * ts_invert(eta) == TruncatedSeries.one(12)


def test_invert_singular():
    with pytest.raises(SingularSeries):
        ts_invert(TruncatedSeries.zero(5))


def test_scale_exponents():
    x = S([1, 1], 4)
    assert ts_scale_exponents(x, 1) == x
    y = ts_scale_exponents(x, 3)
    assert y.items() == [(0, 1), (3, 1)]
    assert y.trunc_order == 3 * 4 + 2
    eta2 = ts_scale_exponents(S(eta_series(30), 30), 2)
    assert eta2.truncate(60) == eval_pochhammer_inf(mono(1, 2), 2, 60)


def test_component():
    x = S([1, 1, 1, 1], 3)
    assert ts_component(x, 1, 0) == x
    assert ts_component(x, 2, 1).items() == [(1, 1), (3, 1)]
    with pytest.raises(ValueError):
        ts_component(x, 3, 3)


def test_equal_to_order():
    a = S([1, 1], 6)
    b = S([1, 1, 0, 0, 0, 1], 6)
    assert ts_equal_to_order(a, a, 6)
    assert ts_equal_to_order(a, b, 4)
    r = ts_equal_to_order(a, b, 5)
    assert not r and r.exponent == 5 and (r.left, r.right) == (0, 1)
    with pytest.raises(InsufficientPrecision):
        ts_equal_to_order(a, b, 7)


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        ts_add(S([1], 3), TruncatedSeries.one(3, CyclotomicField(3)))


def test_json_roundtrip():
    K = CyclotomicField(5)
    x = TruncatedSeries.from_coeffs([cyc_root(5, 1), 0, mpq(2, 3)], 4, K, -1)
    assert TruncatedSeries.from_json(x.to_json()) == x
    y = S([mpq(-1, 2), 3], 6, 2)
    d = y.to_json()
    assert d["coeffs"][0] == "-1/2" and d["ring"] == "rational"
    assert TruncatedSeries.from_json(d) == y


def test_normalised_lead():
    x = S([0, 0, 3, 1], 5)
    assert x.min_exp == 2 and x.coeffs[0] == 3
    z = TruncatedSeries.zero(4)
    assert z.min_exp == 5 and z.is_zero()


# -- properties


@given(series(), series(), series())
def test_ring_axioms(x, y, z):
    N = min(s.trunc_order for s in (x, y, z))
    assert ((x + y) + z).truncate(N) == (x + (y + z)).truncate(N)
    assert (x + y) == (y + x)
    assert x * y == y * x
    lhs, rhs = (x * y) * z, x * (y * z)
    M = min(lhs.trunc_order, rhs.trunc_order)
    assert lhs.truncate(M) == rhs.truncate(M)
    d1, d2 = x * (y + z), x * y + x * z
    M = min(d1.trunc_order, d2.trunc_order)
    assert d1.truncate(M) == d2.truncate(M)


@given(series(unit=True))
def test_double_inverse(x):
    y = ts_invert(ts_invert(x))
    M = min(x.trunc_order, y.trunc_order)
    assert y.truncate(M) == x.truncate(M)


@given(series(unit=True), series(unit=True))
def test_precision_soundness(x, y):
    """Products computed from longer inputs agree on the shorter window."""
    N = min(x.trunc_order, y.trunc_order)
    assume(N >= max(x.min_exp, y.min_exp))
    xs, ys = x.truncate(N), y.truncate(N)
    short = ts_mul(xs, ts_invert(ys))
    long = ts_mul(x, ts_invert(y))
    assert short.trunc_order <= long.trunc_order
    assert long.truncate(short.trunc_order) == short


@given(series(), st.integers(1, 8))
def test_component_reassembly(x, m):
    total = TruncatedSeries.zero(x.trunc_order)
    for r in range(m):
        total = total + ts_component(x, m, r)
    assert total == x


@given(series(lo=0), st.integers(1, 4), st.integers(1, 4))
def test_scale_compose(x, s, t):
    assert ts_scale_exponents(x, s * t) == ts_scale_exponents(ts_scale_exponents(x, s), t)
