from fractions import Fraction

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from qdissect.exact_coefficients import (
    QQ,
    ConductorMismatch,
    CyclotomicField,
    CyclotomicNumber,
    cyc_add,
    cyc_embed,
    cyc_inv,
    cyc_mul,
    cyc_root,
    cyclotomic_polynomial,
    euler_phi,
    rational_from_str,
    rational_to_str,
    to_rational,
)
from oracles import rat_poly_divmod

rationals = st.fractions(max_denominator=50).map(lambda f: mpq(f.numerator, f.denominator))


def cyclo(m):
    return st.lists(st.fractions(max_denominator=12), min_size=euler_phi(m), max_size=euler_phi(m)).map(
        lambda cs: CyclotomicNumber(m, [mpq(c.numerator, c.denominator) for c in cs])
    )


def test_phi_small():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)


def test_phi6_by_division():
    # x^6 - 1 divided by Phi_1 Phi_2 Phi_3, all done in the oracle
    num = [-1, 0, 0, 0, 0, 0, 1]
    for d in ([-1, 1], [1, 1], [1, 1, 1]):
        num, rem = rat_poly_divmod(num, d)
        assert not any(rem)
    assert tuple(int(c) for c in num) == cyclotomic_polynomial(6) == (1, -1, 1)


@pytest.mark.parametrize("m", range(1, 31))
def test_phi_divides(m):
    _, rem = rat_poly_divmod([-1] + [0] * (m - 1) + [1], list(cyclotomic_polynomial(m)))
    assert not any(rem)
    assert len(cyclotomic_polynomial(m)) - 1 == euler_phi(m)


@pytest.mark.parametrize("m", [1, 4, 6, 9, 12, 15])
def test_product_of_phi_d(m):
    prod = [Fraction(1)]
    for d in range(1, m + 1):
        if m % d == 0:
            p = cyclotomic_polynomial(d)
            out = [Fraction(0)] * (len(prod) + len(p) - 1)
            for i, a in enumerate(prod):
                for j, b in enumerate(p):
                    out[i + j] += a * b
            prod = out
    assert prod == [-1] + [0] * (m - 1) + [1]


def test_roots():
    assert cyc_root(2, 1) == CyclotomicNumber(2, [-1])
    assert cyc_root(4, 1) * cyc_root(4, 1) == cyc_embed(-1, 4)
    assert cyc_add(cyc_root(3, 1), cyc_root(3, 2)) == cyc_embed(-1, 3)
    assert cyc_root(7, 0) == cyc_embed(1, 7)
    assert cyc_root(5, 13) == cyc_root(5, 3)


@pytest.mark.parametrize("m", range(1, 13))
def test_root_inverse_and_power(m):
    w = cyc_root(m, 1)
    p = cyc_embed(1, m)
    for _ in range(m):
        p = p * w
    assert p == cyc_embed(1, m)
    for j in range(m):
        assert cyc_inv(cyc_root(m, j)) == cyc_root(m, (m - j) % m)


def test_inverse_m6():
    x = cyc_root(6, 1) - 1
    assert cyc_mul(x, cyc_inv(x)) == cyc_embed(1, 6)
    assert cyc_mul(cyc_embed(1, 6), x) == x


def test_errors():
    with pytest.raises(ConductorMismatch):
        cyc_root(3, 1) + cyc_root(4, 1)
    with pytest.raises(ZeroDivisionError):
        cyc_inv(cyc_embed(0, 5))


@pytest.mark.parametrize("m", range(1, 13))
def test_orthogonality(m):
    for j in range(m):
        s = cyc_embed(0, m)
        for i in range(m):
            s = s + cyc_root(m, i * j)
        assert s == cyc_embed(m if j % m == 0 else 0, m)


@given(rationals, rationals, rationals)
def test_rational_field_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) - b == a
    if a:
        assert a * QQ.inv(a) == 1


@pytest.mark.parametrize("m", [3, 4, 5, 7, 8, 12])
def test_cyclotomic_axioms(m):
    @given(cyclo(m), cyclo(m), cyclo(m))
    def run(x, y, z):
        assert (x * y) * z == x * (y * z)
        assert x * y == y * x
        assert x * (y + z) == x * y + x * z
        if any(x.coeffs):
            assert x * x.inverse() == cyc_embed(1, m)

    run()


def test_rational_canonical():
    assert to_rational(Fraction(4, 2)) == 2
    assert rational_to_str(mpq(-6, 4)) == "-3/2"
    assert rational_from_str("0/7") == 0
    assert rational_to_str(0) == "0/1"


def test_to_complex_matches_root():
    import cmath

    w = cyc_root(12, 5)
    assert abs(w.to_complex() - cmath.exp(2j * cmath.pi * 5 / 12)) < 1e-12
    assert CyclotomicField(5).name == "cyclotomic(5)"
