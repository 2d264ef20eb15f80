import json

import mpmath
import pytest

from qdissect.identity_catalog import REGISTRY, expand_cases
from qdissect.lambert_numeric import (
    NUMERIC_CHECKS,
    NumericPoint,
    RegionError,
    consistency_check,
    num_1psi1_check,
    num_lambert_bilateral,
    num_lambert_sectioned,
    num_pochhammer_inf,
    num_product_expr,
    run_numeric,
)
from qdissect.product_algebra import eval_product_expr, mono
from qdissect.spec_parser import parse_product


def pt(q, prec=128, **kw):
    return NumericPoint.from_json({"q": q, "params": kw, "prec": prec})


def direct_1psi1(q, a, b, z, terms=120):
    """Double precision oracle: plain truncated bilateral sum, term ratios accumulated directly."""
    total, t = 0.0, 1.0
    for n in range(terms):
        total += t
        t *= (1 - a * q**n) / (1 - b * q**n) * z
    t = 1.0
    for k in range(1, terms):
        # (a;q)_-k = 1/prod_(j=1..k)(1 - a q^-j)
        t *= (1 - b * q ** (-k)) / (1 - a * q ** (-k)) / z
        total += t
    return total


def test_pochhammer_trivial():
    v, bound = num_pochhammer_inf(0, mpmath.mpf("0.5"))
    assert v == 1 and bound == 0


def test_eta_against_exact():
    with mpmath.workprec(128):
        s = eval_product_expr(parse_product("(q;q)"), 60)
        exact = s.evaluate(mpmath.mpf("0.1"))
        v, _ = num_pochhammer_inf(mpmath.mpf("0.1"), mpmath.mpf("0.1"))
        assert abs(v - exact) < mpmath.mpf(10) ** -20


def test_reflection():
    with mpmath.workprec(128):
        for x, Q in (("0.3", "0.2"), ("-1.7", "0.45"), ("2.5", "-0.6")):
            x, Q = mpmath.mpf(x), mpmath.mpf(Q)
            lhs = num_pochhammer_inf(x, Q)[0]
            rhs = (1 - x) * num_pochhammer_inf(x * Q, Q)[0]
            assert abs(lhs - rhs) < mpmath.mpf(10) ** -25


def test_product_expr_numeric():
    with mpmath.workprec(128):
        p = parse_product("(q^5,q^7;q^12)/(q,q^11;q^12)")
        q = mpmath.mpf("0.1")
        assert abs(num_product_expr(p, q) - eval_product_expr(p, 80).evaluate(q)) < mpmath.mpf(10) ** -30


def test_1psi1_default_point():
    r = num_1psi1_check(pt("0.1", a="2", b="0.3", z="0.5"))
    assert r.residual < 1e-15
    assert abs(float(r.lhs) - direct_1psi1(0.1, 2.0, 0.3, 0.5)) < 1e-12


def test_1psi1_oracle_nonzero_point():
    r = num_1psi1_check(pt("0.3", a="1.5", b="0.2", z="0.4"))
    assert abs(float(r.lhs) - direct_1psi1(0.3, 1.5, 0.2, 0.4)) < 1e-10 * abs(float(r.lhs))
    assert r.residual < 1e-15


def test_1psi1_reduces_to_lambert():
    q, a, z = "0.05", "0.7", "0.4"
    p = pt(q, a=a, b="0.035", z=z)
    r1 = num_1psi1_check(p)
    r2 = num_lambert_bilateral(pt(q, a=a, z=z))
    # (a;q)_n/(aq;q)_n = (1 - a)/(1 - a q^n)
    with mpmath.workprec(128):
        assert abs(r1.lhs / (1 - mpmath.mpf(a)) - r2.lhs) < mpmath.mpf(10) ** -30


def test_region_violation():
    with pytest.raises(RegionError) as ei:
        num_1psi1_check(pt("0.1", a="2", b="0.3", z="1.5"))
    assert "|z| < 1" in ei.value.constraint
    with pytest.raises(RegionError):
        NumericPoint(1.2)


def test_lambert_default():
    assert num_lambert_bilateral(pt("0.05", a="0.7", z="0.4")).residual < 1e-15


def test_sectioned_m3():
    assert num_lambert_sectioned(pt("0.05", a="0.7", z="0.4"), m=3).residual < 1e-12


def test_6psi6_default():
    assert run_numeric("BAILEY_6PSI6", {"q": "0.1", "params": {"a": "0.9", "b": "0.35", "d": "0.4"}})[0].residual < 1e-12


@pytest.mark.parametrize("name", sorted(NUMERIC_CHECKS))
def test_all_default_points(name):
    for r in run_numeric(name):
        assert r.ok and r.residual < 1e-12
        json.dumps(r.to_json())


@pytest.mark.parametrize("name", ["RAM_1PSI1", "BAILEY_6PSI6", "LAMBERT_BILATERAL"])
def test_residual_shrinks_with_precision(name):
    for p in NUMERIC_CHECKS[name][1][:3]:
        lo = run_numeric(name, p, prec=64)[0].residual
        hi = run_numeric(name, p, prec=128)[0].residual
        assert hi <= lo / 10 or hi < mpmath.mpf(10) ** -35


def test_consistency_rows():
    done = 0
    for row, params in expand_cases():
        case = row.build(dict(params))
        if not case.has_numeric():
            continue
        r = consistency_check(case, N=40)
        assert r["ok"], (row.id, params)
        done += 1
    assert done >= 10


def test_point_json_roundtrip():
    p = pt("0.25", a="-2", z="0.5")
    q = NumericPoint.from_json(p.to_json())
    assert q.q == p.q and q.params == p.params
