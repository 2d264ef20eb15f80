import pytest

from qdissect import qsums as S
from qdissect.exact_coefficients import QQ
from qdissect.identity_catalog import REGISTRY
from qdissect.product_algebra import QMonomial, mono
from qdissect.qseries_core import SeriesError, SingularSeries, TruncatedSeries
from oracles import divisor_counts


def test_geometric_sum():
    s = S.eval_qsum(lambda n: TruncatedSeries.monomial(1, n, 25), lambda n: n, 25, start=0)
    assert s.window(0, 25) == [1] * 26


def test_nonconvergent():
    with pytest.raises(S.NonConvergentSum):
        S.eval_qsum(lambda n: TruncatedSeries.zero(5), lambda n: 0, 5, max_terms=50)


def test_lambert_divisors():
    s = S.lambert_unilateral(mono(1, 0), 30)
    assert [int(c) for c in s.window(0, 30)] == divisor_counts(30)


def test_lambert_shift():
    s = S.lambert_unilateral(mono(1, 1), 30)
    ref = S.lambert_unilateral(mono(1, 0), 31)
    # sum_(n>=1) q^(n+1)/(1 - q^(n+1)) is the a = 1 series without its n = 1 term
    first = TruncatedSeries.monomial(1, 1, 31).div_binomial(1, 1)
    assert s == (ref - first).truncate(30)


def test_lambert_sectioning():
    a, m, N = mono(1, 2), 3, 60
    # h_1(a, q) = sum_r h_1(a q^-r, q^m)
    total = TruncatedSeries.zero(N)
    for r in range(m):
        total = total + S.lambert_unilateral(QMonomial(a.c, a.e - r), N, t=m)
    assert total == S.lambert_unilateral(a, N)


def test_h1_h2():
    a = mono(1, 1)
    assert S.h2(a, 20) == S.h1(a, 20)


def test_fine_F2_F1():
    assert S.fine_F2(mono(1, 2), mono(1, 1), 50) == S.fine_F1(mono(1, 2), mono(1, 1), 50)


def test_unit_pair():
    p = S.unit_bailey_pair()
    a = mono(1, 1)
    assert p.beta(0, a, 10) == TruncatedSeries.one(10)
    assert p.alpha(0, a, 10) == TruncatedSeries.one(10)
    assert all(p.beta(n, a, 10).is_zero() for n in range(1, 6))
    assert S.check_pair(p, a, 30, n_check=8) == []
    assert S.check_pair(p, mono(2, 1), 30, n_check=8) == []
    with pytest.raises(SingularSeries):
        p.alpha(1, mono(1, 0), 10)


def test_g3_unit_equals_g4():
    a, z = mono(1, 1), mono(1, 2)
    # at base q the binding has Qa/z = 1; base q^2 gives Qa/z = q
    with pytest.raises(SeriesError):
        S.g4(a, z, 40)
    assert S.g3(a, z, 40, S.unit_bailey_pair(), t=2) == S.g4(a, z, 40, t=2)


def test_solved_pair_matches_unit_wp():
    solved = S.pair_from_beta(S._delta, floor=S._unit_wp_floor)
    unit = S.unit_wp_pair()
    for a, k in ((mono(1, 1), mono(1, 2)), (mono(2, 1), mono(1, 3))):
        for n in range(5):
            assert solved.alpha(n, a, 20, k=k) == unit.alpha(n, a, 20, k=k)
        assert S.check_pair(solved, a, 20, k=k, n_check=5) == []


def test_f3_solved_pair():
    row = REGISTRY["F3_WP"]
    solved = S.pair_from_beta(S._delta, floor=S._unit_wp_floor)
    for params in row.defaults[:2]:
        case = row.build(params)
        a, k, z, t = (case.params[x] for x in ("a", "k", "z", "t"))
        assert S.f3(a, k, z, 30, solved, t) == S.f1(a, k, z, 30, t)
