import json

import pytest

from qdissect.identity_catalog import REGISTRY, expand_cases, run_row, verify_all, verify_identity
from qdissect.identity_catalog.base import SeriesFn, eval_expr
from qdissect.identity_catalog.sixpsi import c62_sum
from qdissect.product_algebra import mono

SECTION_ROWS = [k for k in REGISTRY if k.endswith("_SECTION")]
ZERO_BY_DESIGN = {"C62_ZEROSUM", "T2N_VANISH", "T3N_VANISH", "AB_T1", "AG_T1", "AG_T2", "RS_F", "RS_FINV", "RS_G", "RS_GINV"}


def monomial_rows():
    return [r for r in REGISTRY.values() if any(v == "monomial" for v in r.schema.values())]


@pytest.mark.parametrize("row", monomial_rows(), ids=lambda r: r.id)
def test_binding_coverage(row):
    mon = [n for n, v in row.schema.items() if v == "monomial"]
    cs = [d[n].c for d in row.defaults for n in mon if n in d]
    assert len(row.defaults) >= 3
    assert any(c > 0 and c != 1 for c in cs), "needs a non-unit coefficient"
    assert any(c < 0 for c in cs), "needs a negative coefficient"


def test_prop1_p1_trivial():
    case = REGISTRY["PROP1_DISSECT"].case({"a": mono(1, 2), "z": mono(1, 1), "p": 1})
    r = verify_identity(case, 60)
    assert r.equal and r.first_mismatch is None


def test_negative_control():
    case = REGISTRY["PROP1_DISSECT"].case({"a": mono(1, 2), "z": mono(1, 1), "p": 3})
    rhs = case.rhs
    case.rhs = SeriesFn(lambda W, ring: eval_expr(rhs, W + 1, ring).shift(1).truncate(W))
    r = verify_identity(case, 40)
    assert not r.equal and r.status == "fail"
    assert r.first_mismatch is not None and r.first_mismatch[0] <= 40
    d = r.to_json()
    assert d["first_mismatch"]["exponent"] == r.first_mismatch[0]


def test_hirsch_200():
    assert verify_identity(REGISTRY["HIRSCH_4DISS"].case(), 200).equal


def test_filter_group():
    cases = expand_cases(pattern="vanish:*")
    assert cases and {row.group for row, _ in cases} == {"vanish"}
    assert len(expand_cases()) > len(cases)


def test_ordering_and_jobs():
    a = verify_all(N=30, pattern="prop:*")
    b = verify_all(N=30, pattern="prop:*", jobs=2)
    assert [x.to_json()["params"] for x in a] == [x.to_json()["params"] for x in b]
    assert [x.equal for x in a] == [x.equal for x in b] and all(x.equal for x in a)
    ids = [x.id for x in verify_all(N=20, pattern="RS_*")]
    assert ids == sorted(ids)


def test_hypothesis_skipped():
    r = run_row(REGISTRY["C41_VANISH"], {"p": 4, "s": 1, "z": mono(1, 2)}, 30)
    assert r.status == "skipped" and "gcd" in r.message


@pytest.mark.parametrize("row_id", SECTION_ROWS)
def test_section_rows_check_every_class(row_id):
    row = REGISTRY[row_id]
    for params in row.defaults[:3]:
        r = run_row(row, dict(params), 40)
        assert r.equal, r.to_json()
        m = params["m"]
        assert len(r.parts) >= m and all(p.equal for p in r.parts)


@pytest.mark.parametrize("row_id", sorted(set(REGISTRY) - ZERO_BY_DESIGN))
def test_no_degenerate_binding(row_id):
    row = REGISTRY[row_id]
    for params in row.defaults:
        case = row.build(dict(params))
        assert not case.build_lhs(40).is_zero(), params


@pytest.mark.parametrize("params", REGISTRY["C62_ZEROSUM"].defaults)
def test_c62_upper_m_nonzero(params):
    case = REGISTRY["C62_ZEROSUM"].build(dict(params))
    t = case.params["t"]
    assert eval_expr(c62_sum(params["a"], params["d"], params["m"], t), 80).is_zero()
    assert not eval_expr(c62_sum(params["a"], params["d"], params["m"], t, upper=params["m"]), 80).is_zero()


def test_c62_literal_zero():
    case = REGISTRY["C62_ZEROSUM"].case()
    assert eval_expr(case.rhs, 10).is_zero()


def test_result_json_serialisable():
    r = run_row(REGISTRY["ROOTS_SUM_A"], dict(REGISTRY["ROOTS_SUM_A"].defaults[0]), 20)
    json.dumps(r.to_json())
    assert r.equal
