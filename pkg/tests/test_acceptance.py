"""Acceptance criteria 1-11, one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v`` (the lines are printed
even under output capture).
"""

import time

import pytest

from qdissect.identity_catalog import REGISTRY, expand_cases, verify_all
from qdissect.identity_catalog.base import eval_expr
from qdissect.identity_catalog.dissect import entry12_convergent, entry12_product, rc_convergent, rc_product
from qdissect.lambert_numeric import consistency_check, run_numeric
from qdissect.product_algebra import agreement_order, mono
from qdissect.vanishing import vanishing_scan

import test_exact_coefficients as T_exact
import test_product_algebra as T_prod
import test_qseries_core as T_series
import test_spec_parser as T_parser


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, detail

    return emit


def _rows(pattern, N):
    res = verify_all(N=N, pattern=pattern)
    bad = [(r.id, r.status, r.message or r.first_mismatch) for r in res if not r.equal]
    return res, bad


def test_c01_full_catalog(report):
    t0 = time.perf_counter()
    res = verify_all(N=100)
    dt = time.perf_counter() - t0
    bad = [(r.id, r.status) for r in res if not r.equal]
    report(1, not bad and dt < 300, f"verify-all --order 100: {len(res) - len(bad)}/{len(res)} equal in {dt:.1f}s {bad[:5]}")


def test_c02_richmond_szekeres(report):
    t0 = time.perf_counter()
    rows = vanishing_scan("RS", None, 1000)
    dt = time.perf_counter() - t0
    got = {r.params["which"]: (r.residue, r.modulus, r.status) for r in rows}
    want = {"F": (3, 4), "FINV": (2, 4), "G": (5, 6), "GINV": (3, 6)}
    ok = all(got[k][:2] == v and got[k][2] == "pass" for k, v in want.items()) and dt < 30
    report(2, ok, f"c_4n+3(F), d_4n+2(1/F), a_6n+5(G), b_6n+3(1/G) zero to N=1000 in {dt:.1f}s")


def _grid_ok(family, N):
    rows = vanishing_scan(family, None, N)
    fails = [r for r in rows if r.status in ("fail", "error")]
    skipped = [r for r in rows if r.status == "skipped"]
    return rows, fails, skipped


def test_c03_t2n_t3n(report):
    parts = []
    ok = True
    for fam in ("T2N", "T3N"):
        rows, fails, skipped = _grid_ok(fam, 600)
        ok &= not fails and all(r.hypothesis for r in skipped)
        ok &= {(r.params["k"], r.params["m"]) for r in rows} == {(k, m) for k in range(2, 7) for m in range(2, 7)}
        parts.append(f"{fam}: {len(rows) - len(skipped)} pass, {len(skipped)} skipped by hypothesis, {len(fails)} violations")
    report(3, ok, "; ".join(parts) + " (N=600)")


def test_c04_andrews_bressoud(report):
    named = vanishing_scan("AB_T1", [{"k": k, "r": r} for k, r in ((4, 3), (4, 1), (6, 5), (6, 1))], 600)
    rows, fails, skipped = _grid_ok("AB_T1", 600)
    ok = all(r.status == "pass" for r in named) and not fails and max(r.params["k"] for r in rows) == 9
    report(4, ok, f"(4,3),(4,1),(6,5),(6,1) pass; k <= 9 grid: {len(rows) - len(skipped)} pass, {len(fails)} violations (N=600)")


def test_c05_section5(report):
    ids = ["HIRSCH_4DISS", "LIN_3DISS", "RC_2DISS", "RCINV_2DISS", "BORWEIN", "LIN_P_DISS"]
    res, bad = [], []
    for i in ids:
        r, b = _rows(i, 200)
        res += r
        bad += b
    ps = sorted(r.params["p"] for r in res if r.id == "LIN_P_DISS")
    report(5, not bad and ps == [2, 3, 6], f"{len(res)} cases exact to N=200 (4-dissection, 3-dissection, cubic CF 2-dissections, a(q) - a(q^2), p in {ps}) {bad}")


def test_c06_roots_of_unity(report):
    res, bad = _rows("ROOTS_SUM_*", 80)
    link, bad2 = _rows("ENTRY29*", 80)
    ms = sorted({r.params["m"] for r in res})
    ok = not bad and not bad2 and ms == [2, 3, 4, 5, 6] and any(r.id.startswith("ENTRY29_LINK") for r in link)
    report(6, ok, f"roots-of-unity sums for m in {ms}: {len(res)} exact; Entry 29 and the m=2 z -> z/a link: {len(link)} exact (N=80)")


def test_c07_sixpsi(report):
    res, bad = _rows("T61_DISSECT", 80)
    core = {(str(r.params["a"]), str(r.params["b"]), str(r.params["d"]), r.params["m"]) for r in res}
    want = {(a, b, d, m) for a, b, d in (("q^5", "q", "q^2"), ("q^4", "2*q", "q^2")) for m in (1, 2, 3)}
    zs, bad2 = _rows("C62_ZEROSUM", 80)
    ok = not bad and not bad2 and want <= core
    report(7, ok, f"6psi6 m-dissection: {len(res)} cases exact; zero-sum corollary: {len(zs)} cases identically 0 (N=80)")


def test_c08_bailey_chains(report):
    h, b1 = _rows("H_EQ", 300)
    g, b2 = _rows("G_EQ", 200)
    f, b3 = _rows("F12_EQ", 150)
    sec, b4 = _rows("*_SECTION", 100)
    ms = {r.params["m"] for r in sec}
    unit_labels = [p.label for r in h + g for p in r.parts if "unit" in p.label]
    unit_ok = all(p.equal for r in h + g for p in r.parts)
    sec_parts = all(r.parts and all(p.equal for p in r.parts) for r in sec)
    ok = not (b1 or b2 or b3 or b4) and ms == {2, 3, 4} and unit_ok and len(unit_labels) >= len(h) + len(g) and sec_parts
    report(
        8,
        ok,
        f"h chain N=300 ({len(h)}), g chain N=200 ({len(g)}), f1=f2 N=150 ({len(f)}), "
        f"{len(sec)} section cases with per-class parts, unit-pair g3/h3 parts: {len(unit_labels)}",
    )


RC_BASELINE = T_prod.RC_BASELINE
E12_BASELINE = T_prod.E12_BASELINE


def test_c09_continued_fractions(report):
    N = 260
    rc = eval_expr(rc_product(), N)
    a, b, t = mono(1, 2), mono(1, 1), 3
    e12 = eval_expr(entry12_product(a, b, t), N)
    ro = [agreement_order(rc_convergent(K, N), rc) for K in range(2, 21)]
    eo = [agreement_order(entry12_convergent(a, b, t, K, N), e12) for K in range(2, 21)]
    inc = lambda xs: all(y > x for x, y in zip(xs, xs[1:]))  # noqa: E731
    ok = inc(ro) and inc(eo) and ro[-1] > 40 and eo[-1] > 40 and ro == RC_BASELINE[1:] and eo == E12_BASELINE[1:]
    report(9, ok, f"agreement order K=2..20 strictly increasing; cubic CF {ro[0]}..{ro[-1]}, two-parameter CF {eo[0]}..{eo[-1]}; matches baseline")


def test_c10_numeric(report):
    res = run_numeric("RAM_1PSI1", prec=128) + run_numeric("BAILEY_6PSI6", prec=128)
    worst = max(r.residual for r in res)
    sampled = []
    for row, params in expand_cases():
        case = row.build(dict(params))
        if case.has_numeric() and row.id not in {c[0] for c in sampled}:
            sampled.append((row.id, consistency_check(case, N=60, q="1/10")["ok"]))
        if len(sampled) == 10:
            break
    ok = len(res) == 10 and worst < 1e-12 and len(sampled) == 10 and all(s for _, s in sampled)
    report(10, ok, f"1psi1 and 6psi6 on 5 points each, max residual {float(worst):.2e}; exact-vs-numeric at q=1/10 on 10 rows: {sum(s for _, s in sampled)}/10")


def test_c11_property_suites(report):
    suites = [
        ("ring axioms Q", T_exact.test_rational_field_axioms),
        ("series ring axioms", T_series.test_ring_axioms),
        ("precision soundness", T_series.test_precision_soundness),
        ("double inverse", T_series.test_double_inverse),
        ("component reassembly", T_series.test_component_reassembly),
        ("Pochhammer splitting", T_prod.test_pochhammer_splitting),
        ("factor peel", T_prod.test_peel_first_factor),
        ("dissection reassembly", T_prod.test_dissect_reassembly),
        ("parser round-trip x1000", T_parser.test_roundtrip),
        ("parser token deletions", T_parser.test_token_deletions),
    ]
    failed = []
    for name, fn in suites:
        try:
            fn()
        except Exception as exc:  # noqa: BLE001
            failed.append(f"{name}: {exc!r}"[:200])
    for m in (3, 5, 12):
        try:
            T_exact.test_cyclotomic_axioms(m)
        except Exception as exc:  # noqa: BLE001
            failed.append(f"cyclotomic axioms m={m}: {exc!r}"[:200])
    report(11, not failed, f"{len(suites) + 3} property suites, failures: {failed}")
