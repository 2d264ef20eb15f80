"""Command-line interface.

Every command can print a versioned JSON report (``--json``); see
README.md for the schema.  Exit codes: 0 all pass, 1 a verification
mismatch, 2 a hypothesis or input error, 3 an internal or precision error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import shutil
import sys
import time
from pathlib import Path

import mpmath

from . import __version__
from .product_algebra import dissect, eval_product_expr, infer_ring
from .qseries_core import SeriesError, TruncatedSeries
from .spec_parser import ParamError, ParseError, parse_params, parse_product, print_product
from .vanishing import FAMILIES, HypothesisError, default_grid, vanishing_scan

REPORT_SCHEMA = "qdissect.report/1"
EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3
TIMING_KEYS = ("wall_time", "elapsed")


class InputError(ValueError):
    pass


# ---------------------------------------------------------------------------
# coefficient cache


def cache_dir(arg: str | None) -> Path | None:
    """Flag first, then QDISSECT_CACHE_DIR; no cache when neither is set."""
    d = arg or os.environ.get("QDISSECT_CACHE_DIR")
    return Path(d) if d else None


class SeriesCache:
    def __init__(self, root: Path | None):
        self.root = root

    def _path(self, expr: str, ring: str, N: int) -> Path:
        key = json.dumps([expr, ring, N])
        return self.root / (hashlib.sha256(key.encode()).hexdigest() + ".json")

    def get(self, expr: str, ring: str, N: int) -> TruncatedSeries | None:
        if self.root is None:
            return None
        p = self._path(expr, ring, N)
        if not p.exists():
            return None
        data = json.loads(p.read_text())
        if data.get("key") != [expr, ring, N]:
            return None
        return TruncatedSeries.from_json(data["series"])

    def put(self, expr: str, ring: str, N: int, s: TruncatedSeries):
        if self.root is None:
            return
        self.root.mkdir(parents=True, exist_ok=True)
        p = self._path(expr, ring, N)
        tmp = p.with_suffix(".tmp")
        tmp.write_text(json.dumps({"key": [expr, ring, N], "series": s.to_json()}))
        tmp.replace(p)

    def clear(self) -> int:
        if self.root is None or not self.root.exists():
            return 0
        n = sum(1 for _ in self.root.glob("*.json"))
        shutil.rmtree(self.root)
        return n


def expand_cached(text: str, N: int, cache: SeriesCache):
    p = parse_product(text)
    canon = print_product(p)
    ring = infer_ring([f.arg for f in p.factors] + [p.prefactor])
    hit = cache.get(canon, ring.name, N)
    if hit is not None:
        return p, hit
    s = eval_product_expr(p, N, ring)
    cache.put(canon, ring.name, N, s)
    return p, s


# ---------------------------------------------------------------------------
# reports


def make_report(command: str, parameters: dict, results: list, summary: dict, t0: float) -> dict:
    return {
        "schema": REPORT_SCHEMA,
        "tool_version": __version__,
        "command": command,
        "parameters": parameters,
        "results": results,
        "summary": summary,
        "wall_time": round(time.perf_counter() - t0, 4),
    }


def strip_timing(obj):
    """Drop timing fields; two runs on the same input then compare equal."""
    if isinstance(obj, dict):
        return {k: strip_timing(v) for k, v in obj.items() if k not in TIMING_KEYS}
    if isinstance(obj, list):
        return [strip_timing(v) for v in obj]
    return obj


def _coeff_text(ring, c) -> str:
    v = ring.to_json(c)
    if isinstance(v, str):
        return v[:-2] if v.endswith("/1") else v
    return json.dumps(v)


def _table(rows, headers) -> str:
    rows = [[str(x) for x in r] for r in rows]
    widths = [max([len(h)] + [len(r[i]) for r in rows]) for i, h in enumerate(headers)]
    line = lambda r: "  ".join(x.rjust(w) for x, w in zip(r, widths))  # noqa: E731
    return "\n".join([line(headers), line(["-" * w for w in widths])] + [line(r) for r in rows])


# ---------------------------------------------------------------------------
# commands; each returns (report, text, exit code)


def cmd_expand(args, cache):
    t0 = time.perf_counter()
    p, s = expand_cached(args.expr, args.order, cache)
    s = s.truncate(args.order)
    coeffs = [[e, _coeff_text(s.ring, s[e])] for e in range(s.min_exp, args.order + 1)]
    rep = make_report(
        "expand",
        {"expr": print_product(p), "order": args.order},
        [{"series": s.to_json(), "coefficients": coeffs}],
        {"terms": len(coeffs), "ring": s.ring.name},
        t0,
    )
    return rep, _table(coeffs, ["n", "coefficient"]), EXIT_OK


def _verify_report(command, params, results, t0):
    res = [r.to_json() for r in results]
    counts = {k: sum(r.status == k for r in results) for k in ("pass", "fail", "skipped", "error")}
    rep = make_report(command, params, res, {**counts, "all_pass": counts["pass"] == len(results)}, t0)
    lines = []
    for r in results:
        extra = ""
        if r.first_mismatch:
            extra = f"  first mismatch at q^{r.first_mismatch[0]}"
        elif r.message:
            extra = f"  {r.message}"
        bad = [p.label for p in r.parts if not p.equal]
        if bad:
            extra += f"  failing parts: {bad}"
        lines.append(f"{r.status:7s} {r.id:22s} {json.dumps(r.to_json()['params'])}{extra}")
    lines.append(", ".join(f"{k}={v}" for k, v in counts.items()))
    if counts["fail"]:
        code = EXIT_MISMATCH
    elif counts["error"]:
        code = EXIT_INTERNAL
    elif counts["skipped"]:
        code = EXIT_INPUT
    else:
        code = EXIT_OK
    return rep, "\n".join(lines), code


def cmd_verify(args, cache):
    from .identity_catalog import REGISTRY, run_row

    t0 = time.perf_counter()
    row = REGISTRY.get(args.id)
    if row is None:
        raise InputError(f"unknown identity {args.id!r}; see 'qdissect list'")
    if args.params:
        bindings = [{**(row.defaults[0] if row.defaults else {}), **parse_params(args.params, row.schema)}]
    else:
        bindings = row.defaults or [{}]
    results = [run_row(row, dict(b), args.order) for b in bindings]
    return _verify_report("verify", {"id": args.id, "params": args.params, "order": args.order}, results, t0)


def cmd_verify_all(args, cache):
    from .identity_catalog import verify_all

    t0 = time.perf_counter()
    results = verify_all(N=args.order, pattern=args.filter, jobs=args.jobs)
    return _verify_report("verify-all", {"filter": args.filter, "order": args.order}, results, t0)


def cmd_dissect(args, cache):
    t0 = time.perf_counter()
    p, s = expand_cached(args.expr, args.order, cache)
    rep_d = dissect(s, args.m, args.order)
    rep = make_report(
        "dissect",
        {"expr": print_product(p), "m": args.m, "order": args.order},
        [rep_d.to_json()],
        {"vanishing_classes": rep_d.vanishing_classes},
        t0,
    )
    rows = []
    for r, c in enumerate(rep_d.components):
        head = [f"({_coeff_text(c.ring, c[e])})q^{e}" for e, _ in list(c.items())[:6]]
        rows.append([r, "zero" if r in rep_d.vanishing_classes else "", " + ".join(head) + (" + ..." if len(list(c.items())) > 6 else "")])
    text = _table(rows, ["class", "", "leading terms"]) + f"\nvanishing classes mod {args.m}: {rep_d.vanishing_classes}"
    return rep, text, EXIT_OK


def cmd_vanish_scan(args, cache):
    t0 = time.perf_counter()
    if args.family not in FAMILIES:
        raise InputError(f"unknown family {args.family!r}; choose from {sorted(FAMILIES)}")
    grid = json.loads(args.grid) if args.grid else default_grid(args.family)
    if isinstance(grid, dict):
        grid = [grid]
    rows = vanishing_scan(args.family, grid, args.order, jobs=args.jobs)
    counts = {k: sum(r.status == k for r in rows) for k in ("pass", "fail", "skipped", "error")}
    rep = make_report(
        "vanish-scan", {"family": args.family, "order": args.order}, [r.to_json() for r in rows], counts, t0
    )
    lines = [
        [r.status, json.dumps(r.params), f"{r.residue} mod {r.modulus}" if r.modulus else "", r.hypothesis or r.message or ""]
        for r in rows
    ]
    text = _table(lines, ["status", "params", "class", "note"]) + "\n" + ", ".join(f"{k}={v}" for k, v in counts.items())
    code = EXIT_MISMATCH if counts["fail"] else EXIT_INTERNAL if counts["error"] else EXIT_OK
    return rep, text, code


def cmd_numeric(args, cache):
    from .lambert_numeric import NUMERIC_CHECKS, consistency_check, run_numeric

    t0 = time.perf_counter()
    if args.id == "consistency":
        return _consistency(args, t0, consistency_check)
    if args.id not in NUMERIC_CHECKS:
        raise InputError(f"unknown numeric check {args.id!r}; choose from {sorted(NUMERIC_CHECKS)} or 'consistency'")
    point = json.loads(args.point) if args.point else None
    res = run_numeric(args.id, point, prec=args.precision_bits)
    ok = all(r.ok for r in res)
    rep = make_report(
        "numeric",
        {"id": args.id, "precision_bits": args.precision_bits},
        [r.to_json() for r in res],
        {"all_pass": ok, "max_residual": mpmath.nstr(max(r.residual for r in res), 6)},
        t0,
    )
    text = "\n".join(f"{'pass' if r.ok else 'FAIL'}  {json.dumps(r.point.to_json()['params'])}  q={r.point.to_json()['q']}  residual={mpmath.nstr(r.residual, 3)}" for r in res)
    return rep, text, EXIT_OK if ok else EXIT_MISMATCH


def _consistency(args, t0, consistency_check):
    from .identity_catalog import expand_cases
    from .identity_catalog.base import _param_text

    out = []
    for row, params in expand_cases(pattern=args.filter):
        try:
            case = row.build(params)
        except HypothesisError:
            continue
        if not case.has_numeric():
            continue
        r = consistency_check(case, N=args.order, prec=args.precision_bits)
        out.append({
            "id": row.id,
            "params": {k: _param_text(v) for k, v in case.params.items()},
            "ok": r["ok"],
            "gap": mpmath.nstr(max(r["lhs"]["gap"], r["rhs"]["gap"]), 4),
            "bound": mpmath.nstr(min(r["lhs"]["bound"], r["rhs"]["bound"]), 4),
        })
        if args.sample and len(out) >= args.sample:
            break
    ok = all(o["ok"] for o in out)
    rep = make_report("numeric", {"id": "consistency", "order": args.order, "filter": args.filter}, out, {"all_pass": ok, "rows": len(out)}, t0)
    text = _table([[("pass" if o["ok"] else "FAIL"), o["id"], o["gap"], o["bound"]] for o in out], ["status", "id", "gap", "bound"])
    return rep, text, EXIT_OK if ok else EXIT_MISMATCH


def cmd_list(args, cache):
    from .identity_catalog import REGISTRY
    from .identity_catalog.base import _param_text
    from .lambert_numeric import NUMERIC_CHECKS

    t0 = time.perf_counter()
    rows = []
    for key in sorted(REGISTRY):
        r = REGISTRY[key]
        rows.append({
            "id": r.id,
            "group": r.group,
            "description": r.description,
            "schema": r.schema,
            "defaults": [{k: _param_text(v) for k, v in d.items()} for d in r.defaults],
        })
    rep = make_report("list", {}, rows, {"rows": len(rows), "numeric": sorted(NUMERIC_CHECKS), "families": sorted(FAMILIES)}, t0)
    text = _table([[r["id"], r["group"], len(r["defaults"]), r["description"][:70]] for r in rows], ["id", "group", "cases", "description"])
    return rep, text, EXIT_OK


def cmd_cache(args, cache):
    t0 = time.perf_counter()
    if args.action != "clear":
        raise InputError("only 'cache clear' is supported")
    n = cache.clear()
    where = str(cache.root) if cache.root else None
    return make_report("cache clear", {"cache_dir": where}, [], {"removed": n}, t0), f"removed {n} cached series", EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", "-N", type=int, default=100, help="truncation order (default 100)")
    common.add_argument("--json", action="store_true", help="print the JSON report")
    common.add_argument("--jobs", type=int, default=1, help="parallel rows")
    common.add_argument("--precision-bits", type=int, default=128, help="numeric precision in bits")
    common.add_argument("--cache-dir", default=None, help="series cache directory (or QDISSECT_CACHE_DIR)")

    ap = argparse.ArgumentParser(prog="qdissect", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"qdissect {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", parents=[common], help="expand a product to order N")
    p.add_argument("expr")
    p.set_defaults(fn=cmd_expand)

    p = sub.add_parser("verify", parents=[common], help="verify one catalog row")
    p.add_argument("id")
    p.add_argument("--params", default=None, help='bindings, e.g. "k=4 m=2 r=7 s=3"')
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("verify-all", parents=[common], help="verify every catalog row at its default bindings")
    p.add_argument("filter", nargs="?", default=None, help="glob on row id or group:id")
    p.set_defaults(fn=cmd_verify_all)

    p = sub.add_parser("dissect", parents=[common], help="m-dissection of a product")
    p.add_argument("expr")
    p.add_argument("m", type=int)
    p.set_defaults(fn=cmd_dissect)

    p = sub.add_parser("vanish-scan", parents=[common], help="scan a vanishing-coefficient family")
    p.add_argument("family", help=", ".join(sorted(FAMILIES)))
    p.add_argument("--grid", default=None, help="JSON list of parameter dicts (default: built-in grid)")
    p.set_defaults(fn=cmd_vanish_scan)

    p = sub.add_parser("numeric", parents=[common], help="numeric check of a bilateral identity, or 'consistency'")
    p.add_argument("id")
    p.add_argument("--point", default=None, help='JSON point, e.g. {"q": "0.1", "params": {"a": "2", "b": "0.3", "z": "0.5"}}')
    p.add_argument("--filter", default=None, help="row glob for 'consistency'")
    p.add_argument("--sample", type=int, default=10, help="rows for 'consistency' (0 = all)")
    p.set_defaults(fn=cmd_numeric)

    p = sub.add_parser("list", parents=[common], help="list catalog rows and schemas")
    p.set_defaults(fn=cmd_list)

    p = sub.add_parser("cache", parents=[common], help="cache maintenance")
    p.add_argument("action", choices=["clear"])
    p.set_defaults(fn=cmd_cache)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.order < 0:
        print("error: --order must be >= 0", file=sys.stderr)
        return EXIT_INPUT
    cache = SeriesCache(cache_dir(args.cache_dir))
    try:
        report, text, code = args.fn(args, cache)
    except (ParseError, ParamError, InputError, HypothesisError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:  # region violations and bad values
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (SeriesError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL
    print(json.dumps(report, indent=2) if args.json else text)
    return code


if __name__ == "__main__":
    sys.exit(main())
