"""Families of products with a vanishing residue class, and grid scans over them.

Each family maps a parameter point to ``(product, modulus, residue)`` or
raises :class:`HypothesisError` naming the hypothesis the point violates.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd

from .product_algebra import ProductExpr, mono, product, vanishing_check

__all__ = [
    "HypothesisError",
    "ScanRow",
    "FAMILIES",
    "family_instance",
    "default_grid",
    "vanishing_scan",
    "t2n_product",
    "t3n_product",
    "ab_product",
    "ag_params",
]


class HypothesisError(ValueError):
    """A parameter point violates a hypothesis of the theorem."""

    def __init__(self, hypothesis: str):
        super().__init__(hypothesis)
        self.hypothesis = hypothesis


def _require(cond: bool, hypothesis: str):
    if not cond:
        raise HypothesisError(hypothesis)


def _t_split(k: int, m: int, r: int):
    _require(k > 1, "k > 1")
    _require(m > 1, "m > 1")
    _require(1 <= r < m * k, "1 <= r < mk")
    _require(gcd(r, k) == 1, "gcd(r, k) = 1")
    s, t = divmod(r, m)
    _require(1 <= t < m, "r = sm + t with 1 <= t < m")
    return s, t


def t2n_product(k: int, m: int, r: int, sign: int = 1):
    """(q^(r-tk), q^(mk-(r-tk)); q^mk) / (sign q^r, sign q^(mk-r); q^mk) and c_(kn - rs)."""
    s, t = _t_split(k, m, r)
    mk = m * k
    p = product(
        [mono(1, r - t * k), mono(1, mk - (r - t * k))],
        [mono(sign, r), mono(sign, mk - r)],
        base=mk,
    )
    return p, k, (-r * s) % k


def t3n_product(k: int, m: int, r: int):
    _require(k % 2 == 1, "k odd")
    return t2n_product(k, m, r, sign=-1)


def ab_product(k: int, r: int):
    """Andrews-Bressoud: phi_(kn + r(k-r+1)/2) = 0."""
    _require(1 <= r < k, "1 <= r < k")
    _require(gcd(r, k) == 1, "gcd(r, k) = 1")
    _require((r + k) % 2 == 1, "r and k of opposite parity")
    p = product([mono(1, r), mono(1, 2 * k - r)], [mono(1, k - r), mono(1, k + r)], base=2 * k)
    return p, k, (r * (k - r + 1) // 2) % k


def ag_params(k: int, m: int, s: int):
    """r and r' from the Alladi-Gordon recipe r* = (k-1)s."""
    _require(1 < m < k, "1 < m < k")
    _require(1 <= s < m * k, "1 <= s < mk")
    _require(gcd(s, m * k) == 1, "gcd(s, km) = 1")
    mk = m * k
    r_star = (k - 1) * s
    r = r_star % mk
    _require(1 <= r < mk, "1 <= r < mk")
    r_prime = (-(-r_star // mk)) % k
    _require(1 <= r_prime < k, "1 <= r' < k")
    return r, r_prime


def ag_product(k: int, m: int, s: int, sign: int = 1):
    r, r_prime = ag_params(k, m, s)
    mk = m * k
    p = product([mono(1, r), mono(1, mk - r)], [mono(sign, s), mono(sign, mk - s)], base=mk)
    return p, k, (r * r_prime) % k


def ag2_product(k: int, m: int, s: int):
    _require(k % 2 == 1, "k odd")
    return ag_product(k, m, s, sign=-1)


_RS = {
    "F": ("(q^3,q^5;q^8)/(q,q^7;q^8)", 4, 3),
    "FINV": ("(q,q^7;q^8)/(q^3,q^5;q^8)", 4, 2),
    "G": ("(q^5,q^7;q^12)/(q,q^11;q^12)", 6, 5),
    "GINV": ("(q,q^11;q^12)/(q^5,q^7;q^12)", 6, 3),
}


def rs_product(which: str):
    from .spec_parser import parse_product

    _require(which in _RS, "which in {F, FINV, G, GINV}")
    text, k, rho = _RS[which]
    return parse_product(text), k, rho


FAMILIES = {
    "T2N": (t2n_product, ("k", "m", "r")),
    "T3N": (t3n_product, ("k", "m", "r")),
    "AB_T1": (ab_product, ("k", "r")),
    "AG_T1": (ag_product, ("k", "m", "s")),
    "AG_T2": (ag2_product, ("k", "m", "s")),
    "RS": (rs_product, ("which",)),
}


def family_instance(family: str, params: dict):
    try:
        fn, names = FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}") from None
    missing = [n for n in names if n not in params]
    if missing:
        raise ValueError(f"{family} needs parameters {missing}")
    return fn(**{n: params[n] for n in names})


def default_grid(family: str) -> list[dict]:
    if family in ("T2N", "T3N"):
        return [
            {"k": k, "m": m, "r": r}
            for k, m in itertools.product(range(2, 7), repeat=2)
            for r in range(1, m * k)
        ]
    if family == "AB_T1":
        return [{"k": k, "r": r} for k in range(2, 10) for r in range(1, k)]
    if family in ("AG_T1", "AG_T2"):
        return [{"k": k, "m": m, "s": s} for k in range(3, 8) for m in range(2, k) for s in range(1, m * k)]
    if family == "RS":
        return [{"which": w} for w in _RS]
    raise ValueError(f"unknown family {family!r}")


@dataclass
class ScanRow:
    family: str
    params: dict
    status: str  # pass | fail | skipped | error
    N: int
    modulus: int | None = None
    residue: int | None = None
    expr: str | None = None
    hypothesis: str | None = None
    violations: list = field(default_factory=list)
    message: str | None = None

    def to_json(self):
        return {k: v for k, v in self.__dict__.items() if v is not None}


def scan_point(family: str, params: dict, N: int, residue_offset: int = 0) -> ScanRow:
    try:
        p, k, rho = family_instance(family, params)
    except HypothesisError as exc:
        return ScanRow(family, dict(params), "skipped", N, hypothesis=exc.hypothesis)
    rho = (rho + residue_offset) % k
    try:
        res = vanishing_check(p, k, rho, N)
    except Exception as exc:  # evaluation failures are reported per row
        return ScanRow(family, dict(params), "error", N, k, rho, str(p), message=str(exc))
    return ScanRow(
        family, dict(params), "pass" if res.passed else "fail", N, k, rho, str(p), violations=res.violations[:20]
    )


def _scan_job(args):
    return scan_point(*args)


def vanishing_scan(family: str, grid=None, N: int = 100, jobs: int = 1, residue_offset: int = 0) -> list[ScanRow]:
    """One row per grid point, in grid order.

    ``residue_offset`` shifts the claimed class; a nonzero offset is a
    negative control.
    """
    grid = default_grid(family) if grid is None else list(grid)
    work = [(family, dict(g), N, residue_offset) for g in grid]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(_scan_job, work, chunksize=4))
    return [_scan_job(w) for w in work]


def product_family_expr(family: str, params: dict) -> ProductExpr:
    return family_instance(family, params)[0]
