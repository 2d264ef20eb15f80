"""Symbolic q-products and their expansion into truncated series.

A parameter is always a monomial ``c*q^e``; a product is a prefactor monomial
times Pochhammer symbols ``(c q^e; q^t)_n`` raised to +-1 powers.  Expansion
multiplies (or divides) one binomial factor ``1 - c q^E`` at a time, which is
linear in the window length, so a full infinite product costs O(N^2 / t).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .exact_coefficients import QQ, CyclotomicField, CyclotomicNumber, rational_from_str, rational_to_str, to_rational
from .qseries_core import (
    InsufficientPrecision,
    SeriesError,
    SingularSeries,
    TruncatedSeries,
    ts_component,
    ts_equal_to_order,
    ts_invert,
    ts_mul,
)

__all__ = [
    "QMonomial",
    "mono",
    "PochhammerFactor",
    "ProductExpr",
    "SingularFactor",
    "DivergentProduct",
    "DissectionReport",
    "VanishingResult",
    "infer_ring",
    "factor_zero_index",
    "eval_pochhammer_inf",
    "eval_pochhammer_fin",
    "eval_product_expr",
    "borwein_a",
    "cf_convergent",
    "agreement_order",
    "dissect",
    "vanishing_check",
]

MAX_RETRIES = 8


class SingularFactor(SingularSeries):
    """A Pochhammer factor is identically zero where it must be inverted."""


class DivergentProduct(SeriesError):
    pass


@dataclass(frozen=True)
class QMonomial:
    """c * q^e with c an exact rational or cyclotomic number."""

    c: object = 1
    e: int = 0

    def __post_init__(self):
        if not isinstance(self.c, CyclotomicNumber):
            object.__setattr__(self, "c", to_rational(self.c))
        object.__setattr__(self, "e", int(self.e))

    def __mul__(self, other):
        if isinstance(other, QMonomial):
            return QMonomial(self.c * other.c, self.e + other.e)
        return QMonomial(self.c * other, self.e)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, QMonomial):
            return QMonomial(_cdiv(self.c, other.c), self.e - other.e)
        return QMonomial(_cdiv(self.c, other), self.e)

    def __rtruediv__(self, other):
        return QMonomial(other, 0) / self

    def __pow__(self, n: int):
        if n >= 0:
            return QMonomial(self.c**n, self.e * n)
        return QMonomial(1, 0) / (self ** (-n))

    def __neg__(self):
        return QMonomial(-self.c, self.e)

    def shift(self, k: int) -> "QMonomial":
        """Multiply by q^k."""
        return QMonomial(self.c, self.e + k)

    def is_zero(self) -> bool:
        return not self.c

    def __str__(self):
        return format_monomial(self)

    def to_json(self):
        if isinstance(self.c, CyclotomicNumber):
            return {"c": [rational_to_str(x) for x in self.c.coeffs], "m": self.c.m, "e": self.e}
        return {"c": rational_to_str(self.c), "e": self.e}

    @classmethod
    def from_json(cls, data):
        if isinstance(data["c"], list):
            return cls(CyclotomicNumber(int(data["m"]), [rational_from_str(x) for x in data["c"]]), data["e"])
        return cls(rational_from_str(data["c"]), data["e"])


def _cdiv(a, b):
    if isinstance(a, CyclotomicNumber) or isinstance(b, CyclotomicNumber):
        if not isinstance(a, CyclotomicNumber):
            a = CyclotomicNumber(b.m, [a])
        return a / b
    if not b:
        raise ZeroDivisionError("monomial with zero coefficient")
    return to_rational(QQ(a) * QQ.inv(b))


def mono(c=1, e: int = 0) -> QMonomial:
    return QMonomial(c, e)


def format_monomial(x: QMonomial) -> str:
    """Text form accepted by the parser's monomial rule."""
    c, e = x.c, x.e
    if isinstance(c, CyclotomicNumber):
        raise ValueError("cyclotomic coefficients have no text form")
    neg = c < 0
    a = -c if neg else c
    sign = "-" if neg else ""
    qpart = "q" if e == 1 else f"q^{e}"
    if e == 0:
        return f"{sign}{_fmt_rat(a)}"
    if a == 1:
        return f"{sign}{qpart}"
    return f"{sign}{_fmt_rat(a)}*{qpart}"


def _fmt_rat(a) -> str:
    a = to_rational(a)
    if isinstance(a, int):
        return str(a)
    return f"{a.numerator}/{a.denominator}"


@dataclass(frozen=True)
class PochhammerFactor:
    """(arg; q^base)_length raised to ``power``; ``length=None`` is infinite."""

    arg: QMonomial
    base: int = 1
    length: int | None = None
    power: int = 1

    def __post_init__(self):
        if self.base < 1:
            raise ValueError("Pochhammer base exponent must be >= 1")
        if self.length is not None and self.length < 0:
            raise ValueError("finite Pochhammer length must be >= 0")
        if self.power == 0:
            raise ValueError("power must be nonzero")

    def zero_index(self) -> int | None:
        return factor_zero_index(self.arg, self.base, self.length)

    def to_json(self):
        return {
            "arg": self.arg.to_json(),
            "base": self.base,
            "length": "inf" if self.length is None else self.length,
            "power": self.power,
        }

    @classmethod
    def from_json(cls, data):
        length = data.get("length", "inf")
        return cls(
            QMonomial.from_json(data["arg"]),
            int(data.get("base", 1)),
            None if length == "inf" else int(length),
            int(data.get("power", 1)),
        )


@dataclass(frozen=True)
class ProductExpr:
    prefactor: QMonomial = field(default_factory=QMonomial)
    factors: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))

    def normalized(self) -> "ProductExpr":
        """Unit-power factors; a factor of power k becomes |k| copies."""
        out = []
        for f in self.factors:
            sgn = 1 if f.power > 0 else -1
            out.extend([PochhammerFactor(f.arg, f.base, f.length, sgn)] * abs(f.power))
        return ProductExpr(self.prefactor, tuple(out))

    def structurally_equal(self, other: "ProductExpr") -> bool:
        return self.normalized() == other.normalized()

    def __mul__(self, other):
        if isinstance(other, ProductExpr):
            return ProductExpr(self.prefactor * other.prefactor, self.factors + other.factors)
        if isinstance(other, QMonomial):
            return ProductExpr(self.prefactor * other, self.factors)
        return ProductExpr(self.prefactor * other, self.factors)

    __rmul__ = __mul__

    def reciprocal(self) -> "ProductExpr":
        return ProductExpr(
            QMonomial(1, 0) / self.prefactor,
            tuple(PochhammerFactor(f.arg, f.base, f.length, -f.power) for f in self.factors),
        )

    def __truediv__(self, other):
        if isinstance(other, ProductExpr):
            return self * other.reciprocal()
        return ProductExpr(self.prefactor / other, self.factors)

    def monomials(self):
        yield self.prefactor
        for f in self.factors:
            yield f.arg

    def __str__(self):
        from .spec_parser import print_product

        return print_product(self)

    def to_json(self):
        return {"prefactor": self.prefactor.to_json(), "factors": [f.to_json() for f in self.factors]}

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            from .spec_parser import parse_product

            return parse_product(data)
        return cls(
            QMonomial.from_json(data.get("prefactor", {"c": "1/1", "e": 0})),
            tuple(PochhammerFactor.from_json(f) for f in data.get("factors", [])),
        )


def poch(arg: QMonomial, base: int = 1, power: int = 1, length: int | None = None) -> PochhammerFactor:
    return PochhammerFactor(arg, base, length, power)


def product(num: Iterable[QMonomial] = (), den: Iterable[QMonomial] = (), base: int = 1, prefactor=None) -> ProductExpr:
    """(num...; q^base)_inf / (den...; q^base)_inf times ``prefactor``."""
    facs = [PochhammerFactor(x, base, None, 1) for x in num]
    facs += [PochhammerFactor(x, base, None, -1) for x in den]
    pre = QMonomial(1, 0) if prefactor is None else prefactor
    if not isinstance(pre, QMonomial):
        pre = QMonomial(pre, 0)
    return ProductExpr(pre, tuple(facs))


__all__ += ["poch", "product", "format_monomial"]


def infer_ring(monomials: Iterable[QMonomial]):
    ring = QQ
    for x in monomials:
        if isinstance(x.c, CyclotomicNumber) and x.c.m > 2:
            if ring is not QQ and ring.m != x.c.m:
                raise ValueError("mixed conductors in one product")
            ring = CyclotomicField(x.c.m)
    return ring


def factor_zero_index(arg: QMonomial, t: int, length: int | None = None) -> int | None:
    """Index n of a vanishing factor 1 - arg*q^(t n), or None."""
    if arg.c != 1 or arg.e > 0 or arg.e % t:
        return None
    n = -arg.e // t
    if length is not None and n >= length:
        return None
    return n


# ---------------------------------------------------------------------------
# expansion on a mutable window: co[i] is the coefficient of q^(lo+i), known
# for exponents <= hi


class _Window:
    __slots__ = ("ring", "lo", "hi", "co")

    def __init__(self, ring, lo, hi, co):
        self.ring, self.lo, self.hi, self.co = ring, lo, hi, co

    def scale(self, c):
        if c != 1:
            self.co = [c * x for x in self.co]

    def mul_binomial(self, c, E):
        if E < 0:
            self.lo += E
            self.hi += E
            self.scale(-c)
            c, E = self.ring.inv(c), -E
        elif E == 0:
            self.scale(1 - c)
            return
        co = self.co
        for k in range(len(co) - 1, E - 1, -1):
            x = co[k - E]
            if x:
                co[k] -= c * x

    def div_binomial(self, c, E):
        if E < 0:
            cinv = self.ring.inv(c)
            self.lo -= E
            self.hi -= E
            self.scale(-cinv)
            c, E = cinv, -E
        elif E == 0:
            self.scale(self.ring.inv(1 - c))
            return
        co = self.co
        for k in range(E, len(co)):
            x = co[k - E]
            if x:
                co[k] += c * x

    def apply(self, f: PochhammerFactor):
        ring = self.ring
        c = ring(f.arg.c)
        e, t = f.arg.e, f.base
        n = 0
        while f.length is None or n < f.length:
            E = e + t * n
            if E > 0 and self.lo + E > self.hi:
                break
            for _ in range(abs(f.power)):
                if f.power > 0:
                    self.mul_binomial(c, E)
                else:
                    self.div_binomial(c, E)
            n += 1
            if n > 10**7:
                raise DivergentProduct("product did not terminate")

    def result(self):
        return TruncatedSeries(self.ring, self.lo, self.hi, self.co)


def _describe(f: PochhammerFactor) -> str:
    from .spec_parser import print_factor

    try:
        return print_factor(f)
    except ValueError:
        return repr(f)


def _expand(p: ProductExpr, W: int, ring) -> TruncatedSeries:
    win = _Window(ring, 0, W, [ring.one] + [ring.zero] * W)
    for f in p.factors:
        win.apply(f)
    out = win.result()
    return out.scale(p.prefactor.c).shift(p.prefactor.e)


def eval_product_expr(p: ProductExpr, N: int, ring=None, max_retries: int = MAX_RETRIES) -> TruncatedSeries:
    """Expand ``p`` with every coefficient up to q^N exact."""
    if ring is None:
        ring = infer_ring(p.monomials())
    if p.prefactor.is_zero():
        return TruncatedSeries.zero(N, ring)
    vanishing = None
    for f in p.factors:
        if f.zero_index() is not None:
            if f.power < 0:
                raise SingularFactor(f"singular factor {_describe(f)}: term n={f.zero_index()} is 1 - 1")
            vanishing = f
    if vanishing is not None:
        return TruncatedSeries.zero(N, ring)
    W = max(N, 0)
    for _ in range(max_retries):
        s = _expand(p, W, ring)
        if s.trunc_order >= N:
            return s.truncate(N)
        W += N - s.trunc_order
    raise InsufficientPrecision(f"could not reach order {N} after {max_retries} retries")


def eval_pochhammer_inf(x: QMonomial, t: int, N: int, ring=None) -> TruncatedSeries:
    """(x; q^t)_inf to order N."""
    if t < 1:
        raise DivergentProduct("base exponent must be >= 1")
    f = PochhammerFactor(x, t, None, 1)
    if f.zero_index() is not None:
        raise SingularFactor(f"singular factor {_describe(f)} is identically zero")
    return eval_product_expr(ProductExpr(QMonomial(1, 0), (f,)), N, ring)


def eval_pochhammer_fin(x: QMonomial, t: int, n: int, N: int, ring=None) -> TruncatedSeries:
    """(x; q^t)_n to order N; zero factors give the zero series."""
    if n < 0:
        raise ValueError("length must be >= 0")
    return eval_product_expr(ProductExpr(QMonomial(1, 0), (PochhammerFactor(x, t, n, 1),)), N, ring)


# ---------------------------------------------------------------------------


def borwein_a(N: int) -> TruncatedSeries:
    """a(q) = sum over (m, n) in Z^2 of q^(m^2 + mn + n^2)."""
    if N < 0:
        raise ValueError("N must be >= 0")
    counts = [0] * (N + 1)
    # m^2 + mn + n^2 >= 3/4 max(m, n)^2
    bound = int((4 * N / 3) ** 0.5) + 2
    for m in range(-bound, bound + 1):
        for n in range(-bound, bound + 1):
            k = m * m + m * n + n * n
            if k <= N:
                counts[k] += 1
    return TruncatedSeries.from_coeffs(counts, N)


def _as_series(obj, N: int, ring) -> TruncatedSeries:
    if isinstance(obj, TruncatedSeries):
        return obj
    if isinstance(obj, dict):
        return TruncatedSeries.from_dict(obj, N, ring)
    if isinstance(obj, QMonomial):
        return TruncatedSeries.monomial(obj.c, obj.e, N, ring)
    return TruncatedSeries.monomial(obj, 0, N, ring)


def _term(seq, i):
    return seq(i) if callable(seq) else seq[i]


def cf_convergent(partial_num, partial_den, K: int, N: int, ring=QQ, max_retries: int = MAX_RETRIES) -> TruncatedSeries:
    """K-th convergent b0 + a1/(b1 + a2/(b2 + ... + aK/bK)), bottom-up.

    ``partial_num(i)`` gives a_i for 1 <= i <= K and ``partial_den(i)`` gives
    b_i for 0 <= i <= K (callables or indexable sequences).  Entries may be
    TruncatedSeries, ``{exponent: coeff}`` polynomials, monomials or scalars.
    """
    if K < 1:
        raise ValueError("K must be >= 1")
    W = N
    for _ in range(max_retries):
        v = _as_series(_term(partial_den, K), W, ring)
        for i in range(K, 0, -1):
            a = _as_series(_term(partial_num, i), W, ring)
            try:
                v = _as_series(_term(partial_den, i - 1), W, ring) + ts_mul(a, ts_invert(v))
            except SingularSeries as exc:
                raise SingularSeries(f"singular denominator at level {i}: {exc}") from None
        if v.trunc_order >= N:
            return v.truncate(N)
        W += N - v.trunc_order
    raise InsufficientPrecision(f"convergent not exact to order {N}")


def agreement_order(x: TruncatedSeries, y: TruncatedSeries) -> int:
    """Largest M with x = y + O(q^(M+1)), capped at the common truncation order."""
    N = min(x.trunc_order, y.trunc_order)
    cmp = ts_equal_to_order(x, y, N)
    return N if cmp.equal else cmp.exponent - 1


# ---------------------------------------------------------------------------


@dataclass
class DissectionReport:
    modulus: int
    components: list
    vanishing_classes: list
    N: int

    def to_json(self):
        return {
            "modulus": self.modulus,
            "N": self.N,
            "vanishing_classes": list(self.vanishing_classes),
            "components": [c.to_json() for c in self.components],
        }


def dissect(x: TruncatedSeries, m: int, N: int | None = None) -> DissectionReport:
    if m < 1:
        raise ValueError("modulus must be >= 1")
    if N is None:
        N = x.trunc_order
    x = x.truncate(N)
    comps = [ts_component(x, m, r) for r in range(m)]
    vanish = [r for r, c in enumerate(comps) if c.is_zero()]
    return DissectionReport(m, comps, vanish, N)


@dataclass
class VanishingResult:
    modulus: int
    residue: int
    N: int
    passed: bool
    violations: list

    def to_json(self):
        return {
            "modulus": self.modulus,
            "residue": self.residue,
            "N": self.N,
            "passed": self.passed,
            "violations": list(self.violations),
        }


def vanishing_check(p, k: int, rho: int, N: int) -> VanishingResult:
    """Check that every coefficient of q^n, n = rho (mod k), n <= N, is zero."""
    s = p if isinstance(p, TruncatedSeries) else eval_product_expr(p, N)
    rho %= k
    bad = [n for n, _ in ts_component(s.truncate(N), k, rho).items()]
    return VanishingResult(k, rho, N, not bad, bad)
