"""Truncated formal Laurent series in q with tracked precision.

A series is known exactly for every exponent ``<= trunc_order``; everything
above is unknown.  Arithmetic propagates that bound pessimistically::

    N(x + y) = min(N(x), N(y))
    N(x * y) = min(N(x) + v(y), N(y) + v(x))      v = lowest exponent

The helpers ``mul_binomial``/``div_binomial`` multiply or divide by the exact
polynomial ``1 - c q^E`` in linear time; they are what the product evaluator
is built on.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

from .exact_coefficients import QQ, ring_from_name

__all__ = [
    "TruncatedSeries",
    "SeriesError",
    "SingularSeries",
    "InsufficientPrecision",
    "RingMismatch",
    "Comparison",
    "ts_add",
    "ts_sub",
    "ts_mul",
    "ts_invert",
    "ts_scale_exponents",
    "ts_component",
    "ts_equal_to_order",
]

MAX_EXPONENT = 10**7


class SeriesError(ArithmeticError):
    pass


class SingularSeries(SeriesError):
    pass


class InsufficientPrecision(SeriesError):
    pass


class RingMismatch(SeriesError, TypeError):
    pass


def _check_exp(e: int) -> int:
    if not -MAX_EXPONENT <= e <= MAX_EXPONENT:
        raise OverflowError(f"exponent {e} outside supported range")
    return e


class TruncatedSeries:
    """sum_k coeffs[k - min_exp] q^k + O(q^(trunc_order + 1))."""

    __slots__ = ("ring", "min_exp", "trunc_order", "coeffs")

    def __init__(self, ring, min_exp: int, trunc_order: int, coeffs: Sequence = ()):
        _check_exp(trunc_order)
        coeffs = list(coeffs)
        width = trunc_order - min_exp + 1
        if width < 0:
            coeffs = []
            min_exp = trunc_order + 1
        elif len(coeffs) > width:
            del coeffs[width:]
        lead = 0
        while lead < len(coeffs) and not coeffs[lead]:
            lead += 1
        if lead == len(coeffs):
            min_exp, coeffs = trunc_order + 1, []
        else:
            min_exp += lead
            coeffs = coeffs[lead:]
            coeffs += [ring.zero] * (trunc_order - min_exp + 1 - len(coeffs))
        if ring is not QQ:
            coeffs = [ring(c) for c in coeffs]
        self.ring = ring
        self.min_exp = _check_exp(min_exp)
        self.trunc_order = trunc_order
        self.coeffs = tuple(coeffs)

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, N: int, ring=QQ) -> "TruncatedSeries":
        return cls(ring, N + 1, N, [])

    @classmethod
    def one(cls, N: int, ring=QQ) -> "TruncatedSeries":
        return cls.monomial(ring.one, 0, N, ring)

    @classmethod
    def monomial(cls, c, e: int, N: int, ring=QQ) -> "TruncatedSeries":
        if e > N:
            return cls.zero(N, ring)
        return cls(ring, e, N, [ring(c)])

    @classmethod
    def from_dict(cls, terms: dict, N: int, ring=QQ) -> "TruncatedSeries":
        terms = {k: ring(v) for k, v in terms.items() if k <= N and v}
        if not terms:
            return cls.zero(N, ring)
        lo = min(terms)
        coeffs = [ring.zero] * (N - lo + 1)
        for k, v in terms.items():
            coeffs[k - lo] = v
        return cls(ring, lo, N, coeffs)

    @classmethod
    def from_coeffs(cls, coeffs: Sequence, N: int | None = None, ring=QQ, min_exp: int = 0):
        coeffs = [ring(c) for c in coeffs]
        if N is None:
            N = min_exp + len(coeffs) - 1
        return cls(ring, min_exp, N, coeffs)

    # -- access ----------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int):
        if k > self.trunc_order:
            raise InsufficientPrecision(f"coefficient q^{k} beyond truncation order {self.trunc_order}")
        if k < self.min_exp:
            return self.ring.zero
        return self.coeffs[k - self.min_exp]

    def coefficient(self, k: int):
        return self[k]

    def items(self):
        """(exponent, coefficient) pairs for the nonzero coefficients."""
        return [(self.min_exp + i, c) for i, c in enumerate(self.coeffs) if c]

    def window(self, lo: int | None = None, hi: int | None = None) -> list:
        lo = self.min_exp if lo is None else lo
        hi = self.trunc_order if hi is None else hi
        return [self[k] for k in range(lo, hi + 1)]

    def __len__(self):
        return len(self.coeffs)

    def __repr__(self):
        terms = []
        for k, c in self.items()[:8]:
            terms.append(f"({c})*q^{k}")
        more = " + ..." if len(self.items()) > 8 else ""
        body = " + ".join(terms) if terms else "0"
        return f"<TruncatedSeries {self.ring.name}: {body}{more} + O(q^{self.trunc_order + 1})>"

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.trunc_order == other.trunc_order
            and self.min_exp == other.min_exp
            and self.coeffs == other.coeffs
        )

    __hash__ = None

    def _same_ring(self, other):
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring.name} vs {other.ring.name}")

    # -- arithmetic ------------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self + TruncatedSeries.monomial(other, 0, self.trunc_order, self.ring)
        return ts_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.ring, self.min_exp, self.trunc_order, [-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self - TruncatedSeries.monomial(other, 0, self.trunc_order, self.ring)
        return ts_sub(self, other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        return ts_mul(self, other)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(self.ring.inv(self.ring(other)))
        return ts_mul(self, ts_invert(other))

    def __pow__(self, n: int):
        if n < 0:
            return ts_invert(self) ** (-n)
        if n == 0:
            return TruncatedSeries.one(self.trunc_order - self.min_exp, self.ring)
        result = self
        for _ in range(n - 1):
            result = ts_mul(result, self)
        return result

    def scale(self, c) -> "TruncatedSeries":
        c = self.ring(c)
        if not c:
            return TruncatedSeries.zero(self.trunc_order, self.ring)
        if c == 1:
            return self
        return TruncatedSeries(self.ring, self.min_exp, self.trunc_order, [c * x for x in self.coeffs])

    def shift(self, e: int) -> "TruncatedSeries":
        """Multiply by q^e (exact, moves the truncation order by e)."""
        if e == 0:
            return self
        return TruncatedSeries(self.ring, self.min_exp + e, _check_exp(self.trunc_order + e), self.coeffs)

    def mul_monomial(self, c, e: int) -> "TruncatedSeries":
        return self.scale(c).shift(e)

    def truncate(self, N: int) -> "TruncatedSeries":
        if N > self.trunc_order:
            raise InsufficientPrecision(f"cannot raise truncation order {self.trunc_order} to {N}")
        return TruncatedSeries(self.ring, self.min_exp, N, self.coeffs)

    def mul_binomial(self, c, E: int) -> "TruncatedSeries":
        """Multiply by the exact polynomial 1 - c*q^E."""
        ring = self.ring
        c = ring(c)
        if not c:
            return self
        if E == 0:
            return self.scale(1 - c)
        if E < 0:
            # 1 - c q^E = -c q^E (1 - c^-1 q^-E)
            return self.shift(E).scale(-c).mul_binomial(ring.inv(c), -E)
        co = list(self.coeffs)
        for k in range(len(co) - 1, E - 1, -1):
            x = co[k - E]
            if x:
                co[k] = co[k] - c * x
        return TruncatedSeries(ring, self.min_exp, self.trunc_order, co)

    def div_binomial(self, c, E: int) -> "TruncatedSeries":
        """Divide by the exact polynomial 1 - c*q^E."""
        ring = self.ring
        c = ring(c)
        if not c:
            return self
        if E == 0:
            if c == 1:
                raise SingularSeries("division by the zero factor (1 - 1)")
            return self.scale(ring.inv(1 - c))
        if E < 0:
            cinv = ring.inv(c)
            return self.shift(-E).scale(-cinv).div_binomial(cinv, -E)
        co = list(self.coeffs)
        for k in range(E, len(co)):
            x = co[k - E]
            if x:
                co[k] = co[k] + c * x
        return TruncatedSeries(ring, self.min_exp, self.trunc_order, co)

    # -- misc ----------------------------------------------------------------
    def scale_exponents(self, t: int) -> "TruncatedSeries":
        return ts_scale_exponents(self, t)

    def component(self, m: int, r: int) -> "TruncatedSeries":
        return ts_component(self, m, r)

    def invert(self) -> "TruncatedSeries":
        return ts_invert(self)

    def evaluate(self, q, ctx=None):
        """Numeric value of the truncated sum at ``q`` (mpmath)."""
        import mpmath

        ctx = ctx or mpmath.mp
        total = ctx.mpf(0)
        qv = ctx.convert(q)
        for k, c in self.items():
            total += _to_mp(c, ctx) * qv**k
        return total

    # -- serialisation -------------------------------------------------------
    def to_json(self) -> dict[str, Any]:
        return {
            "ring": self.ring.name,
            "min_exp": self.min_exp,
            "trunc_order": self.trunc_order,
            "coeffs": [self.ring.to_json(c) for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, data: dict) -> "TruncatedSeries":
        ring = ring_from_name(data["ring"])
        coeffs = [ring.from_json(c) for c in data["coeffs"]]
        return cls(ring, int(data["min_exp"]), int(data["trunc_order"]), coeffs)


def _to_mp(c, ctx):
    from .exact_coefficients import CyclotomicNumber

    if isinstance(c, CyclotomicNumber):
        w = ctx.expjpi(ctx.mpf(2) / c.m)
        return ctx.fsum(ctx.mpf(x.numerator) / x.denominator * w**k for k, x in enumerate(c.coeffs) if x)
    if isinstance(c, int):
        return ctx.mpf(c)
    return ctx.mpf(int(c.numerator)) / int(c.denominator)


def ts_add(x: TruncatedSeries, y: TruncatedSeries) -> TruncatedSeries:
    x._same_ring(y)
    N = min(x.trunc_order, y.trunc_order)
    lo = min(x.min_exp, y.min_exp)
    if lo > N:
        return TruncatedSeries.zero(N, x.ring)
    out = [x.ring.zero] * (N - lo + 1)
    for src in (x, y):
        off = src.min_exp - lo
        for i, c in enumerate(src.coeffs[: max(N - src.min_exp + 1, 0)]):
            if c:
                out[off + i] = out[off + i] + c
    return TruncatedSeries(x.ring, lo, N, out)


def ts_sub(x: TruncatedSeries, y: TruncatedSeries) -> TruncatedSeries:
    return ts_add(x, -y)


def ts_mul(x: TruncatedSeries, y: TruncatedSeries) -> TruncatedSeries:
    x._same_ring(y)
    N = min(x.trunc_order + y.min_exp, y.trunc_order + x.min_exp)
    lo = x.min_exp + y.min_exp
    width = N - lo + 1
    if width <= 0 or not x.coeffs or not y.coeffs:
        return TruncatedSeries.zero(N, x.ring)
    ynz = [(j, b) for j, b in enumerate(y.coeffs[:width]) if b]
    out = [0] * width
    for i, a in enumerate(x.coeffs[:width]):
        if not a:
            continue
        lim = width - i
        for j, b in ynz:
            if j >= lim:
                break
            out[i + j] += a * b
    return TruncatedSeries(x.ring, lo, N, out)


def ts_invert(x: TruncatedSeries) -> TruncatedSeries:
    if not x.coeffs:
        raise SingularSeries("singular series: no known nonzero coefficient")
    ring = x.ring
    a = x.coeffs
    L = len(a)
    inv0 = ring.inv(a[0])
    anz = [(i, c) for i, c in enumerate(a) if c and i > 0]
    b = [ring.zero] * L
    b[0] = inv0
    neg_inv0 = -inv0
    for n in range(1, L):
        s = 0
        for i, c in anz:
            if i > n:
                break
            t = b[n - i]
            if t:
                s += c * t
        if s:
            b[n] = neg_inv0 * s
    return TruncatedSeries(ring, -x.min_exp, x.trunc_order - 2 * x.min_exp, b)


def ts_scale_exponents(x: TruncatedSeries, t: int) -> TruncatedSeries:
    """Substitute q -> q^t."""
    if t < 1:
        raise ValueError("t must be a positive integer")
    if t == 1:
        return x
    N = _check_exp(t * x.trunc_order + (t - 1))
    if not x.coeffs:
        return TruncatedSeries.zero(N, x.ring)
    out = [x.ring.zero] * ((len(x.coeffs) - 1) * t + 1)
    for i, c in enumerate(x.coeffs):
        out[i * t] = c
    return TruncatedSeries(x.ring, t * x.min_exp, N, out)


def ts_component(x: TruncatedSeries, m: int, r: int) -> TruncatedSeries:
    """Keep only the exponents congruent to r mod m."""
    if m < 1:
        raise ValueError("modulus must be positive")
    if not 0 <= r < m:
        raise ValueError(f"residue {r} out of range for modulus {m}")
    zero = x.ring.zero
    out = [c if (x.min_exp + i) % m == r else zero for i, c in enumerate(x.coeffs)]
    return TruncatedSeries(x.ring, x.min_exp, x.trunc_order, out)


@dataclass(frozen=True)
class Comparison:
    equal: bool
    exponent: int | None = None
    left: Any = None
    right: Any = None

    def __bool__(self):
        return self.equal


def ts_equal_to_order(x: TruncatedSeries, y: TruncatedSeries, N: int) -> Comparison:
    x._same_ring(y)
    for s, name in ((x, "left"), (y, "right")):
        if s.trunc_order < N:
            raise InsufficientPrecision(f"{name} series known only to q^{s.trunc_order}, need q^{N}")
    lo = min(x.min_exp, y.min_exp)
    for k in range(lo, N + 1):
        a, b = x[k], y[k]
        if a != b:
            return Comparison(False, k, a, b)
    return Comparison(True)
