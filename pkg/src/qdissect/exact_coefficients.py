"""Exact coefficient rings: the rationals and cyclotomic fields Q(w_m).

Rational values are kept as plain ``int`` when integral and as
``gmpy2.mpq`` otherwise; both are canonical (mpq reduces eagerly).  Keeping
integers native makes the long products over integer coefficients several
times faster than a uniform rational type would.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Integral, Rational as _Rational

from gmpy2 import mpq

__all__ = [
    "BigRational",
    "QQ",
    "RationalField",
    "CyclotomicField",
    "CyclotomicNumber",
    "ConductorMismatch",
    "to_rational",
    "rational_to_str",
    "rational_from_str",
    "euler_phi",
    "cyclotomic_polynomial",
    "cyc_embed",
    "cyc_root",
    "cyc_add",
    "cyc_sub",
    "cyc_mul",
    "cyc_inv",
]

#: Arbitrary precision rational; integral values may also appear as ``int``.
BigRational = mpq
_MPQ = type(mpq(1, 2))


class ConductorMismatch(ValueError):
    """Raised when cyclotomic numbers of different conductors are combined."""


def to_rational(x):
    """Canonicalise a rational value: ``int`` if integral, ``mpq`` otherwise."""
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        return rational_from_str(x)
    if isinstance(x, (_MPQ, Fraction, _Rational)):
        q = mpq(x.numerator, x.denominator) if not isinstance(x, _MPQ) else x
        if q.denominator == 1:
            return int(q.numerator)
        return q
    if isinstance(x, Integral):
        return int(x)
    raise TypeError(f"not an exact rational: {x!r}")


def rational_to_str(x) -> str:
    x = to_rational(x)
    if isinstance(x, int):
        return f"{x}/1"
    return f"{x.numerator}/{x.denominator}"


def rational_from_str(s: str):
    s = s.strip()
    if "/" in s:
        num, den = s.split("/")
        den = int(den)
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        return to_rational(mpq(int(num), den))
    return int(s)


def _rinv(x):
    if x == 1 or x == -1:
        return int(x)
    if not x:
        raise ZeroDivisionError("inverse of zero")
    return to_rational(mpq(1) / x)


@dataclass(frozen=True)
class RationalField:
    """The field Q with int/mpq elements."""

    name: str = "rational"

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def __call__(self, x):
        if isinstance(x, CyclotomicNumber):
            if x.m > 2 and any(x.coeffs[1:]):
                raise ConductorMismatch("cyclotomic value is not rational")
            return to_rational(x.coeffs[0])
        return to_rational(x)

    def inv(self, x):
        return _rinv(x)

    def to_json(self, x):
        return rational_to_str(x)

    def from_json(self, v):
        return rational_from_str(v)


QQ = RationalField()


# ---------------------------------------------------------------------------
# integer / rational polynomial helpers (coefficient lists, low degree first)


def _trim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _poly_divmod(a, b):
    """Division with remainder over Q; ``b`` must be nonzero."""
    a = _trim(a)
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lead_inv = _rinv(b[-1])
    quo = [0] * max(len(a) - len(b) + 1, 0)
    rem = list(a)
    for k in range(len(a) - len(b), -1, -1):
        c = rem[k + len(b) - 1]
        if c:
            c = to_rational(c * lead_inv)
            quo[k] = c
            for j, y in enumerate(b):
                rem[k + j] -= c * y
    return _trim(quo), _trim(rem[: len(b) - 1])


def euler_phi(m: int) -> int:
    if m < 1:
        raise ValueError("m must be positive")
    result, n, p = m, m, 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, constant term first."""
    if m < 1:
        raise ValueError("m must be positive")
    num = [-1] + [0] * (m - 1) + [1]
    den = [1]
    for d in range(1, m):
        if m % d == 0:
            den = _poly_mul(den, list(cyclotomic_polynomial(d)))
    quo, rem = _poly_divmod(num, den)
    assert not rem
    return tuple(int(c) for c in quo)


@lru_cache(maxsize=None)
def _reduction_table(m: int) -> tuple[tuple, ...]:
    """Row k holds the power-basis coordinates of w^k for k < 2*phi(m) - 1."""
    phi_poly = cyclotomic_polynomial(m)
    deg = len(phi_poly) - 1
    rows = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(max(2 * deg - 1, m, 1)):
        rows.append(tuple(cur))
        # multiply by w and reduce with the monic Phi_m
        top = cur[-1]
        nxt = [0] + cur[:-1]
        if top:
            nxt = [x - top * c for x, c in zip(nxt, phi_poly[:-1])]
        cur = nxt
    return tuple(rows)


class CyclotomicNumber:
    """Element of Q(w_m) in the power basis 1, w, ..., w^(phi(m)-1)."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs):
        deg = euler_phi(m)
        coeffs = [to_rational(c) for c in coeffs]
        if len(coeffs) > deg:
            coeffs = _reduce(m, coeffs)
        coeffs += [0] * (deg - len(coeffs))
        self.m = m
        self.coeffs = tuple(coeffs)

    # -- coercion --------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, CyclotomicNumber):
            if other.m != self.m:
                raise ConductorMismatch(f"conductor {self.m} vs {other.m}")
            return other
        try:
            r = to_rational(other)
        except TypeError:
            return None
        return CyclotomicNumber(self.m, [r])

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return CyclotomicNumber(self.m, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return CyclotomicNumber(self.m, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return CyclotomicNumber(self.m, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, CyclotomicNumber):
            if other.m != self.m:
                raise ConductorMismatch(f"conductor {self.m} vs {other.m}")
            prod = [0] * (2 * len(self.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a:
                    for j, b in enumerate(other.coeffs):
                        if b:
                            prod[i + j] += a * b
            return CyclotomicNumber(self.m, _reduce(self.m, prod))
        try:
            r = to_rational(other)
        except TypeError:
            return NotImplemented
        return CyclotomicNumber(self.m, [a * r for a in self.coeffs])

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = CyclotomicNumber(self.m, [1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        # extended Euclid: find u with u*x = 1 mod Phi_m
        r0, r1 = list(cyclotomic_polynomial(self.m)), _trim(self.coeffs)
        s0, s1 = [], [1]
        while len(r1) > 1:
            quo, rem = _poly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(quo, s1))
        c = _rinv(r1[0])
        return CyclotomicNumber(self.m, _reduce(self.m, [to_rational(x * c) for x in s1]))

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    # -- comparison ------------------------------------------------------
    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, CyclotomicNumber):
            return self.m == other.m and self.coeffs == other.coeffs
        try:
            r = to_rational(other)
        except TypeError:
            return NotImplemented
        return self.coeffs[0] == r and not any(self.coeffs[1:])

    def __hash__(self):
        if not any(self.coeffs[1:]):
            return hash(self.coeffs[0])
        return hash((self.m, self.coeffs))

    def to_complex(self):
        import cmath

        w = cmath.exp(2j * cmath.pi / self.m)
        return sum(complex(float(c)) * w**k for k, c in enumerate(self.coeffs))

    def __repr__(self):
        return f"CyclotomicNumber({self.m}, {[str(c) for c in self.coeffs]})"

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if k == 0 else f"({c})*w^{k}")
        return " + ".join(terms) if terms else "0"


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def _reduce(m: int, coeffs):
    deg = euler_phi(m)
    if len(coeffs) <= deg:
        return list(coeffs)
    table = _reduction_table(m)
    if len(coeffs) > len(table):
        # long inputs: fall back to polynomial remainder
        _, rem = _poly_divmod(coeffs, list(cyclotomic_polynomial(m)))
        return rem
    out = list(coeffs[:deg])
    for k in range(deg, len(coeffs)):
        c = coeffs[k]
        if c:
            for i, v in enumerate(table[k]):
                if v:
                    out[i] += c * v
    return out


@dataclass(frozen=True)
class CyclotomicField:
    """The field Q(w_m), w = exp(2 pi i / m)."""

    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("conductor must be positive")

    @property
    def name(self) -> str:
        return f"cyclotomic({self.m})"

    @property
    def degree(self) -> int:
        return euler_phi(self.m)

    @property
    def zero(self):
        return CyclotomicNumber(self.m, [0])

    @property
    def one(self):
        return CyclotomicNumber(self.m, [1])

    def __call__(self, x):
        if isinstance(x, CyclotomicNumber):
            if x.m != self.m:
                raise ConductorMismatch(f"conductor {x.m} in field of conductor {self.m}")
            return x
        return CyclotomicNumber(self.m, [to_rational(x)])

    def root(self, j: int) -> CyclotomicNumber:
        return cyc_root(self.m, j)

    def inv(self, x):
        return self(x).inverse()

    def to_json(self, x):
        return [rational_to_str(c) for c in self(x).coeffs]

    def from_json(self, v):
        return CyclotomicNumber(self.m, [rational_from_str(c) for c in v])


def cyc_embed(r, m: int) -> CyclotomicNumber:
    return CyclotomicNumber(m, [to_rational(r)])


def cyc_root(m: int, j: int) -> CyclotomicNumber:
    """w^j for the primitive m-th root of unity w."""
    j %= m
    if j < euler_phi(m):
        coeffs = [0] * euler_phi(m)
        coeffs[j] = 1
        return CyclotomicNumber(m, coeffs)
    return CyclotomicNumber(m, list(_reduction_table(m)[j]))


def cyc_add(x: CyclotomicNumber, y: CyclotomicNumber) -> CyclotomicNumber:
    return x + y


def cyc_sub(x: CyclotomicNumber, y: CyclotomicNumber) -> CyclotomicNumber:
    return x - y


def cyc_mul(x: CyclotomicNumber, y: CyclotomicNumber) -> CyclotomicNumber:
    return x * y


def cyc_inv(x: CyclotomicNumber) -> CyclotomicNumber:
    return x.inverse()


def ring_from_name(name: str):
    if name == "rational":
        return QQ
    if name.startswith("cyclotomic(") and name.endswith(")"):
        return CyclotomicField(int(name[len("cyclotomic("):-1]))
    raise ValueError(f"unknown ring {name!r}")


__all__.append("ring_from_name")
