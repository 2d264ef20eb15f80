"""Unilateral q-sums as truncated series.

Every evaluator works in base ``Q = q^t``; parameters are monomials in q.
Results are exact to at least the requested order N (a working order is
raised and the sum recomputed when Laurent factors eat precision).
"""

from __future__ import annotations

from .exact_coefficients import QQ
from .product_algebra import QMonomial, eval_product_expr, product
from .qseries_core import SeriesError, SingularSeries, TruncatedSeries

__all__ = [
    "NonConvergentSum",
    "eval_qsum",
    "lambert_unilateral",
    "lambert_class",
    "lambert_combo",
    "BaileyPair",
    "unit_bailey_pair",
    "unit_wp_pair",
    "pair_from_beta",
    "check_pair",
    "h1", "h2", "h3", "h4", "h5", "h6",
    "h5eq_summand", "h6eq_summand",
    "g1", "g2", "g3", "g4",
    "f1", "f2", "f3", "f2eq_summand",
    "fine_F1", "fine_F2", "fine_F3",
    "rf_lhs", "rf1_rhs", "rf2_rhs",
]

MAX_TERMS = 100_000
MAX_RETRIES = 8


class NonConvergentSum(SeriesError):
    pass


def eval_qsum(term, order_floor, N: int, start: int = 1, ring=QQ, max_terms: int = MAX_TERMS) -> TruncatedSeries:
    """Sum ``term(n)`` for n >= start, stopping at the first n whose floor exceeds N."""
    total = TruncatedSeries.zero(N, ring)
    n = start
    while order_floor(n) <= N:
        if n - start >= max_terms:
            raise NonConvergentSum(f"non-convergent formal sum: order floor still <= {N} after {max_terms} terms")
        total = total + term(n)
        n += 1
    return total


def _retry(build, N: int) -> TruncatedSeries:
    W = N
    for _ in range(MAX_RETRIES):
        s = build(W)
        if s.trunc_order >= N:
            return s.truncate(N)
        W += max(N - s.trunc_order, 1)
    raise SeriesError(f"working order could not reach {N}")


def _drop(x: QMonomial, t: int, j0: int, j1: int | None = None) -> int:
    """Total lowering of the minimal exponent by the factors 1 - x Q^j, j0 <= j (<= j1)."""
    if not x.c:
        return 0
    tot, j = 0, j0
    while (j1 is None or j <= j1) and x.e + t * j < 0:
        tot += x.e + t * j
        j += 1
    return tot


def _need_positive(d: int, what: str):
    if d <= 0:
        raise NonConvergentSum(f"non-convergent formal sum: {what} has q-exponent {d} <= 0")


class _Running:
    """A running product of binomials 1 - c q^E at a working order."""

    def __init__(self, W, ring):
        self.s = TruncatedSeries.one(W, ring)

    def mul(self, x: QMonomial, E0: int):
        self.s = self.s.mul_binomial(x.c, x.e + E0)

    def div(self, x: QMonomial, E0: int):
        if x.c == 1 and x.e + E0 == 0:
            raise SingularSeries("division by the zero factor (1 - 1)")
        self.s = self.s.div_binomial(x.c, x.e + E0)

    def trim(self, order: int):
        if self.s.min_exp <= order < self.s.trunc_order:
            self.s = self.s.truncate(order)


def _term(s: TruncatedSeries, c, e: int) -> TruncatedSeries:
    return s.mul_monomial(c, e)


# ---------------------------------------------------------------------------
# Lambert series


def _geom_into(acc: dict, sign, x_c, E: int, N: int, ring):
    """Add sign * X/(1-X), X = x_c q^E, into acc up to q^N."""
    if E > 0:
        p = ring(x_c)
        c = p
        k = E
        while k <= N:
            acc[k] = acc.get(k, 0) + sign * c
            c = c * p
            k += E
    elif E == 0:
        if x_c == 1:
            raise SingularSeries("Lambert term 1/(1 - 1)")
        acc[0] = acc.get(0, 0) + sign * ring(x_c) * ring.inv(1 - ring(x_c))
    else:
        # X/(1-X) = -1/(1 - X^-1)
        inv = ring.inv(ring(x_c))
        c = ring(1)
        k = 0
        while k <= N:
            acc[k] = acc.get(k, 0) - sign * c
            c = c * inv
            k -= E


def lambert_combo(terms, N: int, t: int = 1, m: int = 1, cls: int = 0, ring=QQ) -> TruncatedSeries:
    """sum_(n>=1, n = cls mod m) sum_(sign, x) sign * x Q^n / (1 - x Q^n)."""
    acc: dict = {}
    for sign, x in terms:
        if not x.c:
            continue
        n = cls % m or m
        while x.e + t * n <= N:
            _geom_into(acc, sign, x.c, x.e + t * n, N, ring)
            n += m
    return TruncatedSeries.from_dict(acc, N, ring)


def lambert_unilateral(a: QMonomial, N: int, t: int = 1, ring=QQ) -> TruncatedSeries:
    """h_1: sum_(n>=1) a Q^n / (1 - a Q^n)."""
    return lambert_combo([(1, a)], N, t, ring=ring)


def lambert_class(a: QMonomial, N: int, t: int, m: int, cls: int, ring=QQ) -> TruncatedSeries:
    return lambert_combo([(1, a)], N, t, m, cls, ring)


h1 = lambert_unilateral


# ---------------------------------------------------------------------------
# Bailey pairs


class BaileyPair:
    """Sequences (alpha_n, beta_n) as functions ``(n, a, N, t=1, k=None, ring=QQ)``.

    ``k=None`` means an ordinary Bailey pair (k = 0 in the WP relation).
    ``floor(n, a, t, k)`` must bound the q-order of alpha_n and beta_n from
    below; the default 0 suits pairs without Laurent terms.
    """

    def __init__(self, alpha, beta, floor=None, name="pair"):
        self._alpha = alpha
        self._beta = beta
        self._floor = floor
        self.name = name

    def alpha(self, n, a, N, t=1, k=None, ring=QQ):
        return self._alpha(n, a, N, t=t, k=k, ring=ring)

    def beta(self, n, a, N, t=1, k=None, ring=QQ):
        return self._beta(n, a, N, t=t, k=k, ring=ring)

    def floor(self, n, a, t=1, k=None) -> int:
        return 0 if self._floor is None else self._floor(n, a, t, k)


def _delta(n, a, N, t=1, k=None, ring=QQ):
    return TruncatedSeries.one(N, ring) if n == 0 else TruncatedSeries.zero(N, ring)


def _unit_alpha(n, a, N, t=1, k=None, ring=QQ):
    if a.c == 1 and a.e == 0:
        raise SingularSeries("unit Bailey pair needs a != 1")
    if n == 0:
        return TruncatedSeries.one(N, ring)

    def build(W):
        # (1 - a Q^2n)/(1 - a) (a;Q)_n = (1 - a Q^2n) (aQ;Q)_(n-1)
        r = _Running(W, ring)
        r.mul(a, 2 * t * n)
        for j in range(1, n):
            r.mul(a, t * j)
        for j in range(1, n + 1):
            r.div(QMonomial(1, 0), t * j)
        return _term(r.s, (-1) ** n, t * n * (n - 1) // 2)

    return _retry(build, N)


def _unit_floor(n, a, t, k):
    if n == 0:
        return 0
    return t * n * (n - 1) // 2 + _drop(a, t, 1, n - 1) + min(0, a.e + 2 * t * n)


def unit_bailey_pair() -> BaileyPair:
    """alpha_n = (1 - a Q^2n)/(1 - a) (a;Q)_n/(Q;Q)_n (-1)^n Q^(n(n-1)/2), beta_n = [n = 0]."""
    return BaileyPair(_unit_alpha, _delta, _unit_floor, name="unit")


def _unit_wp_alpha(n, a, N, t=1, k=None, ring=QQ):
    if n == 0:
        return TruncatedSeries.one(N, ring)
    k = k if k is not None else QMonomial(0, 0)
    ak = a / k if k.c else None

    def build(W):
        # (1 - a Q^2n)(aQ;Q)_(n-1)(a/k;Q)_n / ((Q;Q)_n (Qk;Q)_n) (k/a)^n
        r = _Running(W, ring)
        r.mul(a, 2 * t * n)
        for j in range(1, n):
            r.mul(a, t * j)
        for j in range(n):
            r.mul(ak, t * j)
        for j in range(1, n + 1):
            r.div(QMonomial(1, 0), t * j)
            r.div(k, t * j)
        ka = (k / a) ** n
        return _term(r.s, ka.c, ka.e)

    return _retry(build, N)


def _unit_wp_floor(n, a, t, k):
    if n == 0:
        return 0
    ak = a / k
    return n * (k.e - a.e) + _drop(ak, t, 0, n - 1) + _drop(a, t, 1, n - 1) + min(0, a.e + 2 * t * n)


def unit_wp_pair() -> BaileyPair:
    """The WP analogue of the unit pair; requires k != 0."""
    return BaileyPair(_unit_wp_alpha, _delta, _unit_wp_floor, name="unit-wp")


def _wp_coeff(n, j, a, k, t, W, ring):
    """(k/a;Q)_(n-j) (k;Q)_(n+j) / ((Q;Q)_(n-j) (aQ;Q)_(n+j))."""
    r = _Running(W, ring)
    if k is not None and k.c:
        ka = k / a
        for i in range(n - j):
            r.mul(ka, t * i)
        for i in range(n + j):
            r.mul(k, t * i)
    for i in range(1, n - j + 1):
        r.div(QMonomial(1, 0), t * i)
    for i in range(1, n + j + 1):
        r.div(a, t * i)
    return r.s


def _grid(W: int) -> int:
    """Round a working order up to 32 * 1.5^k so solved sequences are reused."""
    g = 32
    while g < W:
        g += g // 2
    return g


def pair_from_beta(beta, floor=None, name="solved") -> BaileyPair:
    """Solve the triangular WP relation for alpha given a beta sequence.

    The whole sequence alpha_0..alpha_n is solved at one working order, so
    Laurent coefficients never meet an already-truncated alpha_j.  Pass
    ``floor`` when alpha_n can have negative q-exponents.
    """
    cache: dict = {}

    def solve(i, a, W, t, k, ring):
        seq = cache.setdefault((a, t, k, W, ring.name), [])
        while len(seq) <= i:
            n = len(seq)
            acc = beta(n, a, W, t=t, k=k, ring=ring)
            for j in range(n):
                acc = acc - _wp_coeff(n, j, a, k, t, W, ring) * seq[j]
            seq.append(acc / _wp_coeff(n, n, a, k, t, W, ring))
        return seq[i]

    def alpha(n, a, N, t=1, k=None, ring=QQ):
        W = _grid(N)
        for _ in range(MAX_RETRIES):
            s = solve(n, a, W, t, k, ring)
            if s.trunc_order >= N:
                return s.truncate(N)
            W = _grid(W + N - s.trunc_order)
        raise SeriesError(f"working order could not reach {N}")

    return BaileyPair(alpha, beta, floor, name=name)


def check_pair(pair: BaileyPair, a: QMonomial, N: int, t: int = 1, k=None, n_check: int = 8, ring=QQ) -> list:
    """Indices n <= n_check where the WP relation fails to order N."""
    bad = []
    for n in range(n_check + 1):
        lhs = pair.beta(n, a, N, t=t, k=k, ring=ring)

        def build(W, n=n):
            acc = TruncatedSeries.zero(W, ring)
            for j in range(n + 1):
                acc = acc + _wp_coeff(n, j, a, k, t, W, ring) * pair.alpha(j, a, W, t=t, k=k, ring=ring)
            return acc

        if not (lhs - _retry(build, N)).truncate(N).is_zero():
            bad.append(n)
    return bad


# ---------------------------------------------------------------------------
# the h family


def h2(a: QMonomial, N: int, t: int = 1, ring=QQ):
    """-sum Q^(n(n+1)/2) (-a)^n / ((Qa;Q)_n (1 - Q^n))."""
    def build(W):
        r = _Running(W, ring)

        def term(n):
            r.div(a, t * n)
            s = r.s.div_binomial(1, t * n)
            return _term(s, -((-a.c) ** n), t * n * (n + 1) // 2 + n * a.e)

        def floor(n):
            return t * n * (n + 1) // 2 + n * a.e

        return eval_qsum(term, floor, W, ring=ring)

    return _retry(build, N)


def _pair_sum_h(a, pair, N, t, ring, which):
    def build(W):
        qq = _Running(W, ring)  # (Q;Q)_(n-1)
        den = _Running(W, ring)  # (Qa;Q)_n

        def term(n):
            if n > 1:
                qq.mul(QMonomial(1, 0), t * (n - 1))
            e = t * n * (n + 1) // 2 + n * a.e
            c = (-a.c) ** n
            if which == "beta":
                x = pair.beta(n, a, W - e, t=t, ring=ring)
                return -_term(qq.s * x, c, e)
            den.div(a, t * n)
            x = pair.alpha(n, a, W - e, t=t, ring=ring)
            return _term(qq.s * den.s * x, c, e)

        def floor(n):
            return t * n * (n + 1) // 2 + n * a.e + min(0, pair.floor(n, a, t))

        return eval_qsum(term, floor, W, ring=ring)

    return _retry(build, N)


def h3(a: QMonomial, N: int, pair: BaileyPair | None = None, t: int = 1, ring=QQ):
    pair = pair or unit_bailey_pair()
    return _pair_sum_h(a, pair, N, t, ring, "beta") + _pair_sum_h(a, pair, N, t, ring, "alpha")


def h4(a: QMonomial, N: int, t: int = 1, ring=QQ):
    """sum (1 - a Q^2n) Q^(n^2) a^n / ((1 - a Q^n)(1 - Q^n))."""

    def build(W):
        def term(n):
            s = TruncatedSeries.one(W, ring).mul_binomial(a.c, a.e + 2 * t * n)
            s = s.div_binomial(a.c, a.e + t * n).div_binomial(1, t * n)
            return _term(s, a.c**n, t * n * n + n * a.e)

        def floor(n):
            return t * n * n + n * a.e + min(0, a.e + 2 * t * n)

        return eval_qsum(term, floor, W, ring=ring)

    return _retry(build, N)


def _h5_inner(a, W, t, m, r, ring):
    """sum n (-a)^n Q^(m n(n-1)/2 + n r) / (Q^m;Q^m)_n."""
    run = _Running(W, ring)

    def term(n):
        run.div(QMonomial(1, 0), t * m * n)
        e = t * (m * n * (n - 1) // 2 + n * r) + n * a.e
        return _term(run.s, n * (-a.c) ** n, e)

    def floor(n):
        return t * (m * n * (n - 1) // 2 + n * r) + n * a.e

    return eval_qsum(term, floor, W, ring=ring)


def _h6_inner(a, W, t, m, r, ring):
    """sum n a^n Q^(n r) / (Q^m;Q^m)_n."""
    _need_positive(a.e + t * r, "a Q^r")
    run = _Running(W, ring)

    def term(n):
        run.div(QMonomial(1, 0), t * m * n)
        return _term(run.s, n * a.c**n, n * (t * r + a.e))

    return eval_qsum(term, lambda n: n * (t * r + a.e), W, ring=ring)


def _poch_series(x: QMonomial, base: int, W: int, ring, power: int):
    p = product([x], [], base=base) if power > 0 else product([], [x], base=base)
    return eval_product_expr(p, W, ring)


def h5eq_summand(a: QMonomial, N: int, m: int, r: int, t: int = 1, ring=QQ):
    """1/(a Q^r; Q^m)_inf * sum n (-a)^n Q^(m n(n-1)/2 + n r)/(Q^m;Q^m)_n."""
    return _retry(lambda W: _h5_inner(a, W, t, m, r, ring) * _poch_series(a.shift(t * r), t * m, W, ring, -1), N)


def h6eq_summand(a: QMonomial, N: int, m: int, r: int, t: int = 1, ring=QQ):
    """(a Q^r; Q^m)_inf * sum n a^n Q^(n r)/(Q^m;Q^m)_n."""
    return _retry(lambda W: _h6_inner(a, W, t, m, r, ring) * _poch_series(a.shift(t * r), t * m, W, ring, 1), N)


def h5(a: QMonomial, N: int, t: int = 1, ring=QQ):
    return -h5eq_summand(a, N, 1, 1, t, ring)


def h6(a: QMonomial, N: int, t: int = 1, ring=QQ):
    return h6eq_summand(a, N, 1, 1, t, ring)


# ---------------------------------------------------------------------------
# the g family


def g1(a: QMonomial, z: QMonomial, N: int, t: int = 1, ring=QQ):
    return lambert_combo([(1, a / z), (-1, a)], N, t, ring=ring)


def g2(a: QMonomial, z: QMonomial, N: int, t: int = 1, ring=QQ):
    """sum (z;Q)_n / ((Qa;Q)_n (1 - Q^n)) (Qa/z)^n."""
    d = t + a.e - z.e
    _need_positive(d, "Qa/z")
    x = a / z

    def build(W):
        r = _Running(W, ring)

        def term(n):
            r.mul(z, t * (n - 1))
            r.div(a, t * n)
            s = r.s.div_binomial(1, t * n)
            r.trim(W - n * d - _drop(z, t, 0))
            return _term(s, x.c**n, n * d)

        return eval_qsum(term, lambda n: n * d + _drop(z, t, 0), W, ring=ring)

    return _retry(build, N)


def g3(a: QMonomial, z: QMonomial, N: int, pair: BaileyPair | None = None, t: int = 1, ring=QQ):
    """Bailey-pair form; the unit pair gives g_4."""
    pair = pair or unit_bailey_pair()
    d = t + a.e - z.e
    _need_positive(d, "Qa/z")
    x = a / z

    def build(W):
        num = _Running(W, ring)  # (z;Q)_n (Q;Q)_(n-1)
        den = _Running(W, ring)  # 1/(Qa, Qa/z;Q)_n
        fl = _drop(z, t, 0)

        def term(n):
            num.mul(z, t * (n - 1))
            if n > 1:
                num.mul(QMonomial(1, 0), t * (n - 1))
            den.div(a, t * n)
            den.div(x, t * n)
            rel = W - n * d
            b = pair.beta(n, a, rel - fl, t=t, ring=ring)
            al = pair.alpha(n, a, rel - fl, t=t, ring=ring)
            s = num.s * (b - den.s * al)
            return _term(s, x.c**n, n * d)

        return eval_qsum(term, lambda n: n * d + fl + min(0, pair.floor(n, a, t)), W, ring=ring)

    return _retry(build, N)


def g4(a: QMonomial, z: QMonomial, N: int, t: int = 1, ring=QQ):
    """-sum (1 - a Q^2n)(z;Q)_n Q^(n(n+1)/2) / ((1 - a Q^n)(Qa/z;Q)_n (1 - Q^n)) (-a/z)^n."""
    x = a / z
    fl0 = _drop(z, t, 0)

    def floor(n):
        return t * n * (n + 1) // 2 + n * x.e + fl0 + min(0, a.e + 2 * t * n)

    def build(W):
        r = _Running(W, ring)

        def term(n):
            r.mul(z, t * (n - 1))
            r.div(x, t * n)
            s = r.s.mul_binomial(a.c, a.e + 2 * t * n).div_binomial(a.c, a.e + t * n).div_binomial(1, t * n)
            return _term(s, -((-x.c) ** n), t * n * (n + 1) // 2 + n * x.e)

        return eval_qsum(term, floor, W, ring=ring)

    return _retry(build, N)


# ---------------------------------------------------------------------------
# the f family (WP-Bailey)


def f1(a: QMonomial, k: QMonomial, z: QMonomial, N: int, t: int = 1, ring=QQ):
    return lambert_combo([(1, k), (1, a / z), (-1, a), (-1, k / z)], N, t, ring=ring)


def f2eq_summand(a, k, z, N: int, m: int, r: int, t: int = 1, ring=QQ):
    """The r-th inner sum of the m-fold split of f_2, r = 1..m."""
    az = a / z
    d = t * r + az.e
    _need_positive(d, "Q^r a/z")
    ka = k / a
    kz = k / z
    M = t * m
    fl0 = _drop(z, M, 0) + _drop(ka, M, 0)

    def floor(n):
        return n * d + fl0 + min(0, k.e + M * (2 * n - 1) + t * r)

    def build(W):
        run = _Running(W, ring)

        def term(n):
            run.mul(z, M * (n - 1))
            run.mul(ka, M * (n - 1))
            run.div(a, t * r + M * (n - 1))
            run.div(kz, t * r + M * (n - 1))
            s = run.s.mul_binomial(k.c, k.e + M * (2 * n - 1) + t * r)
            s = s.div_binomial(k.c, k.e + M * (n - 1) + t * r).div_binomial(1, M * n)
            return _term(s, az.c**n, n * d)

        return eval_qsum(term, floor, W, ring=ring)

    return _retry(build, N)


def f2(a, k, z, N: int, t: int = 1, ring=QQ):
    """sum (1 - k Q^2n)(z, k/a;Q)_n / ((1 - k Q^n)(Qk/z, Qa;Q)_n (1 - Q^n)) (Qa/z)^n."""
    az = a / z
    d = t + az.e
    _need_positive(d, "Qa/z")
    ka, kz = k / a, k / z
    fl0 = _drop(z, t, 0) + _drop(ka, t, 0)

    def floor(n):
        return n * d + fl0 + min(0, k.e + 2 * t * n)

    def build(W):
        run = _Running(W, ring)

        def term(n):
            run.mul(z, t * (n - 1))
            run.mul(ka, t * (n - 1))
            run.div(kz, t * n)
            run.div(a, t * n)
            s = run.s.mul_binomial(k.c, k.e + 2 * t * n).div_binomial(k.c, k.e + t * n).div_binomial(1, t * n)
            return _term(s, az.c**n, n * d)

        return eval_qsum(term, floor, W, ring=ring)

    return _retry(build, N)


def f3(a, k, z, N: int, pair: BaileyPair, t: int = 1, ring=QQ):
    """WP-Bailey form; square roots of k cancel to (1 - k Q^2n)/(1 - k)."""
    az = a / z
    d = t + az.e
    _need_positive(d, "Qa/z")
    kz = k / z
    if k.c == 1 and k.e == 0:
        raise SingularSeries("f_3 needs k != 1")
    fl0 = _drop(z, t, 0)

    def floor(n):
        return n * d + fl0 + min(0, k.e + 2 * t * n) + min(0, pair.floor(n, a, t, k))

    def build(W):
        num = _Running(W, ring)  # (z;Q)_n (Q;Q)_(n-1)
        dk = _Running(W, ring)  # 1/((1-k)(Qk, Qk/z;Q)_n)
        dk.div(k, 0)
        da = _Running(W, ring)  # 1/(Qa, Qa/z;Q)_n

        def term(n):
            num.mul(z, t * (n - 1))
            if n > 1:
                num.mul(QMonomial(1, 0), t * (n - 1))
            dk.div(k, t * n)
            dk.div(kz, t * n)
            da.div(a, t * n)
            da.div(az, t * n)
            rel = W - n * d - fl0
            b = pair.beta(n, a, rel, t=t, k=k, ring=ring)
            al = pair.alpha(n, a, rel, t=t, k=k, ring=ring)
            left = dk.s.mul_binomial(k.c, k.e + 2 * t * n) * b
            return _term(num.s * (left - da.s * al), az.c**n, n * d)

        return eval_qsum(term, floor, W, ring=ring)

    return _retry(build, N)


# ---------------------------------------------------------------------------
# Fine's function and the Rogers-Fine identity


def fine_F1(al: QMonomial, tau: QMonomial, N: int, t: int = 1, ring=QQ, m: int = 1, cls: int = 0):
    """sum_(n>=0) tau^n / (1 - al Q^n), optionally only n = cls mod m."""
    _need_positive(tau.e, "tau")

    def build(W):
        def term(n):
            if n % m != cls % m:
                return TruncatedSeries.zero(W, ring)
            s = TruncatedSeries.one(W, ring).div_binomial(al.c, al.e + t * n)
            return _term(s, tau.c**n, n * tau.e)

        return eval_qsum(term, lambda n: n * tau.e, W, start=0, ring=ring)

    return _retry(build, N)


def fine_F2(al: QMonomial, tau: QMonomial, N: int, t: int = 1, ring=QQ):
    """sum_(n>=0) (1 - al tau Q^2n) al^n tau^n Q^(n^2) / ((1 - al Q^n)(1 - tau Q^n))."""
    at = al * tau

    def floor(n):
        return t * n * n + n * at.e + min(0, at.e + 2 * t * n)

    def build(W):
        def term(n):
            s = TruncatedSeries.one(W, ring).mul_binomial(at.c, at.e + 2 * t * n)
            s = s.div_binomial(al.c, al.e + t * n).div_binomial(tau.c, tau.e + t * n)
            return _term(s, at.c**n, t * n * n + n * at.e)

        return eval_qsum(term, floor, W, start=0, ring=ring)

    return _retry(build, N)


def fine_F3(al: QMonomial, tau: QMonomial, N: int, t: int = 1, ring=QQ):
    """sum_(n>=0) (Q;Q)_n (-al tau)^n Q^(n(n-1)/2) / ((al;Q)_(n+1) (tau;Q)_(n+1))."""
    at = al * tau

    def floor(n):
        return t * n * (n - 1) // 2 + n * at.e

    def build(W):
        r = _Running(W, ring)

        def term(n):
            if n:
                r.mul(QMonomial(1, 0), t * n)
            r.div(al, t * n)
            r.div(tau, t * n)
            return _term(r.s, (-at.c) ** n, floor(n))

        return eval_qsum(term, floor, W, start=0, ring=ring)

    return _retry(build, N)


def rf_lhs(al: QMonomial, be: QMonomial, tau: QMonomial, N: int, t: int = 1, ring=QQ):
    """sum_(n>=0) (al;Q)_n / (be;Q)_n tau^n."""
    _need_positive(tau.e, "tau")
    fl0 = _drop(al, t, 0)

    def build(W):
        r = _Running(W, ring)

        def term(n):
            if n:
                r.mul(al, t * (n - 1))
                r.div(be, t * (n - 1))
            return _term(r.s, tau.c**n, n * tau.e)

        return eval_qsum(term, lambda n: n * tau.e + fl0, W, start=0, ring=ring)

    return _retry(build, N)


def rf1_rhs(al: QMonomial, be: QMonomial, tau: QMonomial, N: int, t: int = 1, ring=QQ):
    """sum (1 - al tau Q^2n)(al, al tau Q/be;Q)_n be^n tau^n Q^(n^2-n) / ((be;Q)_n (tau;Q)_(n+1))."""
    at = al * tau
    x = (at / be).shift(t)
    bt = be * tau
    fl0 = _drop(al, t, 0) + _drop(x, t, 0)

    def floor(n):
        return t * (n * n - n) + n * bt.e + fl0 + min(0, at.e + 2 * t * n)

    def build(W):
        r = _Running(W, ring)

        def term(n):
            if n:
                r.mul(al, t * (n - 1))
                r.mul(x, t * (n - 1))
                r.div(be, t * (n - 1))
            r.div(tau, t * n)
            s = r.s.mul_binomial(at.c, at.e + 2 * t * n)
            return _term(s, bt.c**n, t * (n * n - n) + n * bt.e)

        return eval_qsum(term, floor, W, start=0, ring=ring)

    return _retry(build, N)


def rf2_rhs(al: QMonomial, be: QMonomial, tau: QMonomial, N: int, t: int = 1, ring=QQ):
    """sum (be/al;Q)_n (-al tau)^n Q^(n(n-1)/2) / ((be;Q)_n (tau;Q)_(n+1))."""
    at = al * tau
    ba = be / al
    fl0 = _drop(ba, t, 0)

    def floor(n):
        return t * n * (n - 1) // 2 + n * at.e + fl0

    def build(W):
        r = _Running(W, ring)

        def term(n):
            if n:
                r.mul(ba, t * (n - 1))
                r.div(be, t * (n - 1))
            r.div(tau, t * n)
            return _term(r.s, (-at.c) ** n, t * n * (n - 1) // 2 + n * at.e)

        return eval_qsum(term, floor, W, start=0, ring=ring)

    return _retry(build, N)
