"""Independent reference computations: plain Fraction lists, no package code."""

from fractions import Fraction
from math import isqrt


def poly_mul(a, b, N):
    out = [Fraction(0)] * (N + 1)
    for i, x in enumerate(a[: N + 1]):
        if x:
            for j, y in enumerate(b[: N + 1 - i]):
                out[i + j] += x * y
    return out


def binom_factor(c, e, N):
    """1 - c q^e as a coefficient list, e >= 0."""
    p = [Fraction(0)] * (N + 1)
    p[0] += 1
    if e <= N:
        p[e] -= Fraction(c)
    return p


def geometric_inverse(c, e, N):
    """1/(1 - c q^e), e >= 1."""
    p = [Fraction(0)] * (N + 1)
    k = 0
    while k * e <= N:
        p[k * e] = Fraction(c) ** k
        k += 1
    return p


def naive_product(num, den, N):
    """prod (1 - c q^e) over num / prod over den, factors given as (c, e) with e >= 1 (or e = 0, c != 1 for num)."""
    out = [Fraction(1)] + [Fraction(0)] * N
    for c, e in num:
        out = poly_mul(out, binom_factor(c, e, N), N)
    for c, e in den:
        out = poly_mul(out, geometric_inverse(c, e, N), N)
    return out


def poch_factors(c, e, t, N):
    """Factors (c, e + t n) of (c q^e; q^t)_inf that matter below q^(N+1)."""
    out = []
    n = 0
    while e + t * n <= N:
        out.append((c, e + t * n))
        n += 1
    return out


def eta_series(N):
    """(q;q)_inf by Euler's pentagonal theorem."""
    out = [0] * (N + 1)
    k = 0
    while True:
        hit = False
        for kk in ((k,) if k == 0 else (k, -k)):
            g = kk * (3 * kk - 1) // 2
            if g <= N:
                out[g] += (-1) ** abs(kk)
                hit = True
        if not hit and k > 0:
            break
        k += 1
    return out


def divisor_counts(N):
    return [0] + [sum(1 for d in range(1, n + 1) if n % d == 0) for n in range(1, N + 1)]


def borwein_counts(N):
    out = [0] * (N + 1)
    r = isqrt(4 * N) + 2
    for m in range(-r, r + 1):
        for n in range(-r, r + 1):
            k = m * m + m * n + n * n
            if k <= N:
                out[k] += 1
    return out


def rat_poly_divmod(a, b):
    """Polynomials as coefficient lists, lowest degree first."""
    a = [Fraction(x) for x in a]
    b = [Fraction(x) for x in b]
    while b and b[-1] == 0:
        b.pop()
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) < len(b):
            break
        f = a[-1] / b[-1]
        s = len(a) - len(b)
        q[s] = f
        for i, y in enumerate(b):
            a[s + i] -= f * y
        a.pop()
    return q, a
