"""Certified series summation helpers.

Everything here returns an :class:`HPReal` whose interval provably contains
the limit, using an explicit truncation bound per series shape:

* alternating series with decreasing terms -- first omitted term;
* positive series with term ratio < r < 1 -- geometric tail;
* completely monotone alternating series -- Chebyshev acceleration with the
  (3+sqrt(8))^-n bound;
* smooth positive tails -- Euler-Maclaurin with exact Bernoulli numbers and
  the standard remainder bound.

There is deliberately no "sum until digits stop changing" path.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable

from .errors import PrecisionError
from .exactmath import HPReal, hp_from_rational

Term = Fraction


def sum_alternating(terms: Iterable[Fraction], prec_bits: int, max_terms: int = 10**7) -> HPReal:
    """Sum of an alternating series with |terms| decreasing to 0.

    ``terms`` yields the signed terms; summation stops once the next term is
    below the target resolution and the tail is bounded by that term.
    """
    acc = HPReal.exact_zero(prec_bits + 16)
    cutoff = Fraction(1, 2 ** (prec_bits + 8))
    last = None
    for i, t in enumerate(terms):
        if i >= max_terms:
            raise PrecisionError("alternating series did not reach resolution")
        if last is not None and abs(t) > abs(last):
            raise PrecisionError("alternating series terms are not decreasing")
        if abs(t) < cutoff:
            return acc.widened(hp_from_rational(abs(t), 64)).normalized(prec_bits)
        acc = acc + hp_from_rational(t, prec_bits + 16)
        last = t
    raise PrecisionError("alternating series generator exhausted")


def sum_positive_geometric(
    terms: Iterable[Fraction], ratio_bound: Fraction, prec_bits: int, max_terms: int = 10**7
) -> HPReal:
    """Sum of a positive series whose term ratio is provably < ratio_bound < 1.

    Tail after stopping is bounded by next_term / (1 - ratio_bound).
    """
    if not 0 < ratio_bound < 1:
        raise ValueError("ratio_bound must be in (0,1)")
    factor = 1 / (1 - ratio_bound)
    acc = HPReal.exact_zero(prec_bits + 16)
    cutoff = Fraction(1, 2 ** (prec_bits + 8))
    for i, t in enumerate(terms):
        if i >= max_terms:
            raise PrecisionError("series did not reach resolution")
        if t < 0:
            raise ValueError("series term is negative")
        if t * factor < cutoff:
            return acc.widened(hp_from_rational(t * factor, 64)).normalized(prec_bits)
        acc = acc + hp_from_rational(t, prec_bits + 16)
    raise PrecisionError("series generator exhausted")


# ---------------------------------------------------------------------------
# arctan / atanh at reciprocal arguments
# ---------------------------------------------------------------------------


def arctan_recip(u: int, prec_bits: int) -> HPReal:
    """arctan(1/u) for integer u >= 2 (alternating Gregory series)."""

    def terms():
        power = u  # u^(2k+1)
        k = 0
        sign = 1
        while True:
            yield Fraction(sign, (2 * k + 1) * power)
            power *= u * u
            k += 1
            sign = -sign

    return sum_alternating(terms(), prec_bits)


def atanh_recip(u: int, prec_bits: int) -> HPReal:
    """atanh(1/u) = (1/2) log((u+1)/(u-1)) for integer u >= 2."""

    def terms():
        power = u
        k = 0
        while True:
            yield Fraction(1, (2 * k + 1) * power)
            power *= u * u
            k += 1

    return sum_positive_geometric(terms(), Fraction(1, u * u), prec_bits)


def log_rational(value: Fraction, prec_bits: int) -> HPReal:
    """log of a positive rational via atanh: log v = 2 atanh((v-1)/(v+1)).

    The argument is first range-reduced by powers of two so the atanh series
    ratio is at most 1/9.
    """
    value = Fraction(value)
    if value <= 0:
        raise ValueError("log of a nonpositive rational")
    k = 0
    while value >= 2:
        value /= 2
        k += 1
    while value < 1:
        value *= 2
        k -= 1
    ln2 = log2_const(prec_bits + 8)
    w = (value - 1) / (value + 1)  # in [0, 1/3)

    def terms():
        power = w
        j = 0
        while True:
            yield 2 * power / (2 * j + 1)
            power *= w * w
            j += 1

    if w == 0:
        body = HPReal.exact_zero(prec_bits)
    else:
        body = sum_positive_geometric(terms(), Fraction(1, 9), prec_bits + 8)
    return (body + k * ln2).normalized(prec_bits)


@lru_cache(maxsize=None)
def log2_const(prec_bits: int) -> HPReal:
    """log 2 = 2 atanh(1/3)."""
    return (2 * atanh_recip(3, prec_bits + 4)).normalized(prec_bits)


# ---------------------------------------------------------------------------
# Bernoulli numbers (tangent number triangle)
# ---------------------------------------------------------------------------


@lru_cache(maxsize=8)
def tangent_numbers(m: int) -> tuple:
    """(T_1, ..., T_m): tangent numbers via the integer triangle."""
    T = [0] * (m + 1)
    T[1] = 1
    for k in range(2, m + 1):
        T[k] = (k - 1) * T[k - 1]
    for k in range(2, m + 1):
        for j in range(k, m + 1):
            T[j] = (j - k) * T[j - 1] + (j - k + 2) * T[j]
    return tuple(T[1:])


def bernoulli_even(m: int) -> list:
    """[B_2, B_4, ..., B_2m] as exact Fractions."""
    T = tangent_numbers(m)
    out = []
    for n in range(1, m + 1):
        t = T[n - 1]
        val = Fraction(2 * n * t, (1 << (2 * n)) * ((1 << (2 * n)) - 1))
        out.append(val if n % 2 == 1 else -val)
    return out


# ---------------------------------------------------------------------------
# Euler-Maclaurin evaluation of sum_{k>=0} (k+a)^(-2)  (Hurwitz zeta at s=2)
# ---------------------------------------------------------------------------


def hurwitz_zeta2(a: Fraction, prec_bits: int) -> HPReal:
    """Certified sum_{k>=0} 1/(k+a)^2 for rational a > 0.

    Euler-Maclaurin with J correction terms from x = M:

        sum_{k>=M} f(k) = 1/(M+a) + f(M)/2 + sum_j B_2j (M+a)^(-2j-1) + R_J

    with |R_J| <= 4 (2J)! / ((2 pi)^(2J) (M+a)^(2J+1)), from the standard
    bound |R_J| <= 2 zeta(2J)/(2 pi)^(2J) * int_M |f^(2J)| and zeta <= 2.
    """
    a = Fraction(a)
    if a <= 0:
        raise ValueError("a must be positive")
    digits = int(prec_bits * 0.30103) + 6
    M = max(24, int(digits * 0.56) + 8)
    J = M
    wp = prec_bits + 48
    acc = HPReal.exact_zero(wp)
    for k in range(M):
        acc = acc + hp_from_rational(1 / (k + a) ** 2, wp)
    Ma = M + a
    acc = acc + hp_from_rational(1 / Ma + 1 / (2 * Ma**2), wp)
    inv2 = hp_from_rational(1 / Ma**2, wp)
    power = hp_from_rational(1 / Ma**3, wp)  # (M+a)^(-2j-1), j=1
    for B in bernoulli_even(J):
        acc = acc + hp_from_rational(B, wp) * power
        power = power * inv2
    # remainder bound, via floats on logs to avoid giant exact binomials
    import math

    log_rem = (
        math.lgamma(2 * J + 1)
        - 2 * J * math.log(2 * math.pi)
        - (2 * J + 1) * math.log(float(Ma))
    ) / math.log(2) + 2
    rem_bits = int(log_rem) + 2
    rem = HPReal(1, rem_bits, 0, 64)
    return acc.widened(rem).normalized(prec_bits)


# ---------------------------------------------------------------------------
# Alternating-series acceleration (Chebyshev method) for completely
# monotone terms
# ---------------------------------------------------------------------------


def sum_alternating_cm(term: Callable[[int], Fraction], prec_bits: int) -> HPReal:
    """sum_{k>=0} (-1)^k a_k for completely monotone a_k, accelerated.

    Uses the Chebyshev-polynomial scheme: with d = T_n(3) (so that
    d >= (3+sqrt 8)^n / 2), the estimate s/d satisfies
    |S - s/d| <= 4 a_0 / d.  Complete monotonicity of a_k is the caller's
    responsibility; it holds for products of 1/(k+c) powers.
    """
    a0 = abs(term(0))
    target = Fraction(1, 2 ** (prec_bits + 8))
    # need 4 a0 / d <= target
    import math

    need = math.log(float(4 * a0 / target) + 2) / math.log(3 + math.sqrt(8))
    n = int(need) + 3
    b = Fraction(-1)
    d = _cheb_d(n)
    c = Fraction(-d)
    s = HPReal.exact_zero(prec_bits + 32)
    for k in range(n):
        c = b - c
        s = s + hp_from_rational(c * term(k), prec_bits + 32)
        b = b * Fraction(2 * (k + n) * (k - n), (2 * k + 1) * (k + 1))
    est = s * hp_from_rational(Fraction(1, d), prec_bits + 32)
    return est.widened(hp_from_rational(4 * a0 / Fraction(d), 64)).normalized(prec_bits)


def _cheb_d(n: int) -> int:
    """d_n = ((3+sqrt8)^n + (3-sqrt8)^n)/2 = T_n(3), an integer."""
    a, b = 1, 3  # T_0(3), T_1(3)
    if n == 0:
        return 1
    for _ in range(n - 1):
        a, b = b, 6 * b - a
    return b


def sum_poly_decay(term: Callable[[int], Fraction], decay_deg: int, prec_bits: int,
                   alternating: bool, start: int = 1, max_terms: int = 200000) -> HPReal:
    """sum_{n>=start} term(n) with |term(n)| <= (decreasing) ~ C/n^decay_deg.

    For alternating input the tail is bounded by the first omitted term; for
    positive input by |t_N| * N / (decay_deg - 1) (integral comparison, valid
    once |term| is decreasing like n^-decay_deg).
    """
    if decay_deg < 2:
        raise ValueError("need decay degree >= 2")
    acc = HPReal.exact_zero(prec_bits + 16)
    cutoff = Fraction(1, 2 ** (prec_bits + 6))
    n = start
    while n < start + max_terms:
        t = term(n)
        if alternating:
            bound = abs(t)
        else:
            bound = abs(t) * n / (decay_deg - 1) * 2
        if bound < cutoff:
            return acc.widened(hp_from_rational(bound, 64)).normalized(prec_bits)
        acc = acc + hp_from_rational(t, prec_bits + 16)
        n += 1
    raise PrecisionError("series too slow for requested precision")
