"""Exact rational, polynomial, and fixed-point ball arithmetic.

Three layers live here:

* ``Rational`` -- an alias of :class:`fractions.Fraction` (always reduced,
  positive denominator), the scalar type of every exact computation.
* ``PolyQ`` / ``LinFactorForm`` -- dense univariate polynomials over the
  rationals, plus the factored form ``lead * prod (x + shift)^mult`` used by
  tail polynomials that are products of linear factors.
* ``HPReal`` -- binary fixed-point ball arithmetic: value ``man * 2^exp``
  with an error radius ``err`` in ulps of ``2^exp``.  Every operation
  produces an interval that contains the exact result of the operation on
  the input intervals, so a printed digit is a certified digit.

The polynomial text syntax accepted by :func:`parse_poly` is the one used
by the CLI and the family registry: integer or ``p/q`` literals, the
variable ``x``, operators ``+ - * ^`` and parentheses.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Sequence

from .errors import DivisionError, ParseError, PrecisionError

Rational = Fraction

__all__ = [
    "Rational",
    "PolyQ",
    "LinFactorForm",
    "HPReal",
    "hp_from_rational",
    "hp_from_int",
    "hp_sqrt",
    "hp_to_decimal",
    "parse_poly",
    "poly_x",
]


def as_rational(value) -> Fraction:
    """Coerce ints / strings / Fractions to a reduced Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational number")


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------


class PolyQ:
    """Dense polynomial with Fraction coefficients, ascending powers.

    The zero polynomial has an empty coefficient tuple and degree -1.
    Instances are immutable and hashable.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    # -- construction helpers ------------------------------------------------

    @staticmethod
    def const(c) -> "PolyQ":
        return PolyQ([as_rational(c)])

    @staticmethod
    def x() -> "PolyQ":
        return PolyQ([0, 1])

    # -- basic structure -----------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def __setattr__(self, *a):
        raise AttributeError("PolyQ is immutable")

    def __eq__(self, other):
        if isinstance(other, PolyQ):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == PolyQ.const(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    # -- ring operations -----------------------------------------------------

    def __add__(self, other) -> "PolyQ":
        other = _coerce_poly(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return PolyQ(out)

    __radd__ = __add__

    def __neg__(self) -> "PolyQ":
        return PolyQ([-c for c in self.coeffs])

    def __sub__(self, other) -> "PolyQ":
        return self + (-_coerce_poly(other))

    def __rsub__(self, other) -> "PolyQ":
        return _coerce_poly(other) + (-self)

    def __mul__(self, other) -> "PolyQ":
        other = _coerce_poly(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return PolyQ()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    if cb:
                        out[i + j] += ca * cb
        return PolyQ(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "PolyQ":
        if n < 0:
            raise ValueError("negative polynomial power")
        result = PolyQ.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, t):
        """Horner evaluation at a rational (or PolyQ, giving composition)."""
        if isinstance(t, PolyQ):
            acc = PolyQ()
            for c in reversed(self.coeffs):
                acc = acc * t + PolyQ.const(c)
            return acc
        t = as_rational(t)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def eval_int(self, n: int):
        """Integer/rational Horner; fast path used by root scans."""
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * n + c
        return acc

    def shift(self, j) -> "PolyQ":
        """Expanded composition P(x + j)."""
        j = as_rational(j)
        if j == 0:
            return self
        acc = PolyQ()
        xj = PolyQ([j, 1])
        for c in reversed(self.coeffs):
            acc = acc * xj + PolyQ.const(c)
        return acc

    def divmod(self, other: "PolyQ"):
        other = _coerce_poly(other)
        if other.is_zero():
            raise DivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        d = other.degree
        lead = other.lead
        if len(rem) - 1 < d:
            return PolyQ(), self
        quot = [Fraction(0)] * (len(rem) - d)
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i]
            if c:
                q = c / lead
                quot[i - d] = q
                for k, oc in enumerate(other.coeffs):
                    rem[i - d + k] -= q * oc
        return PolyQ(quot), PolyQ(rem)

    def exact_div(self, other: "PolyQ") -> "PolyQ":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise DivisionError(f"{other} does not divide {self} (remainder {r})")
        return q

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            c = as_rational(other)
            if c == 0:
                raise DivisionError("division by zero")
            return PolyQ([ci / c for ci in self.coeffs])
        return self.exact_div(_coerce_poly(other))

    def monic(self) -> "PolyQ":
        if self.is_zero():
            return self
        return self / self.lead

    def gcd(self, other: "PolyQ") -> "PolyQ":
        """Monic gcd over Q (gcd with 0 returns the other argument, monic)."""
        a, b = self, _coerce_poly(other)
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
            if not b.is_zero():
                b = b.monic()
        return a.monic() if not a.is_zero() else a

    def derivative(self) -> "PolyQ":
        return PolyQ([i * c for i, c in enumerate(self.coeffs)][1:])

    # -- content and roots -----------------------------------------------------

    def content(self) -> Fraction:
        """Positive rational c with self = c * (primitive integer polynomial)."""
        if self.is_zero():
            return Fraction(0)
        num = 0
        den = 1
        for c in self.coeffs:
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive(self) -> "PolyQ":
        c = self.content()
        if c == 0:
            return self
        return self / c

    def int_coeffs(self) -> list:
        if any(c.denominator != 1 for c in self.coeffs):
            raise ValueError("polynomial has non-integer coefficients")
        return [c.numerator for c in self.coeffs]

    def rational_roots(self, max_scan: int = 200000):
        """All rational roots with multiplicity, via bounded candidate scan.

        Candidate denominators are divisors of the leading coefficient of the
        primitive integer form; numerators are scanned inside the Cauchy root
        bound with a trailing-coefficient divisibility filter.  Raises
        ValueError when the scan range would exceed ``max_scan`` (callers
        treat that as "does not usefully factor").
        """
        if self.is_zero():
            raise ValueError("zero polynomial has every root")
        roots = []
        p = self.primitive()
        # strip powers of x
        k = 0
        while p.coeffs and p.coeffs[0] == 0:
            p = PolyQ(p.coeffs[1:])
            k += 1
        roots.extend([Fraction(0)] * k)
        while p.degree >= 1:
            ic = p.int_coeffs()
            lead = abs(ic[-1])
            trail = abs(ic[0])
            bound = 1 + max(abs(Fraction(c, ic[-1])) for c in ic)
            found = None
            for q in _small_divisors(lead):
                # integer roots of q^d p(x/q) <-> rational roots num/q of p
                nmax = int(bound * q) + 1
                if 2 * nmax > max_scan:
                    raise ValueError("root scan bound exceeded")
                for num in range(-nmax, nmax + 1):
                    if num == 0 or gcd(num, q) != 1:
                        continue
                    # p(num/q) = 0 requires num | trail (Gauss)
                    if trail % abs(num) != 0:
                        continue
                    cand = Fraction(num, q)
                    if p(cand) == 0:
                        found = cand
                        break
                if found is not None:
                    break
            if found is None:
                break
            mult = 0
            factor = PolyQ([-found, 1])
            while True:
                quo, rem = p.divmod(factor)
                if rem.is_zero():
                    p = quo
                    mult += 1
                else:
                    break
            roots.extend([found] * mult)
        return sorted(roots), p  # p is the rootless cofactor (constant iff split)

    def splits_linearly(self) -> bool:
        try:
            _, cofactor = self.rational_roots()
        except ValueError:
            return False
        return cofactor.degree <= 0

    # -- formatting ------------------------------------------------------------

    def __repr__(self):
        return f"PolyQ({self.to_text()!r})"

    def to_text(self, var: str = "x") -> str:
        """Expanded dense text, descending powers, e.g. ``2*x^2 - 2*x + 1``."""
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = _frac_text(mag)
            else:
                xpow = var if i == 1 else f"{var}^{i}"
                body = xpow if mag == 1 else f"{_frac_text(mag)}*{xpow}"
            parts.append((sign, body))
        sign0, body0 = parts[0]
        text = body0 if sign0 == "+" else f"-{body0}"
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


def _frac_text(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _coerce_poly(p) -> PolyQ:
    if isinstance(p, PolyQ):
        return p
    if isinstance(p, (int, Fraction)):
        return PolyQ.const(p)
    raise TypeError(f"cannot interpret {p!r} as a polynomial")


def _small_divisors(n: int):
    """Divisors of n in increasing order (n is a small leading coefficient)."""
    n = abs(n)
    out = [d for d in range(1, isqrt(n) + 1) if n % d == 0]
    big = [n // d for d in reversed(out) if d * d != n]
    return out + big


def poly_x() -> PolyQ:
    return PolyQ.x()


def poly_eval(p: PolyQ, t) -> Fraction:
    """Exact Horner evaluation P(t)."""
    return p(t)


def poly_gcd(p: PolyQ, q: PolyQ) -> PolyQ:
    return p.gcd(q)


class LinFactorForm:
    """Factored polynomial ``lead * prod (x + shift_i)^mult_i``.

    Shifts are kept sorted ascending; expanding must reproduce the dense
    polynomial exactly.
    """

    __slots__ = ("lead", "factors")

    def __init__(self, lead, factors: Sequence):
        self.lead = as_rational(lead)
        fs = sorted(((as_rational(s), int(m)) for s, m in factors), key=lambda f: f[0])
        merged = []
        for s, m in fs:
            if m <= 0:
                raise ValueError("factor multiplicity must be positive")
            if merged and merged[-1][0] == s:
                merged[-1] = (s, merged[-1][1] + m)
            else:
                merged.append((s, m))
        self.factors = tuple(merged)

    def expand(self) -> PolyQ:
        out = PolyQ.const(self.lead)
        for s, m in self.factors:
            out = out * PolyQ([s, 1]) ** m
        return out

    def degree(self) -> int:
        return sum(m for _, m in self.factors)

    def __repr__(self):
        inner = "".join(f"(x+{_frac_text(s)})^{m}" for s, m in self.factors)
        return f"LinFactorForm({_frac_text(self.lead)}, {inner})"


# ---------------------------------------------------------------------------
# Polynomial text parser
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([()+\-*/^]))")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ParseError(f"unexpected character {text[pos]!r}", pos)
            break
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", int(num), pos))
        elif name is not None:
            out.append(("name", name, pos))
        else:
            out.append(("op", op, pos))
        pos = m.end()
    out.append(("end", None, pos))
    return out


class _PolyParser:
    """Recursive descent over + - * / ^ ( ), ints, and symbols.

    Symbols other than the variable must appear in ``env`` with rational
    values; the variable stays symbolic.  ``/`` is rational division and the
    denominator must evaluate to a nonzero constant.
    """

    def __init__(self, tokens, env, var):
        self.toks = tokens
        self.i = 0
        self.env = env
        self.var = var

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def parse(self) -> PolyQ:
        p = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"trailing input {val!r}", pos)
        return p

    def expr(self) -> PolyQ:
        kind, val, _ = self.peek()
        negate = False
        if kind == "op" and val in "+-":
            self.next()
            negate = val == "-"
        p = self.term()
        if negate:
            p = -p
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                q = self.term()
                p = p - q if val == "-" else p + q
            else:
                return p

    def term(self) -> PolyQ:
        p = self.factor()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val == "*":
                self.next()
                p = p * self.factor()
            elif kind == "op" and val == "/":
                self.next()
                q = self.factor()
                if q.degree > 0:
                    raise ParseError("division by a non-constant polynomial", pos)
                if q.is_zero():
                    raise ParseError("division by zero", pos)
                p = p / q.coeffs[0]
            elif kind in ("num", "name") or (kind == "op" and val == "("):
                # implicit product, e.g. "2(x+1)" or "(x+1)(x+2)"
                p = p * self.factor()
            else:
                return p

    def factor(self) -> PolyQ:
        p = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.next()
            kind, val, pos = self.next()
            sign = 1
            if kind == "op" and val in "+-":
                sign = -1 if val == "-" else 1
                kind, val, pos = self.next()
            if kind != "num":
                raise ParseError("exponent must be a nonnegative integer", pos)
            if sign < 0:
                raise ParseError("negative exponent", pos)
            p = p ** val
        return p

    def atom(self) -> PolyQ:
        kind, val, pos = self.next()
        if kind == "num":
            return PolyQ.const(val)
        if kind == "name":
            if val == self.var:
                return PolyQ.x()
            if val in self.env:
                return PolyQ.const(as_rational(self.env[val]))
            raise ParseError(f"unknown symbol {val!r}", pos)
        if kind == "op" and val == "(":
            p = self.expr()
            kind, val, pos = self.next()
            if not (kind == "op" and val == ")"):
                raise ParseError("expected ')'", pos)
            return p
        if kind == "op" and val == "-":
            return -self.atom()
        if kind == "op" and val == "+":
            return self.atom()
        raise ParseError(f"unexpected token {val!r}", pos)


def parse_poly(text: str, env=None, var: str = "x") -> PolyQ:
    """Parse polynomial text into a PolyQ.

    ``env`` maps parameter names to rational values (family templates are
    instantiated by substituting parameters before expansion, so the result
    is always univariate in ``var``).
    """
    return _PolyParser(_tokenize(text), env or {}, var).parse()


# ---------------------------------------------------------------------------
# High-precision ball arithmetic
# ---------------------------------------------------------------------------

_NORM_SLACK = 32


class HPReal:
    """Fixed-point ball: value ``man * 2^exp`` with radius ``err * 2^exp``.

    ``prec`` is the working mantissa size in bits; results of arithmetic are
    renormalized to ``max(prec_a, prec_b)`` so precision never silently
    degrades below what was requested at construction.  ``err`` is a
    nonnegative integer in ulps and is propagated outward (conservatively)
    through every operation.
    """

    __slots__ = ("man", "exp", "err", "prec")

    def __init__(self, man: int, exp: int, err: int, prec: int):
        self.man = man
        self.exp = exp
        self.err = err
        self.prec = prec

    # -- construction ---------------------------------------------------------

    @staticmethod
    def from_rational(value, prec_bits: int) -> "HPReal":
        value = as_rational(value)
        num, den = value.numerator, value.denominator
        if num == 0:
            return HPReal(0, -prec_bits, 0, prec_bits)
        shift = prec_bits - (abs(num).bit_length() - den.bit_length())
        if shift >= 0:
            q, r = divmod(num << shift, den)
        else:
            q, r = divmod(num, den << -shift)
        return HPReal(q, -shift, 0 if r == 0 else 1, prec_bits)

    @staticmethod
    def from_int(n: int, prec_bits: int = 64) -> "HPReal":
        return HPReal(n, 0, 0, prec_bits)

    @staticmethod
    def exact_zero(prec_bits: int = 64) -> "HPReal":
        return HPReal(0, 0, 0, prec_bits)

    # -- structure ------------------------------------------------------------

    def normalized(self, prec=None) -> "HPReal":
        prec = prec or self.prec
        size = max(self.man.bit_length(), self.err.bit_length())
        excess = size - (prec + _NORM_SLACK)
        if excess <= 0:
            return HPReal(self.man, self.exp, self.err, prec)
        man = self.man >> excess
        err = (self.err >> excess) + 2  # dropped bits of man and err, one each
        return HPReal(man, self.exp + excess, err, prec)

    def bounds(self):
        """Exact rational (lo, hi) of the interval."""
        lo = Fraction(self.man - self.err)
        hi = Fraction(self.man + self.err)
        scale = Fraction(2) ** self.exp
        return lo * scale, hi * scale

    def mid(self) -> Fraction:
        return Fraction(self.man) * Fraction(2) ** self.exp

    def radius(self) -> Fraction:
        return Fraction(self.err) * Fraction(2) ** self.exp

    def contains(self, value) -> bool:
        lo, hi = self.bounds()
        value = as_rational(value)
        return lo <= value <= hi

    def overlaps(self, other: "HPReal") -> bool:
        lo1, hi1 = self.bounds()
        lo2, hi2 = other.bounds()
        return lo1 <= hi2 and lo2 <= hi1

    def is_positive(self) -> bool:
        return self.man - self.err > 0

    def is_negative(self) -> bool:
        return self.man + self.err < 0

    def sign_certain(self):
        """-1, 0 (only for exact zero), +1, or None when the ball straddles 0."""
        if self.is_positive():
            return 1
        if self.is_negative():
            return -1
        if self.man == 0 and self.err == 0:
            return 0
        return None

    def log2_abs(self) -> float:
        """Float log2 of |midpoint| (for rate fits; -inf at zero)."""
        if self.man == 0:
            return float("-inf")
        m = abs(self.man)
        bl = m.bit_length()
        top = m >> max(0, bl - 53)
        import math

        return math.log2(top) + max(0, bl - 53) + self.exp

    def accuracy_bits(self) -> int:
        """Certified bits: -log2 of the radius relative to 1 (absolute scale)."""
        if self.err == 0:
            return 10 ** 9
        return -(self.err.bit_length() + self.exp)

    def __float__(self):
        lo, hi = self.bounds()
        return float((lo + hi) / 2)

    def __repr__(self):
        try:
            s = hp_to_decimal(self, 12)
        except PrecisionError:
            s = f"~{float(self):.6g}"
        return f"HPReal({s}, err~2^{self.err.bit_length() + self.exp})"

    # -- arithmetic -------------------------------------------------------------

    def _align(self, other: "HPReal"):
        e = min(self.exp, other.exp)
        # cap the shift so a huge exponent gap cannot blow up the mantissas
        cap = max(self.prec, other.prec) + 4 * _NORM_SLACK
        gap = max(self.exp, other.exp) - e
        if gap > cap:
            e = max(self.exp, other.exp) - cap
        m1, e1 = _shift_to(self.man, self.err, self.exp, e)
        m2, e2 = _shift_to(other.man, other.err, other.exp, e)
        return m1, e1, m2, e2, e

    def __add__(self, other) -> "HPReal":
        other = _coerce_hp(other, self.prec)
        m1, e1, m2, e2, e = self._align(other)
        return HPReal(m1 + m2, e, e1 + e2, max(self.prec, other.prec)).normalized()

    __radd__ = __add__

    def __neg__(self) -> "HPReal":
        return HPReal(-self.man, self.exp, self.err, self.prec)

    def __sub__(self, other) -> "HPReal":
        return self + (-_coerce_hp(other, self.prec))

    def __rsub__(self, other) -> "HPReal":
        return _coerce_hp(other, self.prec) + (-self)

    def __mul__(self, other) -> "HPReal":
        other = _coerce_hp(other, self.prec)
        man = self.man * other.man
        err = (
            abs(self.man) * other.err
            + abs(other.man) * self.err
            + self.err * other.err
        )
        return HPReal(man, self.exp + other.exp, err, max(self.prec, other.prec)).normalized()

    __rmul__ = __mul__

    def __truediv__(self, other) -> "HPReal":
        other = _coerce_hp(other, self.prec)
        return hp_div(self, other)

    def __rtruediv__(self, other):
        return hp_div(_coerce_hp(other, self.prec), self)

    def abs(self) -> "HPReal":
        return HPReal(abs(self.man), self.exp, self.err, self.prec)

    def widened(self, extra: "HPReal") -> "HPReal":
        """Interval widened by |extra| (used for truncation estimates)."""
        mag = abs(extra.man) + extra.err
        m, e2 = _shift_to(mag, 0, extra.exp, self.exp)
        return HPReal(self.man, self.exp, self.err + m + e2 + 1, self.prec)


def _shift_to(man: int, err: int, exp: int, target_exp: int):
    """Represent (man +- err)*2^exp at exponent target_exp, conservatively."""
    d = exp - target_exp
    if d >= 0:
        return man << d, err << d
    man2 = man >> -d
    # floor shift of a signed mantissa loses < 1 ulp; widen err accordingly
    err2 = (err >> -d) + 2
    return man2, err2


def _coerce_hp(value, prec) -> HPReal:
    if isinstance(value, HPReal):
        return value
    if isinstance(value, (int, Fraction)):
        return HPReal.from_rational(value, prec)
    raise TypeError(f"cannot interpret {value!r} as HPReal")


def hp_from_rational(value, prec_bits: int) -> HPReal:
    return HPReal.from_rational(value, prec_bits)


def hp_from_int(n: int, prec_bits: int = 64) -> HPReal:
    return HPReal.from_int(n, prec_bits)


def hp_div(a: HPReal, b: HPReal) -> HPReal:
    """Ball division; the divisor interval must exclude zero."""
    if abs(b.man) <= b.err or b.man == 0:
        raise PrecisionError("division by an interval containing zero")
    prec = max(a.prec, b.prec)
    k = prec + _NORM_SLACK + max(0, b.man.bit_length() - abs(a.man).bit_length())
    q = (a.man << k) // b.man
    # |a/b - q*2^(ea-eb-k)| in ulps of 2^(ea-eb-k):
    #   from input radii: 2^k (e_a |m_b| + |m_a| e_b) / (|m_b| (|m_b| - e_b))
    #   plus 1 ulp of floor rounding
    mb = abs(b.man)
    num = (a.err * mb + abs(a.man) * b.err) << k
    den = mb * (mb - b.err)
    err = -(-num // den) + 1
    return HPReal(q, a.exp - b.exp - k, err, prec).normalized()


def hp_sqrt(x: HPReal) -> HPReal:
    """Certified square root of a nonnegative ball."""
    lo_m = x.man - x.err
    hi_m = x.man + x.err
    if hi_m < 0:
        raise PrecisionError("sqrt of a negative interval")
    lo_m = max(lo_m, 0)
    prec = x.prec
    # scale to even exponent with ~2*prec fractional bits
    shift = 2 * (prec + _NORM_SLACK)
    e = x.exp - shift
    if e % 2:
        shift += 1
        e -= 1
    lo = isqrt(lo_m << shift)
    hi_val = hi_m << shift
    hi = isqrt(hi_val)
    if hi * hi < hi_val:
        hi += 1
    man = (lo + hi) // 2
    err = hi - man + 1
    return HPReal(man, e // 2, err, prec).normalized()


def hp_sqrt_int(n: int, prec_bits: int) -> HPReal:
    return hp_sqrt(HPReal.from_int(n, prec_bits))


# ---------------------------------------------------------------------------
# Certified decimal output
# ---------------------------------------------------------------------------


def _round_sig_fraction(value: Fraction, digits: int):
    """(sign, digit string, decimal exponent) of value to `digits` sig. digits.

    Exponent is of the leading digit (scientific convention), round half to
    even.  Value must be nonzero.
    """
    sign = -1 if value < 0 else 1
    v = abs(value)
    # adjusted exponent e10: 10^e10 <= v < 10^(e10+1)
    e10 = _ilog10(v)
    # scaled = v / 10^(e10 - digits + 1), rounded to nearest integer
    shift = digits - 1 - e10
    num, den = v.numerator, v.denominator
    if shift >= 0:
        num *= 10 ** shift
    else:
        den *= 10 ** -shift
    q, r = divmod(num, den)
    if 2 * r > den or (2 * r == den and q % 2 == 1):
        q += 1
    if q == 10 ** digits:  # rounding overflowed into the next decade
        q //= 10
        e10 += 1
    return sign, str(q), e10


def _ilog10(v: Fraction) -> int:
    """floor(log10(v)) for v > 0, exact."""
    num, den = v.numerator, v.denominator
    # quick estimate from bit lengths, then correct
    est = int((num.bit_length() - den.bit_length()) * 0.30102999566398114)
    while v >= Fraction(10) ** (est + 1):
        est += 1
    while v < Fraction(10) ** est:
        est -= 1
    return est


def _format_fixed(sign: int, digits_str: str, e10: int) -> str:
    s = "-" if sign < 0 else ""
    n = len(digits_str)
    if 0 <= e10 < n:
        int_part = digits_str[: e10 + 1]
        frac_part = digits_str[e10 + 1 :]
        return s + int_part + ("." + frac_part if frac_part else "")
    if -6 <= e10 < 0:
        return s + "0." + "0" * (-e10 - 1) + digits_str
    # fall back to scientific for extreme magnitudes
    mant = digits_str[0] + ("." + digits_str[1:] if n > 1 else "")
    return f"{s}{mant}e{e10}"


def hp_to_decimal(x: HPReal, digits: int) -> str:
    """Decimal string with `digits` significant digits, all certified.

    Every printed digit is implied by the interval: the two endpoints must
    round to the same string.  Raises PrecisionError carrying the largest
    digit count that is certifiable.
    """
    if digits < 1:
        raise ValueError("digits must be >= 1")
    lo, hi = x.bounds()
    if lo <= 0 <= hi:
        if lo == hi == 0:
            return "0." + "0" * (digits - 1) if digits > 1 else "0"
        raise PrecisionError("interval straddles zero", max_digits=0)

    def render(d):
        a = _format_fixed(*_round_sig_fraction(lo, d))
        b = _format_fixed(*_round_sig_fraction(hi, d))
        return a if a == b else None

    out = render(digits)
    if out is not None:
        return out
    # binary search the largest certifiable count
    lo_d, hi_d = 0, digits
    while hi_d - lo_d > 1:
        mid = (lo_d + hi_d) // 2
        if render(mid) is not None:
            lo_d = mid
        else:
            hi_d = mid
    raise PrecisionError(
        f"only {lo_d} of {digits} requested digits are certified", max_digits=lo_d
    )
