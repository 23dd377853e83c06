"""Exact complex scalars of the form ``sum_k c_k * sqrt(s_k)``.

``c_k`` are Gaussian rationals and ``s_k`` positive integers.  This is the
smallest number system that contains the code vectors produced from rational
Tverberg weights (entries ``sqrt(d)``) while staying closed under the sums and
products needed to verify them.

Two terms are merged when their radicands agree up to a rational square, so a
value is zero exactly when it has no terms (square roots of integers whose
pairwise products are not squares are linearly independent over the
rationals).
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

ZERO = Fraction(0)
ONE = Fraction(1)


class ExactnessError(ArithmeticError):
    """Raised when an exact computation would leave the supported number system."""


def _is_square(k: int) -> int | None:
    r = math.isqrt(k)
    return r if r * r == k else None


class Surd:
    """Immutable exact scalar.  ``terms`` maps radicand -> (re, im)."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = terms or {}

    # ------------------------------------------------------------------ build
    @staticmethod
    def of(value, im=0) -> "Surd":
        if isinstance(value, Surd):
            return value
        if isinstance(value, complex):
            raise TypeError("floats are not exact; convert explicitly")
        re, im = Fraction(value), Fraction(im)
        if re == 0 and im == 0:
            return Surd()
        return Surd({1: (re, im)})

    @staticmethod
    def sqrt(q) -> "Surd":
        """Principal square root of a nonnegative rational."""
        q = Fraction(q)
        if q < 0:
            raise ValueError("sqrt of a negative rational")
        if q == 0:
            return Surd()
        num, den = q.numerator, q.denominator
        # sqrt(num/den) = sqrt(num*den)/den
        rd = _is_square(den)
        if rd is not None:
            k, coef = num, Fraction(1, rd)
        else:
            k, coef = num * den, Fraction(1, den)
        r = _is_square(k)
        if r is not None:
            return Surd({1: (coef * r, ZERO)})
        return Surd({k: (coef, ZERO)})

    # ------------------------------------------------------------- predicates
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_rational(self) -> bool:
        """True when the value lies in Q(i)."""
        return not self.terms or (len(self.terms) == 1 and 1 in self.terms)

    def is_real(self) -> bool:
        return all(im == 0 for _, im in self.terms.values())

    def rational(self) -> tuple[Fraction, Fraction]:
        """``(re, im)`` of a value in Q(i); raises otherwise."""
        if not self.terms:
            return ZERO, ZERO
        if not self.is_rational():
            raise ExactnessError(f"{self!r} is irrational")
        return self.terms[1]

    def fraction(self) -> Fraction:
        re, im = self.rational()
        if im != 0:
            raise ExactnessError(f"{self!r} is not real")
        return re

    # -------------------------------------------------------------- arithmetic
    def _combine(self, other: "Surd", sign: int) -> "Surd":
        out = dict(self.terms)
        for k, (re, im) in other.terms.items():
            if sign < 0:
                re, im = -re, -im
            if k in out:
                a, b = out[k]
                re, im = a + re, b + im
                if re == 0 and im == 0:
                    del out[k]
                else:
                    out[k] = (re, im)
            else:
                out[k] = (re, im)
        return Surd(_merge(out))

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self._combine(other, -1)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other._combine(self, -1)

    def __neg__(self):
        return Surd({k: (-a, -b) for k, (a, b) in self.terms.items()})

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return Surd()
        out: dict = {}
        for k1, (a1, b1) in self.terms.items():
            for k2, (a2, b2) in other.terms.items():
                re, im = a1 * a2 - b1 * b2, a1 * b2 + b1 * a2
                if k1 == k2:
                    k, re, im = 1, re * k1, im * k1
                elif k1 == 1 or k2 == 1:
                    k = k1 * k2
                else:
                    k = k1 * k2
                    g = math.gcd(k1, k2)
                    if g > 1:
                        # sqrt(k1 k2) = g sqrt(k1 k2 / g^2)
                        k //= g * g
                        re, im = re * g, im * g
                    r = _is_square(k)
                    if r is not None:
                        k, re, im = 1, re * r, im * r
                if k in out:
                    c, d = out[k]
                    out[k] = (c + re, d + im)
                else:
                    out[k] = (re, im)
        out = {k: v for k, v in out.items() if v[0] != 0 or v[1] != 0}
        return Surd(_merge(out))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            q = Fraction(other)
            return Surd({k: (a / q, b / q) for k, (a, b) in self.terms.items()})
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def inverse(self) -> "Surd":
        """Inverse of a single-term value ``c sqrt(k)`` -> ``conj(c) sqrt(k) / (|c|^2 k)``."""
        if len(self.terms) != 1:
            raise ExactnessError("only single-term surds are inverted")
        (k, (a, b)), = self.terms.items()
        norm = (a * a + b * b) * k
        return Surd({k: (a / norm, -b / norm)})

    def conjugate(self) -> "Surd":
        return Surd({k: (a, -b) for k, (a, b) in self.terms.items()})

    def abs2(self) -> "Surd":
        """``|x|^2`` (a real surd)."""
        return self * self.conjugate()

    def real(self) -> "Surd":
        return Surd({k: (a, ZERO) for k, (a, _) in self.terms.items() if a != 0})

    def imag(self) -> "Surd":
        return Surd({k: (b, ZERO) for k, (_, b) in self.terms.items() if b != 0})

    def sign(self) -> int:
        """Sign of a real surd, decided exactly."""
        if not self.terms:
            return 0
        if not self.is_real():
            raise ValueError("sign of a non-real surd")
        return _sign_real([(a, k) for k, (a, _) in self.terms.items()])

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        if self.is_rational():
            re, im = self.rational()
            return hash(re) if im == 0 else hash((re, im))
        return hash(frozenset(self.terms.items()))

    def __lt__(self, other):
        return (self - _coerce(other)).sign() < 0

    def __le__(self, other):
        return (self - _coerce(other)).sign() <= 0

    def __gt__(self, other):
        return (self - _coerce(other)).sign() > 0

    def __ge__(self, other):
        return (self - _coerce(other)).sign() >= 0

    # ------------------------------------------------------------- conversion
    def __complex__(self) -> complex:
        re = im = 0.0
        for k, (a, b) in self.terms.items():
            if a:
                re += _times_sqrt(a, k)
            if b:
                im += _times_sqrt(b, k)
        return complex(re, im)

    def __float__(self) -> float:
        z = complex(self)
        return z.real

    def __repr__(self):
        if not self.terms:
            return "Surd(0)"
        parts = []
        for k, (a, b) in sorted(self.terms.items()):
            c = str(a) if b == 0 else f"({a}{'+' if b >= 0 else '-'}{abs(b)}i)"
            parts.append(c if k == 1 else f"{c}*sqrt({k})")
        return "Surd(" + " + ".join(parts) + ")"


def _coerce(x):
    if isinstance(x, Surd):
        return x
    if isinstance(x, (int, Rational)):
        return Surd.of(x)
    return NotImplemented


def _merge(terms: dict) -> dict:
    """Merge radicands whose product is a perfect square."""
    if len(terms) < 2:
        return terms
    keys = sorted(terms)
    out: dict = {}
    for k in keys:
        re, im = terms[k]
        for base in out:
            r = _is_square(base * k)
            if r is not None:
                # sqrt(k) = (r / base) sqrt(base)
                f = Fraction(r, base)
                a, b = out[base]
                out[base] = (a + re * f, b + im * f)
                break
        else:
            out[k] = (re, im)
    return {k: v for k, v in out.items() if v[0] != 0 or v[1] != 0}


def _times_sqrt(a: Fraction, k: int) -> float:
    """``float(a * sqrt(k))`` without overflow for huge ``k``."""
    if k == 1:
        return float(a)
    mag = math.sqrt(float(a * a * k)) if a * a * k < 2 ** 1000 else math.exp(
        0.5 * (_log_frac(a * a) + _log_int(k)))
    return mag if a > 0 else -mag


def _log_int(k: int) -> float:
    bits = k.bit_length()
    if bits < 1000:
        return math.log(k)
    shift = bits - 60
    return math.log(k >> shift) + shift * math.log(2)


def _log_frac(q: Fraction) -> float:
    return _log_int(q.numerator) - _log_int(q.denominator)


def _sign_real(terms: list[tuple[Fraction, int]]) -> int:
    """Exact sign of ``sum a_i sqrt(k_i)`` with distinct, merged radicands.

    Splits into positive and negative parts and compares them by squaring,
    which reduces the number of distinct radicals at each round.
    """
    pos = [(a, k) for a, k in terms if a > 0]
    neg = [(-a, k) for a, k in terms if a < 0]
    if not neg:
        return 1 if pos else 0
    if not pos:
        return -1
    # quick float decision when well separated
    fp = sum(_times_sqrt(a, k) for a, k in pos)
    fn = sum(_times_sqrt(a, k) for a, k in neg)
    if abs(fp - fn) > 1e-9 * max(fp, fn):
        return 1 if fp > fn else -1
    if len(pos) + len(neg) > 8:
        raise ExactnessError("sign of a long surd sum is not decided exactly")
    P = sum((Surd({k: (a, ZERO)}) for a, k in pos), Surd())
    N = sum((Surd({k: (a, ZERO)}) for a, k in neg), Surd())
    # P, N > 0, so sign(P - N) = sign(P^2 - N^2)
    d = P * P - N * N
    return d.sign()
