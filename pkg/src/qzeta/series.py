"""Truncated formal power series ``C[[t]] / (t^(T+1))``.

The indeterminate ``t`` is central; coefficients may be noncommutative, so a
product keeps the left operand's coefficients on the left.  Every series
carries its truncation order and binary operations refuse mismatched orders.
"""

from __future__ import annotations

from math import factorial
from typing import Callable, Iterable, Sequence

from . import kernels
from .quaternion import (
    ONE,
    RATIONAL_TYPES,
    ZERO,
    GaussianRational,
    Q,
    Quaternion,
    format_rational,
    gaussian_to_json,
    quaternion_from_json,
    quaternion_to_json,
)

RATIONAL = "rational"
GAUSSIAN = "gaussian"
QUATERNION = "quaternion"

_RANK = {RATIONAL: 0, GAUSSIAN: 1, QUATERNION: 2}


class OrderMismatch(ValueError):
    pass


class NotInvertible(ArithmeticError):
    pass


def ring_of(x) -> str:
    if isinstance(x, Quaternion):
        return QUATERNION
    if isinstance(x, GaussianRational):
        return GAUSSIAN
    if isinstance(x, RATIONAL_TYPES):
        return RATIONAL
    raise TypeError(f"unsupported coefficient type {type(x).__name__}")


def ring_zero(ring: str):
    if ring == QUATERNION:
        return Quaternion.zero()
    if ring == GAUSSIAN:
        return GaussianRational.zero()
    return ZERO


def ring_one(ring: str):
    if ring == QUATERNION:
        return Quaternion.one()
    if ring == GAUSSIAN:
        return GaussianRational.one()
    return ONE


def coerce(x, ring: str):
    """Embed ``x`` into ``ring`` (rationals into Q(i) into H)."""
    if ring == QUATERNION:
        if isinstance(x, Quaternion):
            return x
        if isinstance(x, GaussianRational):
            return Quaternion(x.re, x.im)
        return Quaternion(x)
    if ring == GAUSSIAN:
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, Quaternion):
            if x.x2 or x.x3:
                raise ValueError(f"{x!r} is not in Q(i)")
            return GaussianRational(x.x0, x.x1)
        return GaussianRational(x)
    if isinstance(x, Quaternion):
        if x.x1 or x.x2 or x.x3:
            raise ValueError(f"{x!r} is not rational")
        return x.x0
    if isinstance(x, GaussianRational):
        if x.im:
            raise ValueError(f"{x!r} is not rational")
        return x.re
    return Q(x)


def join(*rings: str) -> str:
    return max(rings, key=_RANK.__getitem__)


class TruncatedSeries:
    """Coefficients ``c_0 .. c_T`` of a series modulo ``t^(T+1)``."""

    __slots__ = ("coeffs", "order", "ring")

    def __init__(self, coeffs: Iterable, order: int | None = None, ring: str | None = None):
        cs = list(coeffs)
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        if ring is None:
            ring = join(RATIONAL, *(ring_of(c) for c in cs))
        zero = ring_zero(ring)
        cs = [coerce(c, ring) for c in cs[: order + 1]]
        cs.extend([zero] * (order + 1 - len(cs)))
        self.coeffs = tuple(cs)
        self.order = order
        self.ring = ring

    @classmethod
    def _raw(cls, coeffs, order: int, ring: str) -> TruncatedSeries:
        # trusted constructor: coeffs already coerced and of length order + 1
        s = object.__new__(cls)
        s.coeffs = tuple(coeffs)
        s.order = order
        s.ring = ring
        return s

    @classmethod
    def zero(cls, order: int, ring: str = RATIONAL) -> TruncatedSeries:
        return cls._raw([ring_zero(ring)] * (order + 1), order, ring)

    @classmethod
    def one(cls, order: int, ring: str = RATIONAL) -> TruncatedSeries:
        return cls.constant(ring_one(ring), order, ring)

    @classmethod
    def constant(cls, c, order: int, ring: str | None = None) -> TruncatedSeries:
        return cls.monomial(c, 0, order, ring)

    @classmethod
    def monomial(cls, c, degree: int, order: int, ring: str | None = None) -> TruncatedSeries:
        """``c * t^degree``; vanishes when ``degree > order``."""
        ring = ring or join(RATIONAL, ring_of(c))
        cs = [ring_zero(ring)] * (order + 1)
        if degree <= order:
            cs[degree] = coerce(c, ring)
        return cls._raw(cs, order, ring)

    def __repr__(self) -> str:
        return f"TruncatedSeries({list(self.coeffs)!r}, order={self.order})"

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            text = format_rational(c) if self.ring == RATIONAL else f"({c})"
            terms.append(text if k == 0 else f"{text}*t^{k}")
        return (" + ".join(terms) or "0") + f" + O(t^{self.order + 1})"

    def __len__(self) -> int:
        return self.order + 1

    def __getitem__(self, k: int):
        return self.coeffs[k]

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, TruncatedSeries):
            return self.order == other.order and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.order, self.coeffs))

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def _check(self, other: TruncatedSeries) -> None:
        if self.order != other.order:
            raise OrderMismatch(f"truncation orders differ: {self.order} vs {other.order}")

    def _lift(self, other):
        if isinstance(other, TruncatedSeries):
            self._check(other)
            return other
        return TruncatedSeries.constant(other, self.order)

    def astype(self, ring: str) -> TruncatedSeries:
        if ring == self.ring:
            return self
        return TruncatedSeries._raw([coerce(c, ring) for c in self.coeffs], self.order, ring)

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries._raw([-c for c in self.coeffs], self.order, self.ring)

    def __add__(self, other):
        if not isinstance(other, (TruncatedSeries, *RATIONAL_TYPES, Quaternion, GaussianRational)):
            return NotImplemented
        other = self._lift(other)
        ring = join(self.ring, other.ring)
        a, b = self.astype(ring), other.astype(ring)
        return TruncatedSeries._raw([x + y for x, y in zip(a.coeffs, b.coeffs)], self.order, ring)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, (TruncatedSeries, *RATIONAL_TYPES, Quaternion, GaussianRational)):
            return NotImplemented
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            self._check(other)
            ring = join(self.ring, other.ring)
            a, b = self.astype(ring), other.astype(ring)
            cs = kernels.mul_trunc(a.coeffs, b.coeffs, self.order, ring_zero(ring))
            return TruncatedSeries._raw(cs, self.order, ring)
        if isinstance(other, (*RATIONAL_TYPES, Quaternion, GaussianRational)):
            ring = join(self.ring, ring_of(other))
            c = coerce(other, ring)
            return TruncatedSeries._raw([coerce(x, ring) * c for x in self.coeffs], self.order, ring)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (*RATIONAL_TYPES, Quaternion, GaussianRational)):
            ring = join(self.ring, ring_of(other))
            c = coerce(other, ring)
            return TruncatedSeries._raw([c * coerce(x, ring) for x in self.coeffs], self.order, ring)
        return NotImplemented

    def __pow__(self, exponent: int) -> TruncatedSeries:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = TruncatedSeries.one(self.order, self.ring)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def shift(self, k: int) -> TruncatedSeries:
        """Multiply by ``t^k``."""
        zero = ring_zero(self.ring)
        cs = [zero] * min(k, self.order + 1) + list(self.coeffs[: max(self.order + 1 - k, 0)])
        return TruncatedSeries._raw(cs, self.order, self.ring)

    def truncate(self, order: int) -> TruncatedSeries:
        """Re-express at a lower order (explicit, never implicit)."""
        if order > self.order:
            raise OrderMismatch(f"cannot raise order {self.order} to {order}")
        return TruncatedSeries._raw(self.coeffs[: order + 1], order, self.ring)

    def map(self, fn: Callable) -> TruncatedSeries:
        return TruncatedSeries([fn(c) for c in self.coeffs], self.order)

    def inverse(self) -> TruncatedSeries:
        return series_inverse(self)

    def ldiv(self, other: TruncatedSeries) -> TruncatedSeries:
        """``other^-1 * self``."""
        return series_inverse(self._lift(other)) * self

    def rdiv(self, other: TruncatedSeries) -> TruncatedSeries:
        """``self * other^-1``."""
        return self * series_inverse(self._lift(other))

    def exp(self) -> TruncatedSeries:
        return series_exp(self)

    def log(self) -> TruncatedSeries:
        return series_log(self)

    def conj(self) -> TruncatedSeries:
        return series_conj(self)

    def real_part(self) -> TruncatedSeries:
        """Drop to rational coefficients; raises if any coefficient is not real."""
        return self.astype(RATIONAL)

    def is_real(self) -> bool:
        if self.ring == RATIONAL:
            return True
        if self.ring == GAUSSIAN:
            return not any(c.im for c in self.coeffs)
        return not any(c.x1 or c.x2 or c.x3 for c in self.coeffs)


def series_inverse(a: TruncatedSeries) -> TruncatedSeries:
    c0 = a.coeffs[0]
    if not c0:
        raise NotInvertible("series not invertible")
    inv0 = c0.inverse() if a.ring != RATIONAL else 1 / c0
    cs = kernels.inv_trunc(a.coeffs, a.order, inv0, ring_zero(a.ring))
    return TruncatedSeries._raw(cs, a.order, a.ring)


def series_exp(a: TruncatedSeries) -> TruncatedSeries:
    """``sum_m a^m / m!``; only ``m <= T`` survive the truncation."""
    if a.coeffs[0]:
        raise ValueError("exp requires zero constant term")
    total = TruncatedSeries.one(a.order, a.ring)
    term = total
    for m in range(1, a.order + 1):
        term = (term * a) * Q(1, m)
        if not term:
            break
        total = total + term
    return total


def series_log(a: TruncatedSeries) -> TruncatedSeries:
    """``sum_{n>=1} (-1)^(n-1) (a-1)^n / n``."""
    if a.coeffs[0] != 1:
        raise ValueError("log requires constant term 1")
    b = a - 1
    total = TruncatedSeries.zero(a.order, a.ring)
    power = TruncatedSeries.one(a.order, a.ring)
    for n in range(1, a.order + 1):
        power = power * b
        if not power:
            break
        total = total + power * Q((-1) ** (n - 1), n)
    return total


def series_conj(a: TruncatedSeries) -> TruncatedSeries:
    if a.ring == RATIONAL:
        return a
    return TruncatedSeries._raw([c.conj() for c in a.coeffs], a.order, a.ring)


def exp_by_factorials(a: TruncatedSeries) -> TruncatedSeries:
    """Slow reference: every power computed from scratch and divided by ``m!``."""
    if a.coeffs[0]:
        raise ValueError("exp requires zero constant term")
    total = TruncatedSeries.one(a.order, a.ring)
    for m in range(1, a.order + 1):
        total = total + (a**m) * Q(1, factorial(m))
    return total


def series_to_json(a: TruncatedSeries) -> list:
    if a.ring == QUATERNION:
        return [quaternion_to_json(c) for c in a.coeffs]
    if a.ring == GAUSSIAN:
        return [gaussian_to_json(c) for c in a.coeffs]
    return [format_rational(c) for c in a.coeffs]


def series_from_json(doc: Sequence, ring: str = RATIONAL) -> TruncatedSeries:
    if ring == QUATERNION:
        cs = [quaternion_from_json(c) for c in doc]
    elif ring == GAUSSIAN:
        cs = [GaussianRational(Q(re), Q(im)) for re, im in doc]
    else:
        cs = [Q(c) for c in doc]
    return TruncatedSeries(cs, ring=ring)


def t_series(order: int, ring: str = RATIONAL) -> TruncatedSeries:
    """The indeterminate ``t`` itself."""
    return TruncatedSeries.monomial(ring_one(ring), 1, order, ring)
