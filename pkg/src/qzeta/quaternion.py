"""Exact rational quaternions and Gaussian rationals.

Rationals are ``gmpy2.mpq`` when gmpy2 is importable and ``fractions.Fraction``
otherwise; both keep lowest terms with a positive denominator and compare and
hash identically, so callers may pass either (or plain ints).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Union

try:
    from gmpy2 import mpq as _mpq

    Rational = type(_mpq(0))
except ImportError:  # pragma: no cover - exercised only without gmpy2
    _mpq = Fraction
    Rational = Fraction

RATIONAL_TYPES = (int, Fraction, Rational)
RationalLike = Union[int, Fraction, "Rational"]


def Q(p: RationalLike | str, q: int = 1) -> Rational:
    """Build an exact rational from an int, a Fraction, or a ``"p/q"`` string."""
    if isinstance(p, str):
        text = p.strip()
        try:
            value = _mpq(Fraction(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed rational {p!r}") from exc
        return value / q if q != 1 else value
    if q == 1:
        return _mpq(p)
    return _mpq(p, q) if isinstance(p, int) else _mpq(p) / q


ZERO = Q(0)
ONE = Q(1)


def format_rational(r: RationalLike) -> str:
    """``"p/q"`` or ``"p"`` when the denominator is 1."""
    r = Q(r)
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


class GaussianRational:
    """An element ``re + im*i`` of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0):
        self.re = Q(re)
        self.im = Q(im)

    @classmethod
    def zero(cls) -> GaussianRational:
        return cls(ZERO, ZERO)

    @classmethod
    def one(cls) -> GaussianRational:
        return cls(ONE, ZERO)

    def __repr__(self) -> str:
        return f"GaussianRational({format_rational(self.re)}, {format_rational(self.im)})"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, RATIONAL_TYPES):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __neg__(self) -> GaussianRational:
        return GaussianRational(-self.re, -self.im)

    def __add__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational(self.re + other.re, self.im + other.im)
        if isinstance(other, RATIONAL_TYPES):
            return GaussianRational(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational(self.re - other.re, self.im - other.im)
        if isinstance(other, RATIONAL_TYPES):
            return GaussianRational(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, RATIONAL_TYPES):
            return GaussianRational(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            a, b, c, d = self.re, self.im, other.re, other.im
            return GaussianRational(a * c - b * d, a * d + b * c)
        if isinstance(other, RATIONAL_TYPES):
            return GaussianRational(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def conj(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    def norm2(self) -> Rational:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> GaussianRational:
        n = self.norm2()
        if not n:
            raise ZeroDivisionError("gaussian rational not invertible")
        return GaussianRational(self.re / n, -self.im / n)


class Quaternion:
    """``x0 + x1*i + x2*j + x3*k`` with exact rational components.

    Instances are treated as immutable.
    """

    __slots__ = ("x0", "x1", "x2", "x3")

    def __init__(
        self,
        x0: RationalLike = 0,
        x1: RationalLike = 0,
        x2: RationalLike = 0,
        x3: RationalLike = 0,
    ):
        self.x0 = Q(x0)
        self.x1 = Q(x1)
        self.x2 = Q(x2)
        self.x3 = Q(x3)

    @classmethod
    def zero(cls) -> Quaternion:
        return cls()

    @classmethod
    def one(cls) -> Quaternion:
        return cls(1)

    @property
    def components(self) -> tuple:
        return (self.x0, self.x1, self.x2, self.x3)

    @property
    def real(self) -> Rational:
        return self.x0

    def __repr__(self) -> str:
        parts = ", ".join(format_rational(c) for c in self.components)
        return f"Quaternion({parts})"

    def __str__(self) -> str:
        terms = []
        for c, unit in zip(self.components, ("", "i", "j", "k")):
            if not c:
                continue
            text = format_rational(c)
            if unit and c in (1, -1):
                text = text[:-1]
            elif unit and "/" in text:
                text = f"({text})" if c > 0 else f"-({text[1:]})"
            terms.append(text + unit)
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Quaternion):
            return (
                self.x0 == other.x0
                and self.x1 == other.x1
                and self.x2 == other.x2
                and self.x3 == other.x3
            )
        if isinstance(other, RATIONAL_TYPES):
            return not (self.x1 or self.x2 or self.x3) and self.x0 == other
        return NotImplemented

    def __hash__(self) -> int:
        if not (self.x1 or self.x2 or self.x3):
            return hash(self.x0)
        return hash(self.components)

    def __bool__(self) -> bool:
        return bool(self.x0) or bool(self.x1) or bool(self.x2) or bool(self.x3)

    def __neg__(self) -> Quaternion:
        return Quaternion(-self.x0, -self.x1, -self.x2, -self.x3)

    def __add__(self, other):
        if isinstance(other, Quaternion):
            return Quaternion(
                self.x0 + other.x0,
                self.x1 + other.x1,
                self.x2 + other.x2,
                self.x3 + other.x3,
            )
        if isinstance(other, RATIONAL_TYPES):
            return Quaternion(self.x0 + other, self.x1, self.x2, self.x3)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Quaternion):
            return Quaternion(
                self.x0 - other.x0,
                self.x1 - other.x1,
                self.x2 - other.x2,
                self.x3 - other.x3,
            )
        if isinstance(other, RATIONAL_TYPES):
            return Quaternion(self.x0 - other, self.x1, self.x2, self.x3)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, RATIONAL_TYPES):
            return Quaternion(other - self.x0, -self.x1, -self.x2, -self.x3)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            a0, a1, a2, a3 = self.x0, self.x1, self.x2, self.x3
            b0, b1, b2, b3 = other.x0, other.x1, other.x2, other.x3
            return Quaternion(
                a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
                a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
                a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
                a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
            )
        if isinstance(other, RATIONAL_TYPES):
            return Quaternion(self.x0 * other, self.x1 * other, self.x2 * other, self.x3 * other)
        return NotImplemented

    def __rmul__(self, other):
        # rationals are central
        if isinstance(other, RATIONAL_TYPES):
            return self * other
        return NotImplemented

    def conj(self) -> Quaternion:
        return Quaternion(self.x0, -self.x1, -self.x2, -self.x3)

    def norm2(self) -> Rational:
        """``x * conj(x)`` as a rational; the norm itself is never formed."""
        return self.x0 * self.x0 + self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3

    def inverse(self) -> Quaternion:
        n = self.norm2()
        if not n:
            raise ZeroDivisionError("quaternion not invertible")
        return Quaternion(self.x0 / n, -self.x1 / n, -self.x2 / n, -self.x3 / n)

    def __pow__(self, exponent: int) -> Quaternion:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = Quaternion.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def symplectic(self) -> tuple[GaussianRational, GaussianRational]:
        return symplectic_decompose(self)


I = Quaternion(0, 1, 0, 0)
J = Quaternion(0, 0, 1, 0)
K = Quaternion(0, 0, 0, 1)


def quat_mul(a: Quaternion, b: Quaternion) -> Quaternion:
    return a * b


def quat_conj(x: Quaternion) -> Quaternion:
    return x.conj()


def quat_inverse(x: Quaternion) -> Quaternion:
    return x.inverse()


def symplectic_decompose(x: Quaternion) -> tuple[GaussianRational, GaussianRational]:
    """Split ``x = a + j*b`` with ``a``, ``b`` in Q(i).

    ``j*(b0 + b1 i) = b0 j - b1 k``, so ``b = x2 - x3 i``.
    """
    return GaussianRational(x.x0, x.x1), GaussianRational(x.x2, -x.x3)


def symplectic_recompose(simplex: GaussianRational, perplex: GaussianRational) -> Quaternion:
    return Quaternion(simplex.re, simplex.im, perplex.re, -perplex.im)


def as_quaternion(x) -> Quaternion:
    if isinstance(x, Quaternion):
        return x
    if isinstance(x, GaussianRational):
        return Quaternion(x.re, x.im)
    return Quaternion(x)


def quaternion_to_json(x: Quaternion) -> list[str]:
    return [format_rational(c) for c in x.components]


def quaternion_from_json(doc: Iterable) -> Quaternion:
    parts = list(doc)
    if len(parts) != 4:
        raise ValueError(f"quaternion needs 4 components, got {len(parts)}")
    comps = []
    for p in parts:
        # floats would smuggle in binary rounding
        if isinstance(p, bool) or not isinstance(p, (str, int)):
            raise ValueError(f"quaternion component must be a rational string, got {p!r}")
        comps.append(Q(p))
    return Quaternion(*comps)


def gaussian_to_json(z: GaussianRational) -> list[str]:
    return [format_rational(z.re), format_rational(z.im)]
