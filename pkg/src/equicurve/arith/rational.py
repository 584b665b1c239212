"""The rational field Q, with elements represented by :class:`fractions.Fraction`."""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

Rational = Fraction


class RationalField:
    """The field of rational numbers.

    Calling the field coerces ints, Fractions and ``"num/den"`` strings.
    Anything else raises :class:`TypeError`, which element classes turn into
    ``NotImplemented`` so that a larger field gets a chance to coerce.
    """

    zero = Fraction(0)
    one = Fraction(1)
    degree = 1

    def __call__(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int) and not isinstance(x, bool):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x.strip())
        if getattr(x, "is_rational_constant", False):
            return x.rational_value()
        raise TypeError(f"cannot coerce {x!r} into Q")

    def contains(self, x):
        try:
            self(x)
        except (TypeError, ValueError):
            return False
        return True

    @property
    def constant_field(self):
        return self

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"

    def __str__(self):
        return "Q"

    def to_json(self, x):
        return fmt_rational(x)

    def from_json(self, obj):
        return self(obj)

    def format(self, x):
        return pretty_rational(x)


QQ = RationalField()


def fmt_rational(q) -> str:
    """Serialize a rational as ``"num/den"`` (the exchange format)."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def pretty_rational(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def rational_sqrt(q):
    """Exact square root of a rational, or None."""
    q = Fraction(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def squarefree_integer(q) -> int:
    """The squarefree integer in the square class of a nonzero rational."""
    from sympy import factorint

    q = Fraction(q)
    if q == 0:
        raise ValueError("zero has no square class")
    n = q.numerator * q.denominator
    sign = -1 if n < 0 else 1
    out = 1
    for p, e in factorint(abs(n)).items():
        if e % 2:
            out *= p
    return sign * out
