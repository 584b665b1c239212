"""Prime fields F_p, used for modular witnesses."""

from __future__ import annotations

from fractions import Fraction

from sympy import isprime, sqrt_mod


class PrimeField:
    def __init__(self, p):
        if not isprime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.zero = PFElem(self, 0)
        self.one = PFElem(self, 1)
        self.degree = 1

    def __call__(self, x):
        if isinstance(x, PFElem):
            if x.field.p != self.p:
                raise TypeError("elements of different prime fields")
            return x
        if isinstance(x, bool):
            raise TypeError("bool is not a field element")
        if isinstance(x, int):
            return PFElem(self, x % self.p)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has a pole at {self.p}")
            return PFElem(self, x.numerator * pow(x.denominator, -1, self.p) % self.p)
        raise TypeError(f"cannot reduce {x!r} mod {self.p}")

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("gf", self.p))

    def __repr__(self):
        return f"GF({self.p})"

    def format(self, a):
        return str(a.v)


class PFElem:
    __slots__ = ("field", "v")

    def __init__(self, field, v):
        self.field, self.v = field, v

    def _co(self, o):
        try:
            return self.field(o)
        except (TypeError, ZeroDivisionError):
            return None

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        o = self._co(other)
        return o is not None and o.v == self.v

    def __hash__(self):
        return hash(self.v)

    def __neg__(self):
        return PFElem(self.field, -self.v % self.field.p)

    def __add__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return PFElem(self.field, (self.v + o.v) % self.field.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return PFElem(self.field, (self.v - o.v) % self.field.p)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return PFElem(self.field, self.v * o.v % self.field.p)

    __rmul__ = __mul__

    def inverse(self):
        if not self.v:
            raise ZeroDivisionError("inverse of zero mod p")
        return PFElem(self.field, pow(self.v, -1, self.field.p))

    def __truediv__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._co(other) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return PFElem(self.field, pow(self.v, n, self.field.p))

    def legendre(self):
        """1 for nonzero squares, -1 for non-residues, 0 for zero (Euler's criterion)."""
        p = self.field.p
        if not self.v:
            return 0
        if p == 2:
            return 1
        return 1 if pow(self.v, (p - 1) // 2, p) == 1 else -1

    def sqrt(self):
        if self.legendre() == -1:
            return None
        return PFElem(self.field, sqrt_mod(self.v, self.field.p) or 0)

    def __repr__(self):
        return f"{self.v} (mod {self.field.p})"
