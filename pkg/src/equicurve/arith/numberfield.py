"""Absolute number fields Q[θ]/(m(θ)) with m monic irreducible."""

from __future__ import annotations

from fractions import Fraction

from .poly import Poly, resultant, xgcd, sqf_list
from .rational import QQ, fmt_rational, pretty_rational, squarefree_integer, rational_sqrt


class NumberField:
    """Q(θ) with θ a root of the monic irreducible ``min_poly``.

    Elements are coefficient tuples in the power basis 1, θ, …, θ^(d-1).
    Irreducibility is checked at construction unless ``check=False``
    (used internally for fields whose minimal polynomial was just produced
    by the factorizer).
    """

    def __init__(self, min_poly, name="θ", check=True):
        if not isinstance(min_poly, Poly):
            min_poly = Poly(min_poly, QQ)
        if min_poly.deg < 1:
            raise ValueError("minimal polynomial must be nonconstant")
        if min_poly.lc != 1:
            raise ValueError(f"minimal polynomial must be monic: {min_poly}")
        if check:
            from .factor import irreducible_over_Q
            if not irreducible_over_Q(min_poly):
                raise ValueError(f"minimal polynomial {min_poly} is reducible over Q")
        self.min_poly = min_poly
        self.name = name
        self.degree = d = min_poly.deg
        self.zero = NFElem._raw(self, (Fraction(0),) * d)
        self.one = NFElem._raw(self, (Fraction(1),) + (Fraction(0),) * (d - 1))
        # x^k mod m for k = d .. 2d-2
        red = []
        cur = [Fraction(0)] * d
        m = min_poly.c
        # x^d = -(m_0 + ... + m_{d-1} x^{d-1})
        cur = [-m[i] for i in range(d)]
        red.append(tuple(cur))
        for _ in range(d - 2):
            top = cur[-1]
            cur = [Fraction(0)] + cur[:-1]
            if top:
                cur = [cur[i] - top * m[i] for i in range(d)]
            red.append(tuple(cur))
        self._red = red
        self._power_sums = None

    @property
    def constant_field(self):
        return self

    @property
    def gen(self):
        if self.degree == 1:
            return self([-self.min_poly[0]])
        c = [Fraction(0)] * self.degree
        c[1] = Fraction(1)
        return NFElem._raw(self, tuple(c))

    def __call__(self, x):
        if isinstance(x, NFElem):
            if x.field == self:
                return x
            if x.is_rational_constant:
                return self(x.c[0])
            raise TypeError(f"{x!r} is not in {self}")
        if isinstance(x, (list, tuple)):
            c = [QQ(a) for a in x]
            if len(c) > self.degree:
                return self.from_poly(Poly(c, QQ))
            return NFElem._raw(self, tuple(c + [Fraction(0)] * (self.degree - len(c))))
        if isinstance(x, Poly):
            return self.from_poly(x)
        q = QQ(x)
        return NFElem._raw(self, (q,) + (Fraction(0),) * (self.degree - 1))

    def from_poly(self, p):
        r = p.change_ring(QQ) % self.min_poly if p.deg >= self.degree else p.change_ring(QQ)
        c = list(r.c) + [Fraction(0)] * (self.degree - len(r.c))
        return NFElem._raw(self, tuple(c))

    def power_sums(self):
        """Tr(θ^k) for k = 0 .. 2d-2."""
        if self._power_sums is None:
            d = self.degree
            m = self.min_poly.c
            # Newton: e-coefficients of monic m: m(x) = x^d + m_{d-1} x^{d-1} + ...
            p = [Fraction(d)]
            for k in range(1, 2 * d - 1):
                s = Fraction(0)
                for i in range(1, min(k, d) + 1):
                    s -= m[d - i] * (p[k - i] if k - i > 0 else 0)
                if k <= d:
                    s -= k * m[d - k]
                p.append(s)
            self._power_sums = tuple(p)
        return self._power_sums

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.min_poly == other.min_poly

    def __hash__(self):
        return hash(("nf", self.min_poly.c))

    def __repr__(self):
        return f"NumberField({self.min_poly.to_str(self.name)})"

    def __str__(self):
        q = self.quadratic_radicand()
        if q is not None:
            return f"Q(√{q})"
        return f"Q[{self.name}]/({self.min_poly.to_str(self.name)})"

    def quadratic_radicand(self):
        """For a quadratic field, the squarefree integer D with K = Q(√D)."""
        if self.degree != 2:
            return None
        p, q = self.min_poly[1], self.min_poly[0]
        return squarefree_integer(p * p / 4 - q)

    def format(self, a):
        return a.to_str()

    def to_json(self, a):
        return [fmt_rational(c) for c in a.c]

    def from_json(self, obj):
        if isinstance(obj, list):
            return self([QQ(c) for c in obj])
        return self(QQ(obj))


class NFElem:
    __slots__ = ("field", "c")

    def __init__(self, field, coeffs):
        e = field(list(coeffs))
        self.field, self.c = e.field, e.c

    @classmethod
    def _raw(cls, field, c):
        e = object.__new__(cls)
        e.field = field
        e.c = c
        return e

    def __bool__(self):
        return any(self.c)

    @property
    def is_rational_constant(self):
        return not any(self.c[1:])

    def rational_value(self):
        if any(self.c[1:]):
            raise ValueError(f"{self} is not rational")
        return self.c[0]

    def as_poly(self):
        return Poly._raw(self.c, QQ)

    def __eq__(self, other):
        if isinstance(other, NFElem):
            return self.field == other.field and self.c == other.c
        try:
            o = self.field(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.c == o.c

    def __hash__(self):
        if not any(self.c[1:]):
            return hash(self.c[0])
        return hash(self.c)

    def _co(self, other):
        if isinstance(other, NFElem) and other.field == self.field:
            return other
        try:
            return self.field(other)
        except (TypeError, ValueError):
            return None

    def __neg__(self):
        return NFElem._raw(self.field, tuple(-a for a in self.c))

    def __add__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return NFElem._raw(self.field, tuple(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return NFElem._raw(self.field, tuple(a - b for a, b in zip(self.c, o.c)))

    def __rsub__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        F = self.field
        d = F.degree
        a, b = self.c, o.c
        if not any(b[1:]):
            s = b[0]
            return NFElem._raw(F, tuple(x * s for x in a))
        if not any(a[1:]):
            s = a[0]
            return NFElem._raw(F, tuple(x * s for x in b))
        prod = [Fraction(0)] * (2 * d - 1)
        for i, u in enumerate(a):
            if u:
                for j, v in enumerate(b):
                    if v:
                        prod[i + j] += u * v
        out = prod[:d]
        for k in range(d, 2 * d - 1):
            t = prod[k]
            if t:
                row = F._red[k - d]
                for i in range(d):
                    out[i] += t * row[i]
        return NFElem._raw(F, tuple(out))

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero in a number field")
        F = self.field
        if not any(self.c[1:]):
            return NFElem._raw(F, (1 / self.c[0],) + self.c[1:])
        g, s, _ = xgcd(self.as_poly(), F.min_poly)
        return F.from_poly(s)

    def __truediv__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = self.field.one, self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def norm(self):
        if not any(self.c[1:]):
            return self.c[0] ** self.field.degree
        return resultant(self.field.min_poly, self.as_poly())

    def trace(self):
        ps = self.field.power_sums()
        return sum((a * ps[i] for i, a in enumerate(self.c)), Fraction(0))

    def charpoly(self):
        """Characteristic polynomial over Q via Newton's identities."""
        d = self.field.degree
        p = []
        pw = self
        for _ in range(d):
            p.append(pw.trace())
            pw = pw * self
        e = [Fraction(1)]
        for k in range(1, d + 1):
            s = Fraction(0)
            for i in range(1, k + 1):
                s += (-1) ** (i - 1) * e[k - i] * p[i - 1]
            e.append(s / k)
        coeffs = [(-1) ** k * e[k] for k in range(d + 1)]
        return Poly(list(reversed(coeffs)), QQ)

    def minpoly(self):
        cp = self.charpoly()
        _, parts = sqf_list(cp)
        out = Poly.const(1, QQ)
        for f, _ in parts:
            out = out * f
        return out.monic()

    def to_str(self, name=None):
        F = self.field
        if not any(self.c[1:]):
            return pretty_rational(self.c[0])
        q = F.quadratic_radicand()
        if q is not None:
            return _quad_pretty(self, q)
        return self.as_poly().to_str(name or F.name)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"NFElem({self.to_str()})"


def _quad_pretty(e, D):
    """Write an element of a quadratic field as a + b√D."""
    F = e.field
    p, q = F.min_poly[1], F.min_poly[0]
    # θ = -p/2 + r √D with r^2 D = p^2/4 - q, r > 0
    r = rational_sqrt((p * p / 4 - q) / D)
    c0, c1 = e.c[0], e.c[1]
    a = c0 - c1 * p / 2
    b = c1 * r
    rad = f"√{D}" if D != -1 else "i"
    if b == 1:
        bs = rad
    elif b == -1:
        bs = "-" + rad
    else:
        bs = f"{pretty_rational(b)}{rad}" if b.denominator == 1 else f"({pretty_rational(b)}){rad}"
    if a == 0:
        return bs
    sep = "" if bs.startswith("-") else "+"
    return f"{pretty_rational(a)}{sep}{bs}"


def quadratic_field(D, name=None):
    """Q(√D) presented by x^2 - D (D a non-square rational)."""
    D = QQ(D)
    return NumberField(Poly([-D, 0, 1], QQ), name or f"√{D}")


def sqrt_element(F, D):
    """An element whose square is D, if the quadratic field is Q(√D) presented with x^2 - D."""
    return F.gen
