"""Rational function fields K(t) with reduced, monic-denominator elements."""

from __future__ import annotations

from .poly import Poly, gcd
from .rational import QQ


class RationalFunctionField:
    def __init__(self, K=QQ, var="t"):
        self.constant_field = K
        self.var = var
        self.zero = RatFunc._raw(Poly._raw((), K), Poly.const(1, K), self)
        self.one = RatFunc._raw(Poly.const(1, K), Poly.const(1, K), self)
        self.degree = None  # transcendental

    @property
    def gen(self):
        K = self.constant_field
        return RatFunc._raw(Poly.x(K), Poly.const(1, K), self)

    def __call__(self, x):
        if isinstance(x, RatFunc):
            if x.field == self:
                return x
            # a rational function over a subfield of ours
            if x.field.var == self.var:
                return RatFunc(x.num.change_ring(self.constant_field),
                               x.den.change_ring(self.constant_field), self)
            return RatFunc(Poly.const(self.constant_field(x), self.constant_field),
                           Poly.const(1, self.constant_field), self)
        if isinstance(x, Poly):
            return RatFunc(x.change_ring(self.constant_field), Poly.const(1, self.constant_field), self)
        c = self.constant_field(x)
        return RatFunc._raw(Poly._raw((c,), self.constant_field), self.one.den, self)

    def frac(self, num, den):
        K = self.constant_field
        if not isinstance(num, Poly):
            num = Poly.const(num, K)
        if not isinstance(den, Poly):
            den = Poly.const(den, K)
        return RatFunc(num.change_ring(K), den.change_ring(K), self)

    def __eq__(self, other):
        return (isinstance(other, RationalFunctionField) and self.var == other.var
                and self.constant_field == other.constant_field)

    def __hash__(self):
        return hash(("ratfunc", self.var, self.constant_field))

    def __repr__(self):
        return f"{self.constant_field!r}({self.var})"

    def __str__(self):
        return f"{self.constant_field}({self.var})"

    def format(self, a):
        return a.to_str()

    def to_json(self, a):
        return {"num": a.num.to_json(), "den": a.den.to_json()}

    def from_json(self, obj):
        K = self.constant_field
        if isinstance(obj, dict):
            return self.frac(Poly.from_json(obj["num"], K), Poly.from_json(obj.get("den", ["1/1"]), K))
        if isinstance(obj, list):
            return self(Poly.from_json(obj, K))
        return self(K.from_json(obj) if hasattr(K, "from_json") else K(obj))


class RatFunc:
    __slots__ = ("num", "den", "field")

    def __init__(self, num, den, field):
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            num, den = Poly._raw((), num.K), Poly.const(1, num.K)
        elif den.deg > 0:
            g = gcd(num, den)
            if g.deg > 0:
                num, den = num.exquo(g), den.exquo(g)
        lc = den.lc
        if lc != 1:
            inv = num.K.one / lc
            num, den = num * inv, den * inv
        self.num, self.den, self.field = num, den, field

    @classmethod
    def _raw(cls, num, den, field):
        r = object.__new__(cls)
        r.num, r.den, r.field = num, den, field
        return r

    # -- predicates --------------------------------------------------------
    def __bool__(self):
        return bool(self.num)

    def is_constant(self):
        return self.num.deg <= 0 and self.den.deg == 0

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num[0]

    @property
    def is_rational_constant(self):
        return self.is_constant() and QQ.contains(self.num[0])

    def rational_value(self):
        return QQ(self.num[0])

    def is_polynomial(self):
        return self.den.deg == 0

    @property
    def degree(self):
        """Degree as a map P^1 -> P^1."""
        return max(self.num.deg, self.den.deg)

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            try:
                other = self.field(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self.is_constant():
            return hash(self.num[0])
        return hash((self.num, self.den))

    # -- arithmetic -----------------------------------------------------------
    def _co(self, other):
        if isinstance(other, RatFunc) and other.field == self.field:
            return other
        try:
            return self.field(other)
        except (TypeError, ValueError):
            return None

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den, self.field)

    def __add__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den, self.field)
        g = gcd(self.den, o.den)
        if g.deg == 0:
            return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den, self.field)
        d1, d2 = self.den.exquo(g), o.den.exquo(g)
        return RatFunc(self.num * d2 + o.num * d1, self.den * d2, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        if o.is_constant() and o.den.deg == 0:
            c = o.num[0] if o.num else None
            if c is None:
                return self.field.zero
            return RatFunc._raw(self.num * c, self.den, self.field)
        g1 = gcd(self.num, o.den) if self.num and o.den.deg > 0 else None
        g2 = gcd(o.num, self.den) if o.num and self.den.deg > 0 else None
        n1, d2 = (self.num.exquo(g1), o.den.exquo(g1)) if g1 is not None and g1.deg > 0 else (self.num, o.den)
        n2, d1 = (o.num.exquo(g2), self.den.exquo(g2)) if g2 is not None and g2.deg > 0 else (o.num, self.den)
        num, den = n1 * n2, d1 * d2
        if not num:
            return self.field.zero
        lc = den.lc
        if lc != 1:
            inv = num.K.one / lc
            num, den = num * inv, den * inv
        return RatFunc._raw(num, den, self.field)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num, self.field)

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
        return RatFunc._raw(self.num ** n, self.den ** n, self.field)

    # -- evaluation / substitution -----------------------------------------
    def __call__(self, x):
        """Evaluate at x (an element of any ring over the constant field, or a RatFunc)."""
        if isinstance(x, RatFunc):
            return self.compose(x)
        return self.num(x) / self.den(x)

    def compose(self, s):
        """self(s) for a rational function s (possibly over another variable)."""
        d = max(self.num.deg, self.den.deg, 0)
        sn, sd = s.num, s.den
        field = s.field

        def hom(p):
            K = sn.K
            acc = Poly._raw((), K)
            pw_n = [Poly.const(1, K)]
            for _ in range(d):
                pw_n.append(pw_n[-1] * sn)
            pw_d = [Poly.const(1, K)]
            for _ in range(d):
                pw_d.append(pw_d[-1] * sd)
            for i, a in enumerate(p.c):
                if a:
                    acc = acc + pw_n[i] * pw_d[d - i] * K(a)
            return acc

        return RatFunc(hom(self.num), hom(self.den), field)

    def deriv(self):
        return RatFunc(self.num.deriv() * self.den - self.num * self.den.deriv(), self.den * self.den, self.field)

    def to_str(self, var=None):
        var = var or self.field.var
        n = self.num.to_str(var)
        if self.den.deg == 0:
            return n
        d = self.den.to_str(var)
        if len(self.num.c) > 1 and sum(1 for a in self.num.c if a) > 1:
            n = f"({n})"
        if sum(1 for a in self.den.c if a) > 1 or self.den.lc != 1:
            d = f"({d})"
        return f"{n}/{d}"

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"RatFunc({self.to_str()})"
