"""Quadratic extensions F(√D) of any supported field F."""

from __future__ import annotations


class QuadExt:
    """F(√D) with elements u + v√D.

    ``check=True`` certifies that D is a non-square in F.  With
    ``check=False`` the same arithmetic gives the ring F[s]/(s² − D), which
    is what purely symbolic expansions in √D need.
    """

    def __init__(self, base, D, name=None, check=True):
        D = base(D)
        if not D:
            raise ValueError("D must be nonzero")
        if check:
            from .squares import is_square_in_field, NonSquare
            verdict = is_square_in_field(D)
            if not isinstance(verdict, NonSquare):
                raise ValueError(f"D = {D} is not a certified non-square in {base}")
            self.D_certificate = verdict
        self.base = base
        self.D = D
        self.name = name or f"√({_fmt(base, D)})"
        self.zero = QuadElem._raw(self, base.zero, base.zero)
        self.one = QuadElem._raw(self, base.one, base.zero)
        self.is_field = check
        bd = getattr(base, "degree", None)
        self.degree = 2 * bd if bd else None

    @property
    def constant_field(self):
        return getattr(self.base, "constant_field", self.base)

    @property
    def gen(self):
        return QuadElem._raw(self, self.base.zero, self.base.one)

    def __call__(self, x):
        if isinstance(x, QuadElem):
            if x.field == self:
                return x
            if not x.v:
                return self(x.u)
            raise TypeError(f"{x!r} is not in {self}")
        return QuadElem._raw(self, self.base(x), self.base.zero)

    def elem(self, u, v):
        return QuadElem._raw(self, self.base(u), self.base(v))

    def __eq__(self, other):
        return isinstance(other, QuadExt) and self.base == other.base and self.D == other.D

    def __hash__(self):
        return hash(("quad", self.base, self.D))

    def __repr__(self):
        return f"QuadExt({self.base!r}, {self.D})"

    def __str__(self):
        return f"{self.base}({self.name})"

    def format(self, a):
        return a.to_str()

    def to_json(self, a):
        enc = getattr(self.base, "to_json", str)
        return {"u": enc(a.u), "v": enc(a.v)}

    def from_json(self, obj):
        dec = getattr(self.base, "from_json", self.base)
        if isinstance(obj, dict):
            return self.elem(dec(obj.get("u", "0/1")), dec(obj.get("v", "0/1")))
        return self(dec(obj))


def _fmt(base, a):
    f = getattr(base, "format", str)
    return f(a)


class QuadElem:
    __slots__ = ("field", "u", "v")

    @classmethod
    def _raw(cls, field, u, v):
        e = object.__new__(cls)
        e.field, e.u, e.v = field, u, v
        return e

    def __bool__(self):
        return bool(self.u) or bool(self.v)

    @property
    def is_rational_constant(self):
        return not self.v and getattr(self.u, "is_rational_constant", True) and _is_q(self.u)

    def rational_value(self):
        from .rational import QQ
        return QQ(self.u)

    def __eq__(self, other):
        if not isinstance(other, QuadElem):
            try:
                other = self.field(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.field == other.field and self.u == other.u and self.v == other.v

    def __hash__(self):
        if not self.v:
            return hash(self.u)
        return hash((self.u, self.v))

    def _co(self, other):
        if isinstance(other, QuadElem) and other.field == self.field:
            return other
        try:
            return self.field(other)
        except (TypeError, ValueError):
            return None

    def __neg__(self):
        return QuadElem._raw(self.field, -self.u, -self.v)

    def __add__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return QuadElem._raw(self.field, self.u + o.u, self.v + o.v)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return QuadElem._raw(self.field, self.u - o.u, self.v - o.v)

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
        if not o.v:
            return QuadElem._raw(F, self.u * o.u, self.v * o.u)
        if not self.v:
            return QuadElem._raw(F, self.u * o.u, self.u * o.v)
        return QuadElem._raw(F, self.u * o.u + F.D * self.v * o.v, self.u * o.v + self.v * o.u)

    __rmul__ = __mul__

    def conj(self):
        return QuadElem._raw(self.field, self.u, -self.v)

    def norm(self):
        return self.u * self.u - self.field.D * self.v * self.v

    def trace(self):
        return self.u + self.u

    def inverse(self):
        n = self.norm()
        if not n:
            raise ZeroDivisionError(f"{self} is not invertible")
        inv = self.field.base.one / n
        return QuadElem._raw(self.field, self.u * inv, -self.v * inv)

    def __truediv__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        if not o.v:
            inv = self.field.base.one / o.u
            return QuadElem._raw(self.field, self.u * inv, self.v * inv)
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

    def to_str(self):
        f = getattr(self.field.base, "format", str)
        if not self.v:
            return f(self.u)
        vs = f(self.v)
        rad = self.field.name
        if vs == "1":
            vpart = rad
        elif vs == "-1":
            vpart = "-" + rad
        else:
            vpart = f"({vs})*{rad}"
        if not self.u:
            return vpart
        sep = " - " if vpart.startswith("-") else " + "
        return f"{f(self.u)}{sep}{vpart.lstrip('-') if sep == ' - ' else vpart}"

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"QuadElem({self.to_str()})"


def _is_q(x):
    from fractions import Fraction
    if isinstance(x, (int, Fraction)):
        return True
    return bool(getattr(x, "is_rational_constant", False))
