"""Dense univariate polynomials over an exact field.

Coefficients are stored lowest degree first.  The coefficient field is any
object that coerces scalars when called (``QQ``, a number field, a rational
function field, a quadratic extension, a prime field).
"""

from __future__ import annotations

from .rational import QQ

#: Degree reported for the zero polynomial.  It is only ever compared, never
#: added to or multiplied.
ZERO_DEGREE = -1


class Poly:
    __slots__ = ("c", "K")

    def __init__(self, coeffs=(), K=QQ):
        c = [K(a) for a in coeffs]
        while c and not c[-1]:
            c.pop()
        self.c = tuple(c)
        self.K = K

    @classmethod
    def _raw(cls, c, K):
        # trusted constructor: entries already in K
        c = list(c)
        while c and not c[-1]:
            c.pop()
        p = object.__new__(cls)
        p.c = tuple(c)
        p.K = K
        return p

    @classmethod
    def x(cls, K=QQ):
        return cls._raw((K.zero, K.one), K)

    @classmethod
    def const(cls, a, K=QQ):
        return cls._raw((K(a),), K)

    @classmethod
    def monomial(cls, n, a=1, K=QQ):
        return cls._raw([K.zero] * n + [K(a)], K)

    # -- basic structure ---------------------------------------------------
    @property
    def deg(self):
        return len(self.c) - 1 if self.c else ZERO_DEGREE

    @property
    def lc(self):
        return self.c[-1] if self.c else self.K.zero

    def __getitem__(self, i):
        return self.c[i] if 0 <= i < len(self.c) else self.K.zero

    def __len__(self):
        return len(self.c)

    def __bool__(self):
        return bool(self.c)

    def is_constant(self):
        return len(self.c) <= 1

    def is_monic(self):
        return bool(self.c) and self.c[-1] == 1

    def coeffs(self):
        return list(self.c)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.c == other.c
        try:
            o = self.K(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.c == ((o,) if o else ())

    def __hash__(self):
        if len(self.c) <= 1:
            return hash(self.c[0]) if self.c else hash(0)
        return hash(self.c)

    # -- coercion -------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.K == self.K:
                return other
            try:
                return other.change_ring(self.K)
            except TypeError:
                return None
        try:
            return Poly._raw((self.K(other),), self.K)
        except (TypeError, ValueError):
            return None

    def change_ring(self, K):
        return Poly._raw([K(a) for a in self.c], K)

    # -- arithmetic -----------------------------------------------------------
    def __neg__(self):
        return Poly._raw([-a for a in self.c], self.K)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.c, o.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] = out[i] + v
        return Poly._raw(out, self.K)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            try:
                s = self.K(other)
            except (TypeError, ValueError):
                return NotImplemented
            if not s:
                return Poly._raw((), self.K)
            return Poly._raw([a * s for a in self.c], self.K)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.c, o.c
        if not a or not b:
            return Poly._raw((), self.K)
        out = [self.K.zero] * (len(a) + len(b) - 1)
        for i, u in enumerate(a):
            if not u:
                continue
            for j, v in enumerate(b):
                out[i + j] = out[i + j] + u * v
        return Poly._raw(out, self.K)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly._raw((self.K.one,), self.K)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, s):
        return self * s

    def __truediv__(self, other):
        # division by a scalar only; polynomial division is divmod/exquo
        if isinstance(other, Poly):
            if other.deg == 0:
                return self * (self.K.one / other.c[0])
            return NotImplemented
        s = self.K(other)
        return self * (self.K.one / s)

    def __divmod__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.c)
        db = o.deg
        inv = self.K.one / o.c[-1]
        if len(r) - 1 < db:
            return Poly._raw((), self.K), self
        q = [self.K.zero] * (len(r) - db)
        bc = o.c
        for i in range(len(r) - 1, db - 1, -1):
            coef = r[i]
            if not coef:
                continue
            f = coef * inv
            q[i - db] = f
            for j in range(db + 1):
                r[i - db + j] = r[i - db + j] - f * bc[j]
        return Poly._raw(q, self.K), Poly._raw(r[:db], self.K)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exquo(self, other):
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def divides(self, other):
        return not (other % self)

    def monic(self):
        if not self.c:
            return self
        lc = self.c[-1]
        if lc == 1:
            return self
        inv = self.K.one / lc
        return Poly._raw([a * inv for a in self.c], self.K)

    # -- calculus and evaluation ---------------------------------------------
    def deriv(self):
        return Poly._raw([a * i for i, a in enumerate(self.c)][1:], self.K)

    def __call__(self, x):
        """Horner evaluation; ``x`` may live in any ring containing K."""
        if not self.c:
            return self.K.zero if not isinstance(x, Poly) else Poly._raw((), x.K)
        acc = self.c[-1]
        if isinstance(x, Poly):
            acc = Poly._raw((acc,), self.K).change_ring(x.K)
        for a in reversed(self.c[:-1]):
            acc = acc * x + a
        return acc

    def compose(self, q):
        return self(q)

    def shift(self, a):
        """p(x + a)."""
        return self(Poly._raw((self.K(a), self.K.one), self.K))

    def reverse(self, n=None):
        """x^n p(1/x), with n defaulting to deg p."""
        n = self.deg if n is None else n
        c = list(self.c) + [self.K.zero] * (n + 1 - len(self.c))
        return Poly._raw(list(reversed(c[: n + 1])), self.K)

    def mul_xn(self, n):
        return Poly._raw([self.K.zero] * n + list(self.c), self.K) if self.c else self

    def valuation_at_zero(self):
        for i, a in enumerate(self.c):
            if a:
                return i
        raise ValueError("valuation of zero")

    # -- display ------------------------------------------------------------
    def to_str(self, var="x"):
        if not self.c:
            return "0"
        fmt = getattr(self.K, "format", str)
        terms = []
        for i in range(len(self.c) - 1, -1, -1):
            a = self.c[i]
            if not a:
                continue
            s = fmt(a)
            if i == 0:
                mono = ""
            elif i == 1:
                mono = var
            else:
                mono = f"{var}^{i}"
            if mono:
                if s == "1":
                    s = ""
                elif s == "-1":
                    s = "-"
                elif _needs_parens(s):
                    s = f"({s})*"
                else:
                    s = s + "*"
            terms.append(s + mono)
        out = terms[0]
        for t in terms[1:]:
            out += " - " + t[1:] if t.startswith("-") and not t.startswith("-(") else " + " + t
        return out

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Poly({self.to_str()})"

    def to_json(self):
        enc = getattr(self.K, "to_json", str)
        return [enc(a) for a in self.c]

    @classmethod
    def from_json(cls, obj, K=QQ):
        dec = getattr(K, "from_json", K)
        return cls([dec(a) for a in obj], K)


def _needs_parens(s):
    body = s[1:] if s.startswith("-") else s
    return any(ch in body for ch in "+- ")


X = Poly.x(QQ)


def poly(coeffs, K=QQ):
    return Poly(coeffs, K)


# ---------------------------------------------------------------------------
# gcd toolkit
# ---------------------------------------------------------------------------

def gcd(p, q):
    """Monic gcd over the coefficient field."""
    if not p and not q:
        raise ValueError("undefined gcd: both inputs are zero")
    a, b = p, q
    while b:
        a, b = b, (a % b).monic()
    return a.monic()


def xgcd(p, q):
    """(g, s, t) with s p + t q = g, g monic."""
    if not p and not q:
        raise ValueError("undefined gcd: both inputs are zero")
    K = p.K
    one, zero = Poly.const(1, K), Poly._raw((), K)
    r0, r1, s0, s1, t0, t1 = p, q, one, zero, zero, one
    while r1:
        qq, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - qq * s1
        t0, t1 = t1, t0 - qq * t1
    inv = K.one / r0.lc
    return r0 * inv, s0 * inv, t0 * inv


def lcm(p, q):
    return (p * q).exquo(gcd(p, q)).monic()


def sqf_list(p):
    """Yun's squarefree decomposition: (lc, [(s_i, i), ...]) with monic s_i.

    p = lc * prod s_i**i, the s_i squarefree and pairwise coprime.
    """
    if not p:
        raise ValueError("squarefree decomposition of zero")
    lc = p.lc
    f = p.monic()
    out = []
    if f.deg <= 0:
        return lc, out
    fp = f.deriv()
    a = gcd(f, fp)
    b = f.exquo(a)
    c = fp.exquo(a)
    d = c - b.deriv()
    i = 1
    while b.deg > 0:
        a = gcd(b, d)
        b = b.exquo(a)
        c = d.exquo(a)
        d = c - b.deriv()
        if a.deg > 0:
            out.append((a.monic(), i))
        i += 1
    return lc, out


def squarefree_part(p):
    """Monic squarefree polynomial with the same roots as p."""
    if not p:
        raise ValueError("squarefree part of zero")
    if p.deg <= 0:
        return Poly.const(1, p.K)
    return p.monic().exquo(gcd(p, p.deriv())).monic()


def poly_gcd_squarefree(p, q):
    """(gcd(p, q), squarefree part of p), both monic."""
    g = gcd(p, q)
    return g, squarefree_part(p) if p else Poly._raw((), p.K)


def is_squarefree(p):
    return p.deg <= 0 or gcd(p, p.deriv()).deg == 0


def odd_part(p):
    """(c, s): p = c * s * square, s monic squarefree (odd-multiplicity factors)."""
    lc, parts = sqf_list(p)
    s = Poly.const(1, p.K)
    for f, e in parts:
        if e % 2:
            s = s * f
    return lc, s


def resultant(p, q):
    """Resultant with the Sylvester-determinant sign convention."""
    K = p.K
    if not p and not q:
        raise ValueError("resultant of two zero polynomials")
    if not p or not q:
        return K.zero
    a, b = p, q
    res = K.one
    while True:
        da, db = a.deg, b.deg
        if db == 0:
            return res * b.lc ** da
        r = a % b
        if not r:
            return K.zero
        if (da * db) % 2:
            res = -res
        res = res * b.lc ** (da - r.deg)
        a, b = b, r


def discriminant(p):
    n = p.deg
    r = resultant(p, p.deriv())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return r * sign / p.lc


def crt_poly(congruences):
    """Solve f = r_i mod m_i for pairwise coprime moduli; deg f < sum deg m_i."""
    congruences = list(congruences)
    if not congruences:
        raise ValueError("empty congruence list")
    for i in range(len(congruences)):
        for j in range(i + 1, len(congruences)):
            mi, mj = congruences[i][1], congruences[j][1]
            if gcd(mi, mj).deg > 0:
                raise ValueError(f"moduli not coprime: {mi} and {mj}")
    r0, m0 = congruences[0]
    K = m0.K
    f = r0 % m0
    M = m0
    for r, m in congruences[1:]:
        # f + M*k = r mod m
        g, s, _ = xgcd(M, m)
        k = ((r - f) * s) % m
        f = f + M * k
        M = M * m
    return f % M


def interpolate(points, K=QQ):
    """Newton interpolation through (x_i, y_i)."""
    xs = [K(x) for x, _ in points]
    coef = [K(y) for _, y in points]
    n = len(xs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    out = Poly.const(coef[-1], K)
    for i in range(n - 2, -1, -1):
        out = out * Poly._raw((-xs[i], K.one), K) + coef[i]
    return out
