"""A minimal sparse multivariate polynomial, enough for chart equations.

Only ring operations, evaluation, partial derivatives and substitution of a
monomial into a univariate polynomial are provided.
"""

from __future__ import annotations

from .rational import QQ


class MPoly:
    __slots__ = ("terms", "n", "K")

    def __init__(self, terms, n, K=QQ):
        self.terms = {e: K(c) for e, c in terms.items() if c}
        self.n = n
        self.K = K

    @classmethod
    def var(cls, i, n, K=QQ):
        e = [0] * n
        e[i] = 1
        return cls({tuple(e): K.one}, n, K)

    @classmethod
    def const(cls, c, n, K=QQ):
        return cls({(0,) * n: c}, n, K)

    def _co(self, other):
        if isinstance(other, MPoly):
            return other
        return MPoly.const(self.K(other), self.n, self.K)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, MPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __neg__(self):
        return MPoly({e: -c for e, c in self.terms.items()}, self.n, self.K)

    def __add__(self, other):
        o = self._co(other)
        t = dict(self.terms)
        for e, c in o.terms.items():
            t[e] = t.get(e, self.K.zero) + c
        return MPoly(t, self.n, self.K)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._co(other))

    def __rsub__(self, other):
        return self._co(other) - self

    def __mul__(self, other):
        o = self._co(other)
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, self.K.zero) + c1 * c2
        return MPoly(t, self.n, self.K)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = MPoly.const(self.K.one, self.n, self.K)
        for _ in range(k):
            out = out * self
        return out

    def diff(self, i):
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                t[tuple(ne)] = c * e[i]
        return MPoly(t, self.n, self.K)

    def __call__(self, *point):
        acc = None
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * x ** k
            acc = v if acc is None else acc + v
        return acc if acc is not None else self.K.zero

    def divide_by_var(self, i):
        """Exact division by the i-th variable."""
        t = {}
        for e, c in self.terms.items():
            if not e[i]:
                raise ArithmeticError("not divisible by the variable")
            ne = list(e)
            ne[i] -= 1
            t[tuple(ne)] = c
        return MPoly(t, self.n, self.K)

    def substitute(self, images):
        """Replace variable i by images[i] (MPolys in a common ring)."""
        out = None
        for e, c in self.terms.items():
            v = images[0]._co(c)
            for img, k in zip(images, e):
                if k:
                    v = v * img ** k
            out = v if out is None else out + v
        return out if out is not None else images[0]._co(0)

    def __repr__(self):
        return f"MPoly({self.terms})"


def univariate_at(p, m):
    """p(m) for a univariate Poly p and an MPoly m (Horner)."""
    acc = MPoly.const(m.K.zero, m.n, m.K)
    for a in reversed(p.c):
        acc = acc * m + a
    return acc
